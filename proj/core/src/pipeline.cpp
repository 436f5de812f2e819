#include "vsign/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "vsign/moments.hpp"

namespace vsign {

HandAnalysis analyze_hand(const RgbImage& img, const SegmentationMethod& seg) {
  HandAnalysis a;
  a.hand = segment(img, seg);
  a.keypoints = find_keypoints(a.hand);
  return a;
}

FeatureVector features_from_analysis(const HandAnalysis& analysis, FeatureMethod method) {
  switch (method) {
    case FeatureMethod::M1:
      return geometric_features(analysis.keypoints).to_vector();
    case FeatureMethod::M2:
      return finger_signature(cut_fingers(analysis.hand, analysis.keypoints));
    case FeatureMethod::M3:
      return concat_features(features_from_analysis(analysis, FeatureMethod::M1),
                             features_from_analysis(analysis, FeatureMethod::M2));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown feature method");
}

FeatureVector extract_features(const RgbImage& img, FeatureMethod method, const SegmentationMethod& seg) {
  return features_from_analysis(analyze_hand(img, seg), method);
}

BatchResult extract_batch(std::size_t count, const ImageLoader& load, FeatureMethod method,
                          const SegmentationMethod& seg, unsigned threads) {
  BatchResult result;
  result.features.resize(count);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));

  std::atomic<std::size_t> next{0};
  std::mutex failures_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        result.features[i] = extract_features(load(i), method, seg);
      } catch (const Error& e) {
        std::lock_guard lock(failures_mutex);
        result.failures.push_back({i, e.code(), e.what()});
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  std::sort(result.failures.begin(), result.failures.end(),
            [](const ExtractionFailure& a, const ExtractionFailure& b) { return a.index < b.index; });
  return result;
}

BatchResult extract_batch(std::span<const RgbImage> images, FeatureMethod method, const SegmentationMethod& seg,
                          unsigned threads) {
  return extract_batch(
      images.size(), [&](std::size_t i) { return images[i]; }, method, seg, threads);
}

}  // namespace vsign
