#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vsign/classify.hpp"
#include "vsign/error.hpp"
#include "vsign/geometry.hpp"
#include "vsign/image.hpp"
#include "vsign/segmentation.hpp"

namespace vsign {

struct HandAnalysis {
  BinaryImage hand;
  KeyPoints keypoints;
};

/// segment -> keypoints. Errors from either stage propagate.
HandAnalysis analyze_hand(const RgbImage& img, const SegmentationMethod& seg);

/// M1 from the keypoints, M2 from the cut fingers, M3 both.
FeatureVector features_from_analysis(const HandAnalysis& analysis, FeatureMethod method);

/// Full acquisition-to-signature pipeline for one image.
FeatureVector extract_features(const RgbImage& img, FeatureMethod method, const SegmentationMethod& seg);

struct ExtractionFailure {
  std::size_t index = 0;
  ErrorCode code = ErrorCode::InvalidArgument;
  std::string message;
};

struct BatchResult {
  std::vector<std::optional<FeatureVector>> features;  // one slot per input
  std::vector<ExtractionFailure> failures;             // ordered by index
};

using ImageLoader = std::function<RgbImage(std::size_t)>;

/// Extracts features for `count` images fetched through `load`, fanning out
/// over `threads` workers (0 picks the hardware concurrency). A failing image
/// leaves an empty slot and a failure record instead of aborting the batch.
BatchResult extract_batch(std::size_t count, const ImageLoader& load, FeatureMethod method,
                          const SegmentationMethod& seg, unsigned threads = 0);

BatchResult extract_batch(std::span<const RgbImage> images, FeatureMethod method, const SegmentationMethod& seg,
                          unsigned threads = 0);

}  // namespace vsign
