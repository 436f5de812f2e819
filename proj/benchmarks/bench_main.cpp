#include <benchmark/benchmark.h>

#include <random>

#include "vsign/classify.hpp"
#include "vsign/geometry.hpp"
#include "vsign/moments.hpp"
#include "vsign/pipeline.hpp"
#include "vsign/segmentation.hpp"
#include "vsign/synth.hpp"

using namespace vsign;

namespace {

const RgbImage& sample_image() {
  static const RgbImage img = [] {
    SyntheticConfig cfg;
    cfg.subjects = 1;
    cfg.images_per_session = 1;
    cfg.sessions = 1;
    return generate_synthetic_dataset(cfg).front().image;
  }();
  return img;
}

const HandAnalysis& sample_analysis() {
  static const HandAnalysis a = analyze_hand(sample_image(), segmentation::Otsu{});
  return a;
}

}  // namespace

static void BM_Render(benchmark::State& state) {
  const SyntheticSubjectParams p = draw_subject_params(1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(render_victory_sign(p));
}
BENCHMARK(BM_Render)->Unit(benchmark::kMillisecond);

static void BM_Otsu(benchmark::State& state) {
  const GrayImage g = to_grayscale(sample_image());
  for (auto _ : state) benchmark::DoNotOptimize(otsu_threshold(g));
}
BENCHMARK(BM_Otsu)->Unit(benchmark::kMicrosecond);

static void BM_KMeans(benchmark::State& state) {
  const auto metric = static_cast<Metric>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kmeans_segment(sample_image(), metric));
  state.SetLabel(std::string(to_string(metric)));
}
BENCHMARK(BM_KMeans)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_Segment(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(segment(sample_image(), segmentation::Otsu{}));
}
BENCHMARK(BM_Segment)->Unit(benchmark::kMillisecond);

static void BM_Keypoints(benchmark::State& state) {
  const BinaryImage& hand = sample_analysis().hand;
  for (auto _ : state) benchmark::DoNotOptimize(find_keypoints(hand));
}
BENCHMARK(BM_Keypoints)->Unit(benchmark::kMicrosecond);

static void BM_FingerSignature(benchmark::State& state) {
  const HandAnalysis& a = sample_analysis();
  const FingerMasks f = cut_fingers(a.hand, a.keypoints);
  for (auto _ : state) benchmark::DoNotOptimize(finger_signature(f));
}
BENCHMARK(BM_FingerSignature)->Unit(benchmark::kMicrosecond);

static void BM_ExtractM3(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(extract_features(sample_image(), FeatureMethod::M3, segmentation::Otsu{}));
}
BENCHMARK(BM_ExtractM3)->Unit(benchmark::kMillisecond);

static void BM_Distance(benchmark::State& state) {
  const auto metric = static_cast<Metric>(state.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0, 1);
  std::vector<double> a(23), b(23);
  for (auto& x : a) x = n(rng);
  for (auto& x : b) x = n(rng);
  for (auto _ : state) benchmark::DoNotOptimize(distance(a, b, metric));
  state.SetLabel(std::string(to_string(metric)));
}
BENCHMARK(BM_Distance)->DenseRange(0, 2);

// One query against a template store of state.range(0) vectors.
static void BM_KnnQuery(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0, 1);
  std::vector<LabeledVector> train;
  for (int i = 0; i < state.range(0); ++i) {
    std::vector<double> v(23);
    for (auto& x : v) x = n(rng);
    train.emplace_back(FeatureVector(FeatureMethod::M3, std::move(v)), "P" + std::to_string(i % 50));
  }
  const KnnClassifier knn(std::move(train), {5, Metric::Hassanat, true});
  std::vector<double> q(23);
  for (auto& x : q) x = n(rng);
  for (auto _ : state) benchmark::DoNotOptimize(knn.classify(q));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KnnQuery)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK_MAIN();
