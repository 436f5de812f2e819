#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vsign/metrics.hpp"

namespace vsign {

/// M1: seven keypoint distances/areas. M2: Hu moments and eccentricity of
/// both fingers. M3: M1 followed by M2.
enum class FeatureMethod { M1, M2, M3 };

std::size_t dimension_of(FeatureMethod method) noexcept;
std::string_view to_string(FeatureMethod method) noexcept;
/// Accepts "M1"/"m1"/"1" and likewise for M2, M3.
FeatureMethod parse_feature_method(std::string_view text);

class FeatureVector {
 public:
  /// Throws DimensionMismatch if values.size() != dimension_of(method) and
  /// InvalidArgument on non-finite entries.
  FeatureVector(FeatureMethod method, std::vector<double> values);

  FeatureMethod method() const noexcept { return method_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  /// Leading M1 block or trailing M2 block of an M3 vector.
  FeatureVector slice(FeatureMethod part) const;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  FeatureMethod method_;
  std::vector<double> values_;
};

struct LabeledVector {
  LabeledVector(FeatureVector v, std::string l);

  FeatureVector vector;
  std::string label;

  friend bool operator==(const LabeledVector&, const LabeledVector&) = default;
};

struct NormalizationStats {
  std::vector<double> min;
  std::vector<double> max;

  std::size_t size() const noexcept { return min.size(); }
  friend bool operator==(const NormalizationStats&, const NormalizationStats&) = default;
};

/// Per-dimension min/max over the training vectors.
NormalizationStats fit_normalizer(std::span<const LabeledVector> train);

/// Min-max scaling; constant dimensions map to 0 and the result is clamped
/// to [-0.5, 1.5] so out-of-range queries stay bounded.
std::vector<double> normalize(std::span<const double> v, const NormalizationStats& stats);

/// Method-3 fusion. Throws MethodMismatch unless g is M1 and s is M2.
FeatureVector concat_features(const FeatureVector& g, const FeatureVector& s);

struct ClassifierConfig {
  int k = 1;
  Metric metric = Metric::Hassanat;
  bool normalize = true;
};

struct Neighbor {
  std::size_t index = 0;  // position in the training set
  std::string label;
  double distance = 0.0;
};

struct Prediction {
  std::string label;
  std::vector<Neighbor> neighbors;  // nondecreasing distance
};

/// k-nearest-neighbour identifier over an immutable template set.
///
/// Distance ties are resolved by training order. The majority label wins;
/// a tied vote goes to the label with the smallest summed neighbour
/// distance, then to whichever tied label appears first in the neighbour list.
class KnnClassifier {
 public:
  KnnClassifier(std::vector<LabeledVector> train, ClassifierConfig config);
  /// Uses precomputed statistics instead of fitting them on `train`.
  KnnClassifier(std::vector<LabeledVector> train, ClassifierConfig config,
                NormalizationStats stats);

  Prediction classify(const FeatureVector& query) const;
  Prediction classify(std::span<const double> query) const;

  /// Every training vector ordered by distance, ties by training order.
  std::vector<Neighbor> rank(std::span<const double> query) const;

  const ClassifierConfig& config() const noexcept { return config_; }
  const NormalizationStats& stats() const noexcept { return stats_; }
  std::size_t size() const noexcept { return train_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }

 private:
  void prepare();
  std::vector<double> prepare_query(std::span<const double> query) const;

  std::vector<LabeledVector> train_;
  ClassifierConfig config_;
  NormalizationStats stats_;
  std::size_t dimension_ = 0;
  std::vector<std::vector<double>> prepared_;
};

Prediction knn_classify(std::span<const LabeledVector> train, const FeatureVector& query,
                        const ClassifierConfig& config);

}  // namespace vsign
