#include "vsign/classify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>

#include "vsign/error.hpp"

namespace vsign {

std::size_t dimension_of(FeatureMethod method) noexcept {
  switch (method) {
    case FeatureMethod::M1: return 7;
    case FeatureMethod::M2: return 16;
    case FeatureMethod::M3: return 23;
  }
  return 0;
}

std::string_view to_string(FeatureMethod method) noexcept {
  switch (method) {
    case FeatureMethod::M1: return "M1";
    case FeatureMethod::M2: return "M2";
    case FeatureMethod::M3: return "M3";
  }
  return "?";
}

FeatureMethod parse_feature_method(std::string_view text) {
  std::string_view t = text;
  if (!t.empty() && (t.front() == 'M' || t.front() == 'm')) t.remove_prefix(1);
  if (t == "1") return FeatureMethod::M1;
  if (t == "2") return FeatureMethod::M2;
  if (t == "3") return FeatureMethod::M3;
  throw Error(ErrorCode::InvalidArgument, "unknown feature method '" + std::string(text) + "'");
}

FeatureVector::FeatureVector(FeatureMethod method, std::vector<double> values)
    : method_(method), values_(std::move(values)) {
  if (values_.size() != dimension_of(method_)) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(to_string(method_)) + " vectors have " +
                    std::to_string(dimension_of(method_)) + " entries, got " +
                    std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "feature values must be finite");
  }
}

FeatureVector FeatureVector::slice(FeatureMethod part) const {
  if (method_ == part) return *this;
  if (method_ != FeatureMethod::M3 || part == FeatureMethod::M3) {
    throw Error(ErrorCode::MethodMismatch, "only M3 vectors can be sliced");
  }
  const auto m1 = static_cast<std::ptrdiff_t>(dimension_of(FeatureMethod::M1));
  if (part == FeatureMethod::M1) {
    return FeatureVector(part, {values_.begin(), values_.begin() + m1});
  }
  return FeatureVector(part, {values_.begin() + m1, values_.end()});
}

LabeledVector::LabeledVector(FeatureVector v, std::string l)
    : vector(std::move(v)), label(std::move(l)) {
  if (label.empty()) throw Error(ErrorCode::InvalidArgument, "labels must be non-empty");
}

NormalizationStats fit_normalizer(std::span<const LabeledVector> train) {
  if (train.empty()) throw Error(ErrorCode::EmptyTrainingSet, "cannot fit normalizer on no vectors");
  const auto first = train.front().vector.values();
  NormalizationStats stats{{first.begin(), first.end()}, {first.begin(), first.end()}};
  for (const LabeledVector& lv : train) {
    const auto v = lv.vector.values();
    if (v.size() != stats.size()) {
      throw Error(ErrorCode::DimensionMismatch, "training vectors differ in dimension");
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      stats.min[i] = std::min(stats.min[i], v[i]);
      stats.max[i] = std::max(stats.max[i], v[i]);
    }
  }
  return stats;
}

std::vector<double> normalize(std::span<const double> v, const NormalizationStats& stats) {
  if (v.size() != stats.size()) {
    throw Error(ErrorCode::DimensionMismatch, "vector and normalization stats differ in dimension");
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double span = stats.max[i] - stats.min[i];
    out[i] = span > 0.0 ? std::clamp((v[i] - stats.min[i]) / span, -0.5, 1.5) : 0.0;
  }
  return out;
}

FeatureVector concat_features(const FeatureVector& g, const FeatureVector& s) {
  if (g.method() != FeatureMethod::M1 || s.method() != FeatureMethod::M2) {
    throw Error(ErrorCode::MethodMismatch, "fusion needs an M1 vector followed by an M2 vector, got " +
                                               std::string(to_string(g.method())) + " and " +
                                               std::string(to_string(s.method())));
  }
  std::vector<double> fused(g.values().begin(), g.values().end());
  fused.insert(fused.end(), s.values().begin(), s.values().end());
  return FeatureVector(FeatureMethod::M3, std::move(fused));
}

KnnClassifier::KnnClassifier(std::vector<LabeledVector> train, ClassifierConfig config)
    : train_(std::move(train)), config_(config) {
  if (train_.empty()) throw Error(ErrorCode::EmptyTrainingSet, "KNN needs at least one template");
  if (config_.normalize) stats_ = fit_normalizer(train_);
  prepare();
}

KnnClassifier::KnnClassifier(std::vector<LabeledVector> train, ClassifierConfig config,
                             NormalizationStats stats)
    : train_(std::move(train)), config_(config), stats_(std::move(stats)) {
  if (train_.empty()) throw Error(ErrorCode::EmptyTrainingSet, "KNN needs at least one template");
  prepare();
}

void KnnClassifier::prepare() {
  if (config_.k < 1 || config_.k % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument, "k must be a positive odd number");
  }
  if (static_cast<std::size_t>(config_.k) > train_.size()) {
    throw Error(ErrorCode::InvalidArgument, "k = " + std::to_string(config_.k) +
                                                " exceeds the training set size " +
                                                std::to_string(train_.size()));
  }
  dimension_ = train_.front().vector.size();
  if (config_.normalize && stats_.size() != dimension_) {
    throw Error(ErrorCode::DimensionMismatch, "normalization stats do not match the templates");
  }
  prepared_.reserve(train_.size());
  for (const LabeledVector& lv : train_) {
    if (lv.vector.size() != dimension_) {
      throw Error(ErrorCode::DimensionMismatch, "training vectors differ in dimension");
    }
    const auto v = lv.vector.values();
    prepared_.push_back(config_.normalize ? normalize(v, stats_) : std::vector<double>(v.begin(), v.end()));
  }
}

std::vector<double> KnnClassifier::prepare_query(std::span<const double> query) const {
  if (query.size() != dimension_) {
    throw Error(ErrorCode::DimensionMismatch, "query dimension " + std::to_string(query.size()) +
                                                  " does not match templates of dimension " +
                                                  std::to_string(dimension_));
  }
  return config_.normalize ? normalize(query, stats_) : std::vector<double>(query.begin(), query.end());
}

std::vector<Neighbor> KnnClassifier::rank(std::span<const double> query) const {
  const std::vector<double> q = prepare_query(query);
  std::vector<std::pair<double, std::size_t>> scored(prepared_.size());
  for (std::size_t i = 0; i < prepared_.size(); ++i) {
    scored[i] = {distance(prepared_[i], q, config_.metric), i};
  }
  std::sort(scored.begin(), scored.end());
  std::vector<Neighbor> out;
  out.reserve(scored.size());
  for (const auto& [d, i] : scored) out.push_back({i, train_[i].label, d});
  return out;
}

Prediction KnnClassifier::classify(const FeatureVector& query) const {
  return classify(query.values());
}

Prediction KnnClassifier::classify(std::span<const double> query) const {
  const std::vector<double> q = prepare_query(query);
  const auto k = static_cast<std::size_t>(config_.k);

  std::vector<std::pair<double, std::size_t>> scored(prepared_.size());
  for (std::size_t i = 0; i < prepared_.size(); ++i) {
    scored[i] = {distance(prepared_[i], q, config_.metric), i};
  }
  // Pair ordering sorts by distance, then by training index.
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k), scored.end());

  Prediction result;
  result.neighbors.reserve(k);
  for (std::size_t r = 0; r < k; ++r) {
    const auto [d, i] = scored[r];
    result.neighbors.push_back({i, train_[i].label, d});
  }

  struct Tally {
    int votes = 0;
    double summed = 0.0;
    std::size_t first_rank = 0;
  };
  std::map<std::string, Tally> tallies;
  for (std::size_t r = 0; r < k; ++r) {
    const Neighbor& n = result.neighbors[r];
    auto [it, inserted] = tallies.try_emplace(n.label);
    if (inserted) it->second.first_rank = r;
    ++it->second.votes;
    it->second.summed += n.distance;
  }
  const auto winner = std::min_element(tallies.begin(), tallies.end(), [](const auto& a, const auto& b) {
    if (a.second.votes != b.second.votes) return a.second.votes > b.second.votes;
    if (a.second.summed != b.second.summed) return a.second.summed < b.second.summed;
    return a.second.first_rank < b.second.first_rank;
  });
  result.label = winner->first;
  return result;
}

Prediction knn_classify(std::span<const LabeledVector> train, const FeatureVector& query,
                        const ClassifierConfig& config) {
  KnnClassifier knn({train.begin(), train.end()}, config);
  return knn.classify(query);
}

}  // namespace vsign
