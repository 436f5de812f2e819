#include "vsign/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "vsign/error.hpp"

namespace vsign {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Unbiased draw in [0, n) from the raw engine output.
std::size_t below(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return static_cast<std::size_t>(r % n);
}

LabeledVector labeled(const Sample& s, FeatureMethod method) {
  return LabeledVector(s.features.slice(method), subject_label(s.meta));
}

}  // namespace

void ResultTable::append(const ResultTable& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

Split stratified_split(std::span<const Sample> dataset, std::span<const std::size_t> session_items,
                       double test_fraction, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(session_items.begin(), session_items.end());
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[below(rng, i)]);

  std::map<int, int> remaining;  // training items left per subject
  for (std::size_t idx : order) ++remaining[dataset[idx].meta.person];

  const auto wanted = static_cast<std::size_t>(std::ceil(test_fraction * static_cast<double>(order.size()) - 1e-9));
  Split split;
  for (std::size_t idx : order) {
    int& left = remaining[dataset[idx].meta.person];
    if (split.test.size() < wanted && left > 1) {
      split.test.push_back(idx);
      --left;
    } else {
      split.train.push_back(idx);
    }
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

ResultTable run_experiment(std::span<const Sample> dataset, const ExperimentConfig& cfg) {
  if (!(cfg.test_fraction > 0 && cfg.test_fraction < 1)) {
    throw Error(ErrorCode::InvalidArgument, "test fraction must lie in (0, 1)");
  }
  if (cfg.runs < 1) throw Error(ErrorCode::InvalidArgument, "at least one run is required");
  if (dataset.empty()) throw Error(ErrorCode::EmptyTrainingSet, "experiment on an empty dataset");

  std::map<int, std::vector<std::size_t>> sessions;
  for (std::size_t i = 0; i < dataset.size(); ++i) sessions[dataset[i].meta.session].push_back(i);

  ResultTable table;
  for (const auto& [session, items] : sessions) {
    std::map<int, int> per_subject;
    for (std::size_t i : items) ++per_subject[dataset[i].meta.person];
    for (const auto& [person, n] : per_subject) {
      if (n < 2) {
        throw Error(ErrorCode::InsufficientExamples,
                    "subject P" + std::to_string(person) + " has " + std::to_string(n) +
                        " vector(s) in session " + std::to_string(session) + "; at least 2 are needed");
      }
    }

    ResultRow row{cfg.method, cfg.k, cfg.metric, session, {}, 0.0};
    for (int run = 0; run < cfg.runs; ++run) {
      // The split depends on (seed, session, run) only, so every k/metric
      // cell sees the same partitions.
      const std::uint64_t split_seed =
          mix(mix(cfg.seed) ^ mix(static_cast<std::uint64_t>(session) << 32 | static_cast<std::uint64_t>(run)));
      const Split split = stratified_split(dataset, items, cfg.test_fraction, split_seed);

      std::vector<LabeledVector> train;
      train.reserve(split.train.size());
      for (std::size_t i : split.train) train.push_back(labeled(dataset[i], cfg.method));
      const KnnClassifier knn(std::move(train), ClassifierConfig{cfg.k, cfg.metric, cfg.normalize});

      std::size_t correct = 0;
      for (std::size_t i : split.test) {
        const LabeledVector query = labeled(dataset[i], cfg.method);
        correct += knn.classify(query.vector).label == query.label;
      }
      row.run_accuracies.push_back(split.test.empty() ? 0.0
                                                      : static_cast<double>(correct) / static_cast<double>(split.test.size()));
    }
    double sum = 0;
    for (double a : row.run_accuracies) sum += a;
    row.mean = sum / static_cast<double>(row.run_accuracies.size());
    table.rows.push_back(std::move(row));
  }
  return table;
}

double run_validation(std::span<const Sample> train, std::span<const Sample> test, Metric metric,
                      FeatureMethod method, bool normalize) {
  if (train.empty()) throw Error(ErrorCode::EmptyTrainingSet, "validation needs session-1 templates");
  if (test.empty()) throw Error(ErrorCode::InvalidArgument, "validation needs session-2 queries");
  std::vector<LabeledVector> templates;
  templates.reserve(train.size());
  for (const Sample& s : train) templates.push_back(labeled(s, method));
  const KnnClassifier knn(std::move(templates), ClassifierConfig{1, metric, normalize});

  std::size_t correct = 0;
  for (const Sample& s : test) {
    const LabeledVector query = labeled(s, method);
    correct += knn.classify(query.vector).label == query.label;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

}  // namespace vsign
