#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vsign/classify.hpp"
#include "vsign/dataset.hpp"

namespace vsign {

struct Sample {
  FeatureVector features;
  SubjectMeta meta;
};

struct ExperimentConfig {
  FeatureMethod method = FeatureMethod::M3;
  int k = 1;
  Metric metric = Metric::Hassanat;
  double test_fraction = 0.34;
  int runs = 10;
  std::uint64_t seed = 0;
  bool normalize = true;
};

struct ResultRow {
  FeatureMethod method = FeatureMethod::M3;
  int k = 1;
  Metric metric = Metric::Hassanat;
  int session = 1;
  std::vector<double> run_accuracies;
  double mean = 0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct ResultTable {
  std::vector<ResultRow> rows;

  void append(const ResultTable& other);
  friend bool operator==(const ResultTable&, const ResultTable&) = default;
};

/// Train/test partition of one session, as indices into the dataset.
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Seeded per-subject stratified split: ceil(test_fraction * n) test items
/// (capped so that every subject keeps one training item), drawn uniformly.
Split stratified_split(std::span<const Sample> dataset, std::span<const std::size_t> session_items,
                       double test_fraction, std::uint64_t seed);

/// Within-session identification: for every session present, cfg.runs
/// random splits, KNN on each test item, accuracy per run and their mean.
/// Vectors are sliced to cfg.method when the dataset carries M3 features.
/// Throws InsufficientExamples when a subject has fewer than two vectors in
/// a session.
ResultTable run_experiment(std::span<const Sample> dataset, const ExperimentConfig& cfg);

/// Cross-session protocol with k = 1: enrol every `train` vector, classify
/// every `test` vector and return the fraction labelled correctly.
double run_validation(std::span<const Sample> train, std::span<const Sample> test, Metric metric,
                      FeatureMethod method, bool normalize = true);

}  // namespace vsign
