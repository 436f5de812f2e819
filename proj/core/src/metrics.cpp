#include "vsign/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "vsign/error.hpp"

namespace vsign {

std::string_view to_string(Metric m) noexcept {
  switch (m) {
    case Metric::Euclidean: return "ED";
    case Metric::Manhattan: return "MD";
    case Metric::Hassanat: return "HD";
  }
  return "?";
}

Metric parse_metric(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "ED" || upper == "EUCLIDEAN") return Metric::Euclidean;
  if (upper == "MD" || upper == "MANHATTAN") return Metric::Manhattan;
  if (upper == "HD" || upper == "HASSANAT") return Metric::Hassanat;
  throw Error(ErrorCode::InvalidArgument, "unknown metric '" + std::string(text) + "'");
}

double hassanat_term(double a, double b) noexcept {
  // The ratio underflows to 0 once hi/lo exceeds 2^53; keep the term below 1.
  constexpr double kBelowOne = 1.0 - 0x1.0p-53;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  if (lo >= 0.0) return std::min(kBelowOne, 1.0 - (1.0 + lo) / (1.0 + hi));
  // Shift both values by |lo| so the ratio stays in (0, 1].
  const double shift = -lo;
  return std::min(kBelowOne, 1.0 - (1.0 + lo + shift) / (1.0 + hi + shift));
}

double distance(std::span<const double> a, std::span<const double> b, Metric metric) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "distance between vectors of dimension " + std::to_string(a.size()) + " and " +
                    std::to_string(b.size()));
  }
  double acc = 0.0;
  switch (metric) {
    case Metric::Euclidean:
      for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
      return std::sqrt(acc);
    case Metric::Manhattan:
      for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
      return acc;
    case Metric::Hassanat:
      for (std::size_t i = 0; i < a.size(); ++i) acc += hassanat_term(a[i], b[i]);
      return acc;
  }
  return acc;
}

}  // namespace vsign
