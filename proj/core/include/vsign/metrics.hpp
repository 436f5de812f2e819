#pragma once

#include <span>
#include <string>
#include <string_view>

namespace vsign {

enum class Metric { Euclidean, Manhattan, Hassanat };

/// "ED", "MD", "HD" (also accepts the lower-case forms).
std::string_view to_string(Metric m) noexcept;
Metric parse_metric(std::string_view text);

/// One dimension's Hassanat term, always in [0, 1).
double hassanat_term(double a, double b) noexcept;

/// Throws DimensionMismatch when the spans differ in length.
double distance(std::span<const double> a, std::span<const double> b, Metric metric);

}  // namespace vsign
