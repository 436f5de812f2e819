#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vsign/classify.hpp"
#include "vsign/dataset.hpp"
#include "vsign/geometry.hpp"
#include "vsign/moments.hpp"
#include "vsign/segmentation.hpp"

// JSON documents exchanged by the command-line tools. Parsers throw
// ParseError on malformed input.
namespace vsign::serial {

std::string to_json(const KeyPoints& kp);
KeyPoints keypoints_from_json(std::string_view text);

std::string to_json(const GeometricFeatures& f);

/// [H1..H7, E]
std::string to_json(const HuDescriptor& d);

/// {"metric": "ED", "samples": [{"r":..,"g":..,"b":..,"label":"foreground"}]}
std::string to_json(const PixelModel& model);
PixelModel pixel_model_from_json(std::string_view text);

/// {"min": [...], "max": [...]}
std::string to_json(const NormalizationStats& stats);
NormalizationStats stats_from_json(std::string_view text);

/// One template-store line: {"label": .., "method": "M3", "values": [...]}
std::string to_json_line(const LabeledVector& v);
LabeledVector labeled_vector_from_json(std::string_view line);

/// A features-file line: a template line plus the source image and, when
/// the file name follows the database convention, its parsed identity.
struct FeatureRecord {
  std::string source;
  LabeledVector vector;
  std::optional<SubjectMeta> meta;
};

std::string to_json_line(const FeatureRecord& record);
FeatureRecord feature_record_from_json(std::string_view line);

std::vector<FeatureRecord> read_feature_records(const std::filesystem::path& path);
void write_feature_records(const std::filesystem::path& path, std::span<const FeatureRecord> records);

std::vector<LabeledVector> read_template_store(const std::filesystem::path& path);
void write_template_store(const std::filesystem::path& path, std::span<const LabeledVector> templates);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace vsign::serial
