#include "vsign/serialize.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "vsign/error.hpp"

namespace vsign::serial {

namespace {

using nlohmann::json;

json point(PixelCoord p) { return json::array({p.x, p.y}); }

PixelCoord point_from(const json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

template <typename F>
auto parsing(std::string_view what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, "malformed " + std::string(what) + ": " + e.what());
  }
}

json meta_json(const SubjectMeta& m) {
  return {{"person", m.person},
          {"gender", m.gender == Gender::Male ? "M" : "F"},
          {"age", m.age},
          {"session", m.session},
          {"image", m.image_index}};
}

SubjectMeta meta_from(const json& j) {
  SubjectMeta m;
  m.person = j.at("person").get<int>();
  const std::string g = j.at("gender").get<std::string>();
  if (g != "M" && g != "F") throw Error(ErrorCode::ParseError, "gender must be M or F");
  m.gender = g == "M" ? Gender::Male : Gender::Female;
  m.age = j.at("age").get<int>();
  m.session = j.at("session").get<int>();
  m.image_index = j.at("image").get<int>();
  return m;
}

json vector_json(const LabeledVector& v) {
  return {{"label", v.label},
          {"method", to_string(v.vector.method())},
          {"values", std::vector<double>(v.vector.values().begin(), v.vector.values().end())}};
}

LabeledVector vector_from(const json& j) {
  return LabeledVector(FeatureVector(parse_feature_method(j.at("method").get<std::string>()),
                                     j.at("values").get<std::vector<double>>()),
                       j.at("label").get<std::string>());
}

template <typename T, typename Parse>
std::vector<T> read_lines(const std::filesystem::path& path, Parse parse) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<T> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse(line));
  }
  return out;
}

}  // namespace

std::string to_json(const KeyPoints& kp) {
  return json{{"tip1", point(kp.tip1)}, {"tip2", point(kp.tip2)}, {"bfp", point(kp.bfp)},
              {"upp", point(kp.upp)},   {"bpp", point(kp.bpp)}}
      .dump();
}

KeyPoints keypoints_from_json(std::string_view text) {
  return parsing("keypoints", [&] {
    const json j = json::parse(text);
    return KeyPoints{point_from(j.at("tip1")), point_from(j.at("tip2")), point_from(j.at("bfp")),
                     point_from(j.at("upp")), point_from(j.at("bpp"))};
  });
}

std::string to_json(const GeometricFeatures& f) {
  return json{{"d1", f.d1}, {"d2", f.d2}, {"d3", f.d3}, {"d4", f.d4}, {"d5", f.d5},
              {"area_index", f.area_index}, {"area_middle", f.area_middle}}
      .dump();
}

std::string to_json(const HuDescriptor& d) {
  const auto a = d.as_array();
  return json(std::vector<double>(a.begin(), a.end())).dump();
}

std::string to_json(const PixelModel& model) {
  json samples = json::array();
  for (const PixelSample& s : model.samples) {
    samples.push_back({{"r", s.color.r},
                       {"g", s.color.g},
                       {"b", s.color.b},
                       {"label", s.label == PixelLabel::Foreground ? "foreground" : "background"}});
  }
  return json{{"metric", to_string(model.metric)}, {"samples", samples}}.dump(2);
}

PixelModel pixel_model_from_json(std::string_view text) {
  return parsing("pixel model", [&] {
    const json j = json::parse(text);
    std::vector<PixelSample> samples;
    for (const json& s : j.at("samples")) {
      const std::string label = s.at("label").get<std::string>();
      if (label != "foreground" && label != "background") {
        throw Error(ErrorCode::ParseError, "sample label must be foreground or background");
      }
      auto channel = [&](const char* key) {
        const int v = s.at(key).get<int>();
        if (v < 0 || v > 255) throw Error(ErrorCode::ParseError, "colour channel out of range");
        return static_cast<std::uint8_t>(v);
      };
      samples.push_back({Rgb{channel("r"), channel("g"), channel("b")},
                         label == "foreground" ? PixelLabel::Foreground : PixelLabel::Background});
    }
    return train_pixel_classifier(std::move(samples), parse_metric(j.at("metric").get<std::string>()));
  });
}

std::string to_json(const NormalizationStats& stats) {
  return json{{"min", stats.min}, {"max", stats.max}}.dump();
}

NormalizationStats stats_from_json(std::string_view text) {
  return parsing("normalization stats", [&] {
    const json j = json::parse(text);
    NormalizationStats s{j.at("min").get<std::vector<double>>(), j.at("max").get<std::vector<double>>()};
    if (s.min.size() != s.max.size()) throw Error(ErrorCode::ParseError, "min and max differ in length");
    return s;
  });
}

std::string to_json_line(const LabeledVector& v) { return vector_json(v).dump(); }

LabeledVector labeled_vector_from_json(std::string_view line) {
  return parsing("template", [&] { return vector_from(json::parse(line)); });
}

std::string to_json_line(const FeatureRecord& record) {
  json j = vector_json(record.vector);
  j["source"] = record.source;
  if (record.meta) j["meta"] = meta_json(*record.meta);
  return j.dump();
}

FeatureRecord feature_record_from_json(std::string_view line) {
  return parsing("feature record", [&] {
    const json j = json::parse(line);
    FeatureRecord r{j.value("source", std::string{}), vector_from(j), std::nullopt};
    if (j.contains("meta")) r.meta = meta_from(j.at("meta"));
    return r;
  });
}

std::vector<FeatureRecord> read_feature_records(const std::filesystem::path& path) {
  return read_lines<FeatureRecord>(path, feature_record_from_json);
}

void write_feature_records(const std::filesystem::path& path, std::span<const FeatureRecord> records) {
  std::string text;
  for (const FeatureRecord& r : records) text += to_json_line(r) + "\n";
  write_text(path, text);
}

std::vector<LabeledVector> read_template_store(const std::filesystem::path& path) {
  return read_lines<LabeledVector>(path, labeled_vector_from_json);
}

void write_template_store(const std::filesystem::path& path, std::span<const LabeledVector> templates) {
  std::string text;
  for (const LabeledVector& v : templates) text += to_json_line(v) + "\n";
  write_text(path, text);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

}  // namespace vsign::serial
