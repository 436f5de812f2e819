// vsign: victory-sign hand biometrics from the command line.
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vsign/dataset.hpp"
#include "vsign/error.hpp"
#include "vsign/experiment.hpp"
#include "vsign/image_io.hpp"
#include "vsign/pipeline.hpp"
#include "vsign/report.hpp"
#include "vsign/serialize.hpp"
#include "vsign/synth.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace vsign;

namespace {

void warn(const json& record) { std::cerr << record.dump() << '\n'; }

bool is_image(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".ppm" || ext == ".pgm";
}

// Sorted so that every run sees the same order.
std::vector<fs::path> list_images(const fs::path& input) {
  if (!fs::exists(input)) throw Error(ErrorCode::IoError, "no such file or directory: " + input.string());
  if (!fs::is_directory(input)) return {input};
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(input))
    if (e.is_regular_file() && is_image(e.path())) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  if (out.empty()) throw Error(ErrorCode::IoError, "no images in " + input.string());
  return out;
}

struct SegOptions {
  std::string method = "otsu";
  std::string metric = "ED";
  std::string model;  // pixel-classifier JSON
  double scale = 1.0;

  void add(CLI::App* app) {
    app->add_option("--seg", method, "Segmentation: otsu, kmeans or pixel")
        ->check(CLI::IsMember({"otsu", "kmeans", "pixel"}, CLI::ignore_case));
    app->add_option("--seg-metric", metric, "Metric for kmeans/pixel segmentation (ED, MD, HD)");
    app->add_option("--model", model, "Pixel-classifier model (JSON) for --seg pixel");
    app->add_option("--downscale", scale, "Downscale factor applied before segmentation")
        ->check(CLI::Range(0.02, 1.0));
  }

  SegmentationMethod build() const {
    std::string m = method;
    std::transform(m.begin(), m.end(), m.begin(), [](unsigned char c) { return std::tolower(c); });
    if (m == "otsu") return segmentation::Otsu{};
    if (m == "kmeans") return segmentation::KMeans{parse_metric(metric)};
    if (model.empty()) throw Error(ErrorCode::InvalidArgument, "--seg pixel needs --model");
    return segmentation::PixelClassifier{serial::pixel_model_from_json(serial::read_text(model))};
  }

  RgbImage load(const fs::path& p) const {
    RgbImage img = io::read_rgb(p);
    return scale < 1.0 ? vsign::downscale(img, scale) : img;
  }
};

std::string label_for(const fs::path& p, std::optional<SubjectMeta>& meta) {
  try {
    meta = parse_vshi_name(p.filename().string());
    return subject_label(*meta);
  } catch (const Error&) {
    meta.reset();
    return p.stem().string();
  }
}

// Extracts features for every image; failures are logged and skipped.
std::vector<serial::FeatureRecord> extract_records(const std::vector<fs::path>& files, FeatureMethod method,
                                                   const SegOptions& seg, unsigned threads) {
  const SegmentationMethod sm = seg.build();
  const BatchResult batch = extract_batch(
      files.size(), [&](std::size_t i) { return seg.load(files[i]); }, method, sm, threads);
  for (const auto& f : batch.failures)
    warn({{"warning", "skipped"}, {"source", files[f.index].string()}, {"code", to_string(f.code)},
          {"message", f.message}});
  std::vector<serial::FeatureRecord> out;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!batch.features[i]) continue;
    std::optional<SubjectMeta> meta;
    std::string label = label_for(files[i], meta);
    out.push_back({files[i].string(), LabeledVector(*batch.features[i], std::move(label)), meta});
  }
  return out;
}

std::vector<Sample> to_samples(const std::vector<serial::FeatureRecord>& records) {
  std::vector<Sample> out;
  for (const auto& r : records) {
    if (!r.meta) throw Error(ErrorCode::MalformedName, "no subject identity for " + r.source);
    out.push_back({r.vector.vector, *r.meta});
  }
  return out;
}

// Skip-and-log: subjects left with fewer than two vectors in a session are dropped.
std::vector<Sample> drop_thin_subjects(std::vector<Sample> samples) {
  std::map<std::pair<int, int>, int> count;
  for (const auto& s : samples) ++count[{s.meta.session, s.meta.person}];
  std::set<std::pair<int, int>> thin;
  for (const auto& [key, n] : count)
    if (n < 2) {
      thin.insert(key);
      warn({{"warning", "subject dropped"}, {"subject", "P" + std::to_string(key.second)}, {"session", key.first},
            {"vectors", n}});
    }
  std::erase_if(samples, [&](const Sample& s) { return thin.count({s.meta.session, s.meta.person}) > 0; });
  return samples;
}

std::vector<serial::FeatureRecord> synthetic_records(int subjects, std::uint64_t seed, unsigned threads) {
  SyntheticConfig cfg;
  cfg.subjects = subjects;
  cfg.seed = seed;
  const auto corpus = generate_synthetic_dataset(cfg);
  const BatchResult batch = extract_batch(
      corpus.size(), [&](std::size_t i) { return corpus[i].image; }, FeatureMethod::M3, segmentation::Otsu{},
      threads);
  std::vector<serial::FeatureRecord> out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const std::string name = format_vshi_name(corpus[i].meta);
    if (!batch.features[i]) {
      warn({{"warning", "skipped"}, {"source", name}});
      continue;
    }
    out.push_back({name, LabeledVector(*batch.features[i], subject_label(corpus[i].meta)), corpus[i].meta});
  }
  return out;
}

// Feature file (JSON lines) or an image directory/file.
std::vector<serial::FeatureRecord> load_records(const fs::path& input, const SegOptions& seg, unsigned threads) {
  if (fs::is_regular_file(input) && !is_image(input)) return serial::read_feature_records(input);
  return extract_records(list_images(input), FeatureMethod::M3, seg, threads);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    serial::write_text(path, text);
  }
}

template <class T>
std::vector<T> parse_all(const std::vector<std::string>& items, T (*parse)(std::string_view)) {
  std::vector<T> out;
  for (const auto& s : items) out.push_back(parse(s));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Victory-sign hand biometrics"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads for feature extraction (0 = all cores)");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic database of PNGs");
  std::string synth_out;
  SyntheticConfig synth_cfg;
  synth->add_option("--out,-o", synth_out, "Output directory")->required();
  synth->add_option("--subjects", synth_cfg.subjects)->check(CLI::Range(1, 9999));
  synth->add_option("--images", synth_cfg.images_per_session, "Images per session")->check(CLI::Range(1, 5));
  synth->add_option("--sessions", synth_cfg.sessions)->check(CLI::Range(1, 2));
  synth->add_option("--seed", synth_cfg.seed);
  synth->add_option("--max-rotation", synth_cfg.jitter.max_rotation_deg, "Rotation jitter, degrees");
  synth->add_option("--noise", synth_cfg.jitter.noise_fraction, "Salt-and-pepper fraction");
  synth->add_option("--drift", synth_cfg.jitter.session2_angle_drift_deg, "Session-2 angle drift, degrees");

  // segment
  auto* seg_cmd = app.add_subcommand("segment", "Segment one image into a hand mask");
  std::string seg_in, seg_out;
  SegOptions seg_opts;
  seg_cmd->add_option("image", seg_in)->required();
  seg_cmd->add_option("--out,-o", seg_out, "Mask image")->required();
  seg_cmd->add_option("--method", seg_opts.method, "otsu, kmeans or pixel")
      ->check(CLI::IsMember({"otsu", "kmeans", "pixel"}, CLI::ignore_case));
  seg_cmd->add_option("--metric", seg_opts.metric, "ED, MD or HD");
  seg_cmd->add_option("--model", seg_opts.model, "Pixel-classifier model (JSON)");
  seg_cmd->add_option("--downscale", seg_opts.scale)->check(CLI::Range(0.02, 1.0));

  // features
  auto* feat = app.add_subcommand("features", "Image or directory -> JSON-lines feature file");
  std::string feat_in, feat_out, feat_method = "m3";
  SegOptions feat_seg;
  feat->add_option("input", feat_in)->required();
  feat->add_option("--out,-o", feat_out, "Feature file (default stdout)");
  feat->add_option("--method", feat_method, "m1, m2 or m3");
  feat_seg.add(feat);

  // enroll
  auto* enroll = app.add_subcommand("enroll", "Feature files -> template store");
  std::vector<std::string> enroll_in;
  std::string enroll_out;
  enroll->add_option("features", enroll_in)->required();
  enroll->add_option("--out,-o", enroll_out, "Template store")->required();

  // identify
  auto* ident = app.add_subcommand("identify", "Rank the enrolled identities for one image");
  std::string ident_in, ident_store, ident_metric = "HD";
  int ident_k = 1, ident_top = 5;
  bool ident_normalize = true;
  SegOptions ident_seg;
  ident->add_option("image", ident_in)->required();
  ident->add_option("--store", ident_store)->required();
  ident->add_option("--k", ident_k);
  ident->add_option("--metric", ident_metric);
  ident->add_option("--top", ident_top, "Neighbours to list");
  ident->add_option("--normalize", ident_normalize);
  ident_seg.add(ident);

  // experiment
  auto* exp = app.add_subcommand("experiment", "Within-session identification report");
  std::string exp_in, exp_out, exp_config, exp_format = "csv";
  std::vector<int> exp_k{1};
  std::vector<std::string> exp_metric{"HD"}, exp_method{"M3"};
  ExperimentConfig exp_cfg;
  int exp_synthetic = 0;
  std::uint64_t exp_synth_seed = 1;
  SegOptions exp_seg;
  exp->add_option("input", exp_in, "Image directory or feature file");
  exp->add_option("--synthetic", exp_synthetic, "Use an in-memory synthetic corpus of this many subjects");
  exp->add_option("--synth-seed", exp_synth_seed);
  exp->add_option("--config", exp_config, "JSON config; flags override it");
  auto* o_k = exp->add_option("--k", exp_k);
  auto* o_metric = exp->add_option("--metric", exp_metric);
  auto* o_method = exp->add_option("--method", exp_method);
  auto* o_runs = exp->add_option("--runs", exp_cfg.runs);
  auto* o_frac = exp->add_option("--test-fraction", exp_cfg.test_fraction);
  auto* o_seed = exp->add_option("--seed", exp_cfg.seed);
  auto* o_norm = exp->add_option("--normalize", exp_cfg.normalize);
  exp->add_option("--format", exp_format)->check(CLI::IsMember({"csv", "json"}, CLI::ignore_case));
  exp->add_option("--out,-o", exp_out);
  exp_seg.add(exp);

  // validate
  auto* val = app.add_subcommand("validate", "Cross-session report: train on session 1, test on session 2");
  std::string val_train, val_test, val_out;
  std::vector<std::string> val_metric{"ED", "MD", "HD"}, val_method{"M1", "M2", "M3"};
  bool val_normalize = true;
  SegOptions val_seg;
  val->add_option("train", val_train, "Session-1 directory or feature file")->required();
  val->add_option("test", val_test, "Session-2 directory or feature file")->required();
  val->add_option("--metric", val_metric);
  val->add_option("--method", val_method);
  val->add_option("--normalize", val_normalize);
  val->add_option("--out,-o", val_out);
  val_seg.add(val);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      fs::create_directories(synth_out);
      const auto corpus = generate_synthetic_dataset(synth_cfg);
      for (const auto& item : corpus)
        io::write_rgb(fs::path(synth_out) / (format_vshi_name(item.meta) + ".png"), item.image);
      std::cout << json{{"images", corpus.size()}, {"out", synth_out}}.dump() << '\n';
    } else if (*seg_cmd) {
      io::write_mask(seg_out, segment(seg_opts.load(seg_in), seg_opts.build()));
    } else if (*feat) {
      const auto records = extract_records(list_images(feat_in), parse_feature_method(feat_method), feat_seg, threads);
      std::string text;
      for (const auto& r : records) text += serial::to_json_line(r) + '\n';
      write_output(feat_out, text);
    } else if (*enroll) {
      std::vector<LabeledVector> templates;
      for (const auto& f : enroll_in)
        for (auto& r : serial::read_feature_records(f)) templates.push_back(std::move(r.vector));
      if (templates.empty()) throw Error(ErrorCode::EmptyTrainingSet, "no feature records to enrol");
      serial::write_template_store(enroll_out, templates);
      std::cout << json{{"templates", templates.size()}, {"store", enroll_out}}.dump() << '\n';
    } else if (*ident) {
      auto templates = serial::read_template_store(ident_store);
      if (templates.empty()) throw Error(ErrorCode::EmptyTrainingSet, "empty template store");
      const FeatureMethod method = templates.front().vector.method();
      const FeatureVector query = extract_features(ident_seg.load(ident_in), method, ident_seg.build());
      const KnnClassifier knn(std::move(templates), ClassifierConfig{ident_k, parse_metric(ident_metric), ident_normalize});
      const Prediction p = knn.classify(query);
      json ranked = json::array();
      const auto all = knn.rank(query.values());
      for (std::size_t i = 0; i < all.size() && static_cast<int>(i) < ident_top; ++i)
        ranked.push_back({{"label", all[i].label}, {"distance", all[i].distance}, {"index", all[i].index}});
      std::cout << json{{"label", p.label}, {"neighbors", ranked}}.dump(2) << '\n';
    } else if (*exp) {
      if (!exp_config.empty()) {
        const json c = json::parse(serial::read_text(exp_config));
        auto as_list = [](const json& v) { return v.is_array() ? v : json::array({v}); };
        if (c.contains("k") && !o_k->count()) exp_k = as_list(c["k"]).get<std::vector<int>>();
        if (c.contains("metric") && !o_metric->count()) exp_metric = as_list(c["metric"]).get<std::vector<std::string>>();
        if (c.contains("method") && !o_method->count()) exp_method = as_list(c["method"]).get<std::vector<std::string>>();
        if (c.contains("runs") && !o_runs->count()) exp_cfg.runs = c["runs"].get<int>();
        if (c.contains("test_fraction") && !o_frac->count()) exp_cfg.test_fraction = c["test_fraction"].get<double>();
        if (c.contains("seed") && !o_seed->count()) exp_cfg.seed = c["seed"].get<std::uint64_t>();
        if (c.contains("normalize") && !o_norm->count()) exp_cfg.normalize = c["normalize"].get<bool>();
      }
      std::vector<serial::FeatureRecord> records;
      if (exp_synthetic > 0) {
        records = synthetic_records(exp_synthetic, exp_synth_seed, threads);
      } else if (!exp_in.empty()) {
        records = load_records(exp_in, exp_seg, threads);
      } else {
        throw Error(ErrorCode::InvalidArgument, "experiment needs an input or --synthetic");
      }
      const auto samples = drop_thin_subjects(to_samples(records));
      ResultTable table;
      for (FeatureMethod method : parse_all(exp_method, &parse_feature_method))
        for (int k : exp_k)
          for (Metric metric : parse_all(exp_metric, &parse_metric)) {
            ExperimentConfig cfg = exp_cfg;
            cfg.method = method;
            cfg.k = k;
            cfg.metric = metric;
            table.append(run_experiment(samples, cfg));
          }
      write_output(exp_out, emit_report(table, parse_report_format(exp_format)));
    } else if (*val) {
      const auto train = drop_thin_subjects(to_samples(load_records(val_train, val_seg, threads)));
      const auto test = to_samples(load_records(val_test, val_seg, threads));
      std::ostringstream csv;
      csv << "method,metric,accuracy\n";
      for (FeatureMethod method : parse_all(val_method, &parse_feature_method))
        for (Metric metric : parse_all(val_metric, &parse_metric)) {
          const double acc = run_validation(train, test, metric, method, val_normalize);
          char buf[16];
          std::snprintf(buf, sizeof buf, "%.3f", acc);
          csv << to_string(method) << ',' << to_string(metric) << ',' << buf << '\n';
        }
      write_output(val_out, csv.str());
    }
  } catch (const Error& e) {
    std::cerr << json{{"error", to_string(e.code())}, {"message", e.what()}}.dump() << '\n';
    return 1;
  } catch (const json::exception& e) {
    std::cerr << json{{"error", "ParseError"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}
