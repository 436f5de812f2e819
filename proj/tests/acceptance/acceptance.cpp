// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/grids.hpp"
#include "support/oracles.hpp"
#include "support/run.hpp"
#include "support/shapes.hpp"
#include "support/table1.hpp"
#include "support/tmpdir.hpp"
#include "vsign/dataset.hpp"
#include "vsign/experiment.hpp"
#include "vsign/geometry.hpp"
#include "vsign/moments.hpp"
#include "vsign/pipeline.hpp"
#include "vsign/segmentation.hpp"
#include "vsign/synth.hpp"

using namespace vsign;
namespace vt = vsign::testing;

namespace {

// Collects failed checks for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::ostringstream info;

  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 8) failures.push_back(what);
    if (!ok) ++failed;
  }
  int failed = 0;
};

bool raises(const std::function<void()>& fn, ErrorCode code) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

void triangle_area_criterion(Check& c) {
  c.expect(triangle_area({0, 0}, {4, 0}, {0, 3}) == 6.0, "3-4-5 triangle");
  c.expect(triangle_area({0, 0}, {1, 1}, {2, 2}) == 0.0, "collinear");
  c.expect(triangle_area({1, 1}, {2, 3}, {4, 0}) == 3.5, "1,1 2,3 4,0");
  const KeyPoints kp{{0, 0}, {0, 8}, {4, 0}, {0, 3}, {6, 8}};
  const GeometricFeatures f = geometric_features(kp);
  c.expect(f.area_index == oracle::shoelace_area(kp.tip1, kp.bfp, kp.upp), "areaIndex");
  c.expect(f.area_middle == oracle::shoelace_area(kp.tip2, kp.bfp, kp.bpp), "areaMiddle");
  std::mt19937 rng(1000);
  std::uniform_int_distribution<int> coord(-100000, 100000);
  for (int i = 0; i < 1000; ++i) {
    const PixelCoord a{coord(rng), coord(rng)}, b{coord(rng), coord(rng)}, d{coord(rng), coord(rng)};
    c.expect(triangle_area(a, b, d) == oracle::shoelace_area(a, b, d), "random triangle " + std::to_string(i));
  }
  c.info << "1000 random + 5 worked";
}

void otsu_criterion(Check& c) {
  std::mt19937_64 rng(2);
  int histograms = 0;
  while (histograms < 100) {
    Histogram h;
    const int occupied = 2 + static_cast<int>(rng() % 60);
    for (int i = 0; i < occupied; ++i) h.bins[rng() % 256] += rng() % 10000;
    if (std::count_if(h.bins.begin(), h.bins.end(), [](auto b) { return b > 0; }) < 2) continue;
    ++histograms;
    c.expect(otsu_threshold(h) == oracle::otsu_sweep(h.bins), "histogram " + std::to_string(histograms));
  }
  for (int i = 0; i < 20; ++i) {
    GrayImage img(64 + static_cast<int>(rng() % 64), 48 + static_cast<int>(rng() % 48));
    // Two noisy modes at random levels, plus uniform clutter.
    std::normal_distribution<double> lo(20 + static_cast<double>(rng() % 80), 12), hi(140 + static_cast<double>(rng() % 100), 15);
    for (auto& v : img.pixels()) {
      const auto r = rng() % 10;
      const double x = r < 5 ? lo(rng) : r < 9 ? hi(rng) : static_cast<double>(rng() % 256);
      v = static_cast<std::uint8_t>(std::clamp(std::lround(x), 0L, 255L));
    }
    const OtsuResult res = otsu_threshold(img);
    c.expect(res.threshold == oracle::otsu_sweep(histogram(img).bins), "image " + std::to_string(i));
  }
  c.info << "100 histograms, 20 images";
}

// Relative error is only meaningful for invariants that are not near zero
// for the shape at hand; badly conditioned draws are skipped.
bool well_conditioned(const std::array<double, 8>& h) {
  return std::abs(h[4]) / (h[2] * h[3]) >= 0.15 && std::abs(h[5]) / (std::sqrt(h[1]) * h[3]) >= 0.15 &&
         std::abs(h[6]) / (h[2] * h[3]) >= 0.15;
}

void hu_criterion(Check& c) {
  constexpr double kScale = 7;
  std::mt19937_64 rng(20241016);
  std::uniform_real_distribution<double> angle(0, 360);
  double worst_lattice = 0, worst_scale = 0, worst_rot = 0;
  std::size_t min_px = SIZE_MAX;
  int kept = 0, drawn = 0;
  while (kept < 50 && drawn < 1000) {
    const vt::FingerShape f = vt::random_finger(rng);
    ++drawn;
    const double deg = angle(rng);
    if (!well_conditioned(hu_descriptor(vt::render_finger(f, 0, 1)).as_array())) continue;
    ++kept;
    const BinaryImage m = vt::render_finger(f, 0, kScale);
    min_px = std::min(min_px, count_foreground(m));
    const auto h = hu_descriptor(m).as_array();
    const auto moved = hu_descriptor(vt::translate(m, 13, 29, 40, 31)).as_array();
    const auto turned = hu_descriptor(vt::rotate90(m)).as_array();
    const auto doubled = hu_descriptor(vt::render_finger(f, 0, 2 * kScale)).as_array();
    const auto blocks = hu_descriptor(vt::upscale_blocks(m, 2)).as_array();
    const auto rotated = hu_descriptor(vt::render_finger(f, deg, kScale)).as_array();
    for (std::size_t i = 0; i < 8; ++i) {
      const std::string id = "shape " + std::to_string(kept) + (i < 7 ? " H" + std::to_string(i + 1) : " E");
      c.expect(rel(moved[i], h[i]) <= 1e-9, id + " translation");
      c.expect(rel(turned[i], h[i]) <= 1e-9, id + " 90-degree rotation");
      c.expect(rel(doubled[i], h[i]) <= 0.02, id + " 2x scaling");
      c.expect(rel(blocks[i], h[i]) <= 0.02, id + " 2x block scaling");
      c.expect(rel(rotated[i], h[i]) <= 0.02, id + " rotation");
      worst_lattice = std::max({worst_lattice, rel(moved[i], h[i]), rel(turned[i], h[i])});
      worst_scale = std::max({worst_scale, rel(doubled[i], h[i]), rel(blocks[i], h[i])});
      worst_rot = std::max(worst_rot, rel(rotated[i], h[i]));
    }
  }
  c.expect(kept == 50, "not enough well-conditioned shapes");
  c.expect(min_px >= 5000, "masks below 5000 px");

  const double disk_h1 = hu_descriptor(vt::rasterize(vt::disk(60), 130, 130)).h[0];
  const double square_h1 = hu_descriptor(vt::block(120, 120, 10, 10, 100, 100)).h[0];
  c.expect(rel(disk_h1, 1 / (2 * std::numbers::pi)) <= 0.02, "disk H1");
  c.expect(rel(square_h1, 1.0 / 6) <= 0.02, "square H1");
  char buf[200];
  std::snprintf(buf, sizeof buf, "%d masks (>= %zu px, %d drawn); worst rel: lattice %.1e, 2x %.4f, rotation %.4f",
                kept, min_px, drawn, worst_lattice, worst_scale, worst_rot);
  c.info << buf;
}

void eccentricity_criterion(Check& c) {
  const double bar = eccentricity(central_moments(vt::block(120, 30, 10, 10, 100, 10)));
  const double square = eccentricity(central_moments(vt::block(80, 80, 10, 10, 60, 60)));
  const double disk = eccentricity(central_moments(vt::rasterize(vt::disk(40), 90, 90)));
  c.expect(std::abs(bar - 0.99499) <= 0.01, "100x10 rectangle");
  c.expect(square < 0.05, "square");
  c.expect(disk < 0.05, "disk");
  char buf[120];
  std::snprintf(buf, sizeof buf, "rect %.5f, square %.2e, disk %.2e", bar, square, disk);
  c.info << buf;
}

void metrics_criterion(Check& c) {
  using V = std::vector<double>;
  c.expect(std::abs(distance(V{0, 0}, V{3, 4}, Metric::Euclidean) - 5) <= 1e-12, "ED 3-4-5");
  c.expect(std::abs(distance(V{0, 0}, V{3, 4}, Metric::Manhattan) - 7) <= 1e-12, "MD 3-4");
  c.expect(distance(V{2.5, -7, 0, 1e6}, V{2.5, -7, 0, 1e6}, Metric::Hassanat) == 0.0, "HD(x,x)");
  c.expect(std::abs(distance(V{0}, V{1}, Metric::Hassanat) - 0.5) <= 1e-12, "HD 0,1");
  c.expect(std::abs(distance(V{-1}, V{0}, Metric::Hassanat) - 0.5) <= 1e-12, "HD -1,0");

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> dim(1, 23);
  std::uniform_real_distribution<double> unit(-1, 1);
  std::uniform_int_distribution<int> magnitude(-3, 6);
  for (int i = 0; i < 10000; ++i) {
    V a(static_cast<std::size_t>(dim(rng))), b(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      a[j] = unit(rng) * std::pow(10.0, magnitude(rng));
      b[j] = unit(rng) * std::pow(10.0, magnitude(rng));
    }
    for (Metric m : {Metric::Euclidean, Metric::Manhattan, Metric::Hassanat}) {
      const double ab = distance(a, b, m), ba = distance(b, a, m);
      c.expect(ab == ba, "symmetry");
      c.expect(ab >= 0, "nonnegativity");
      c.expect(distance(a, a, m) == 0.0, "identity");
    }
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double t = hassanat_term(a[j], b[j]);
      c.expect(t >= 0 && t < 1, "HD term range");
      c.expect(std::abs(t - oracle::hassanat_piecewise(a[j], b[j])) <= 1e-12, "HD term oracle");
    }
  }
  c.info << "10000 random pairs x 3 metrics, 5 worked examples";
}

FeatureVector scalar(double x) { return FeatureVector(FeatureMethod::M1, {x, 0, 0, 0, 0, 0, 0}); }

void knn_criterion(Check& c) {
  std::mt19937_64 rng(250);
  std::vector<LabeledVector> train;
  for (int i = 0; i < 250; ++i) {
    std::normal_distribution<double> n((i % 50) * 0.3, 2.0);
    std::vector<double> v(23);
    for (auto& x : v) x = n(rng);
    train.emplace_back(FeatureVector(FeatureMethod::M3, std::move(v)), "P" + std::to_string(i % 50 + 1));
  }
  int correct = 0, total = 0;
  for (Metric m : {Metric::Euclidean, Metric::Manhattan, Metric::Hassanat}) {
    const KnnClassifier knn(train, {1, m, true});
    for (const auto& t : train) {
      ++total;
      correct += knn.classify(t.vector).label == t.label;
    }
    for (int q = 0; q < 20; ++q) {
      const auto all = knn.rank(train[static_cast<std::size_t>(q * 11)].vector.values());
      for (std::size_t i = 1; i < all.size(); ++i) c.expect(all[i - 1].distance <= all[i].distance, "ranking order");
    }
    const KnnClassifier k5(train, {5, m, true});
    for (int q = 0; q < 20; ++q) {
      const auto p = k5.classify(train[static_cast<std::size_t>(q * 3)].vector);
      for (std::size_t i = 1; i < p.neighbors.size(); ++i)
        c.expect(p.neighbors[i - 1].distance <= p.neighbors[i].distance, "k=5 neighbour order");
    }
  }
  c.expect(correct == total, "k=1 self-query");

  const std::vector<LabeledVector> vote{{scalar(0), "A"}, {scalar(2), "A"}, {scalar(0.9), "B"}};
  const Prediction p = knn_classify(vote, scalar(1.0), {3, Metric::Euclidean, false});
  c.expect(p.label == "A", "k=3 vote label");
  c.expect(p.neighbors.size() == 3 && p.neighbors[0].label == "B" && std::abs(p.neighbors[0].distance - 0.1) < 1e-12 &&
               p.neighbors[1].label == "A" && p.neighbors[2].label == "A" &&
               std::abs(p.neighbors[1].distance - 1.0) < 1e-12 && std::abs(p.neighbors[2].distance - 1.0) < 1e-12,
           "k=3 neighbours B(0.1), A(1.0), A(1.0)");
  c.info << "self-query " << correct << "/" << total;
}

void keypoint_criterion(Check& c) {
  int n = 0;
  for (const BinaryImage& g : vt::victory_grids()) {
    ++n;
    const auto expected = oracle::scan_keypoints(g);
    if (!expected) {
      c.expect(false, "oracle found no valley on grid " + std::to_string(n));
      continue;
    }
    try {
      const KeyPoints kp = find_keypoints(g);
      c.expect(kp.tip1 == expected->tip1 && kp.tip2 == expected->tip2 && kp.bfp == expected->bfp &&
                   kp.upp == expected->upp && kp.bpp == expected->bpp,
               "grid " + std::to_string(n));
    } catch (const Error& e) {
      c.expect(false, "grid " + std::to_string(n) + ": " + e.what());
    }
  }
  c.expect(raises([] { (void)find_keypoints(BinaryImage(8, 8)); }, ErrorCode::EmptyMask), "empty mask");
  const BinaryImage solid = vt::parse_grid({"..........", "..######..", "..######..", "..######..", ".........."});
  c.expect(raises([&] { (void)find_keypoints(solid); }, ErrorCode::NoValley), "no valley");
  const BinaryImage sealed = vt::parse_grid(
      {"............", "..##########", "..##....####", "..##....####", "..##########", "............"});
  c.expect(raises([&] { (void)find_keypoints(sealed); }, ErrorCode::NoValley), "sealed notch");

  const BinaryImage hand = vt::two_prong_12x12();
  const KeyPoints kp = find_keypoints(hand);
  BinaryImage merged = hand;
  for (int y = 4; y <= 7; ++y) merged(3, y) = 1;
  c.expect(raises([&] { (void)cut_fingers(merged, kp); }, ErrorCode::FingerSeparationError), "merged fingers");
  c.info << n << " grids, 4 error cases";
}

void end_to_end_criterion(Check& c) {
  SyntheticConfig cfg;  // 50 subjects x 2 sessions x 5 images
  const auto corpus = generate_synthetic_dataset(cfg);
  const BatchResult batch = extract_batch(
      corpus.size(), [&](std::size_t i) { return corpus[i].image; }, FeatureMethod::M3, segmentation::Otsu{});
  std::vector<Sample> all, s1, s2;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!batch.features[i]) continue;
    all.push_back({*batch.features[i], corpus[i].meta});
    (corpus[i].meta.session == 1 ? s1 : s2).push_back(all.back());
  }
  c.expect(batch.failures.size() <= corpus.size() / 20, "pipeline totality below 95%");

  ExperimentConfig exp;
  exp.method = FeatureMethod::M3;
  exp.metric = Metric::Hassanat;
  exp.runs = 10;
  exp.test_fraction = 0.34;
  exp.k = 1;
  const ResultTable k1 = run_experiment(all, exp);
  exp.k = 5;
  const ResultTable k5 = run_experiment(all, exp);
  const double validation = run_validation(s1, s2, Metric::Hassanat, FeatureMethod::M3);

  char buf[64];
  c.info << corpus.size() << " images, " << batch.failures.size() << " skipped;";
  for (std::size_t r = 0; r < k1.rows.size(); ++r) {
    const int session = k1.rows[r].session;
    c.expect(k1.rows[r].mean >= 0.90, "session " + std::to_string(session) + " k=1 accuracy");
    c.expect(k1.rows[r].mean >= k5.rows[r].mean, "session " + std::to_string(session) + " k=1 < k=5");
    std::snprintf(buf, sizeof buf, " S%d k=1 %.3f k=5 %.3f;", session, k1.rows[r].mean, k5.rows[r].mean);
    c.info << buf;
  }
  c.expect(k1.rows.size() == 2, "two sessions");
  c.expect(validation >= 0.70, "cross-session validation");
  std::snprintf(buf, sizeof buf, " validation %.3f", validation);
  c.info << buf;
}

void naming_criterion(Check& c) {
  for (const auto& row : vt::kNamingTable) {
    try {
      c.expect(parse_vshi_name(row.filename) == row.meta, std::string(row.filename));
    } catch (const Error& e) {
      c.expect(false, std::string(row.filename) + ": " + e.what());
    }
  }
  std::mt19937_64 rng(9);
  for (int i = 0; i < 1000; ++i) {
    const SubjectMeta m{1 + static_cast<int>(rng() % 999), (rng() & 1) ? Gender::Female : Gender::Male,
                        1 + static_cast<int>(rng() % 110), 1 + static_cast<int>(rng() % 2),
                        1 + static_cast<int>(rng() % 5)};
    const std::string name = format_vshi_name(m);
    try {
      c.expect(parse_vshi_name(name) == m, "round trip " + name);
    } catch (const Error& e) {
      c.expect(false, name + ": " + e.what());
    }
  }
  c.expect(raises([] { (void)parse_vshi_name("hand_01.png"); }, ErrorCode::MalformedName), "hand_01.png");
  c.info << "4 table rows, 1000 round trips";
}

void determinism_criterion(Check& c) {
  const auto dir = vt::scratch_dir("acceptance_determinism");
  const std::string cmd = vt::quote(VSIGN_CLI_PATH) + " experiment --synthetic 10 --seed 7";
  const vt::RunResult a = vt::run(cmd, dir);
  const vt::RunResult b = vt::run(cmd, dir);
  c.expect(a.status == 0 && b.status == 0, "CLI exit status");
  c.expect(a.out.size() > 40, "CSV report is empty");
  c.expect(a.out == b.out, "CSV differs between runs");
  c.info << a.out.size() << " bytes, identical: " << (a.out == b.out ? "yes" : "no");
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0 = no time limit
  void (*body)(Check&);
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "triangle area matches the shoelace oracle", 1, triangle_area_criterion},
      {2, "Otsu equals the exhaustive sweep", 5, otsu_criterion},
      {3, "Hu invariance suite", 30, hu_criterion},
      {4, "eccentricity of rectangle, square and disk", 0, eccentricity_criterion},
      {5, "distance metric properties and worked examples", 0, metrics_criterion},
      {6, "KNN self-query, vote example and ordering", 0, knn_criterion},
      {7, "keypoints match the literal scan oracle; error cases", 0, keypoint_criterion},
      {8, "end-to-end synthetic benchmark", 300, end_to_end_criterion},
      {9, "name parser table rows and round trips", 0, naming_criterion},
      {10, "experiment --seed 7 is byte-identical across runs", 0, determinism_criterion},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.budget_s > 0 && secs > cr.budget_s) c.expect(false, "over time budget");
    const bool ok = c.failed == 0;
    failed += !ok;
    std::printf("%s %2d %s [%.2fs] %s\n", ok ? "PASS" : "FAIL", cr.id, cr.name, secs, c.info.str().c_str());
    for (const auto& f : c.failures) std::printf("       - %s\n", f.c_str());
    if (c.failed > static_cast<int>(c.failures.size()))
      std::printf("       ... %d failed checks in total\n", c.failed);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
