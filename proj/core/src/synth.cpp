#include "vsign/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vsign/error.hpp"

namespace vsign {

namespace {

constexpr double kCrotchGap = 4.0;  // pixels between the finger bases

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ (b << 20));
  return splitmix64(h ^ (c << 40));
}

// Portable uniform draw; std::uniform_real_distribution is not specified
// bit-for-bit across standard libraries.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

struct Vec2 {
  double x, y;
};

Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

// Convex hull of a base circle and a (usually smaller) tip circle.
struct TaperedCapsule {
  Vec2 a, b;  // base and tip centres
  double ra, rb;

  bool contains(Vec2 p) const {
    const Vec2 axis = b - a;
    const double len = std::sqrt(dot(axis, axis));
    const Vec2 u = (1 / len) * axis;
    const Vec2 q = p - a;
    const double along = dot(q, u);
    const double across = std::abs(q.x * u.y - q.y * u.x);
    // Signed distance to a 2D round cone: the side line has unit normal
    // (s, c) in (along, across) coordinates, tangent to both circles.
    const double sn = (ra - rb) / len;
    const double cs = std::sqrt(std::max(0.0, 1 - sn * sn));
    const double tangent = cs * along - sn * across;
    double dist;
    if (tangent < 0) {
      dist = std::hypot(along, across) - ra;
    } else if (tangent > cs * len) {
      dist = std::hypot(along - len, across) - rb;
    } else {
      dist = sn * along + cs * across - ra;
    }
    return dist <= 0;
  }
};

struct RoundedRect {
  double x0, y0, x1, y1, radius;

  bool contains(Vec2 p) const {
    if (p.x < x0 || p.x > x1 || p.y < y0 || p.y > y1) return false;
    const double cx = std::clamp(p.x, x0 + radius, x1 - radius);
    const double cy = std::clamp(p.y, y0 + radius, y1 - radius);
    const double dx = p.x - cx, dy = p.y - cy;
    return dx * dx + dy * dy <= radius * radius;
  }
};

// Hand in its own frame: finger bases on x = 0, palm towards +x, y down.
struct HandModel {
  TaperedCapsule upper, lower;
  RoundedRect palm;
  Vec2 lo, hi;  // bounding box

  HandModel(const SyntheticSubjectParams& p, double opening_deg) {
    const double half = opening_deg / 2 * std::numbers::pi / 180;
    const double ru = p.upper_finger_width / 2, rl = p.lower_finger_width / 2;
    const Vec2 base_u{ru, -(kCrotchGap / 2 + ru)};
    const Vec2 base_l{rl, kCrotchGap / 2 + rl};
    upper = {base_u, base_u + p.upper_finger_length * Vec2{-std::cos(half), -std::sin(half)}, ru,
             ru * p.upper_finger_taper};
    lower = {base_l, base_l + p.lower_finger_length * Vec2{-std::cos(half), std::sin(half)}, rl,
             rl * p.lower_finger_taper};
    const double corner = 0.35 * std::min(p.palm_width, p.palm_height);
    palm = {0, -p.palm_height / 2, p.palm_width, p.palm_height / 2, corner};
    lo = {std::min(upper.b.x - ru, lower.b.x - rl), std::min(upper.b.y - ru, palm.y0)};
    hi = {std::max(p.palm_width, std::max(base_u.x + ru, base_l.x + rl)), std::max(lower.b.y + rl, palm.y1)};
  }

  bool contains(Vec2 p) const { return palm.contains(p) || upper.contains(p) || lower.contains(p); }
};

std::uint8_t clamp_channel(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

}  // namespace

SyntheticSubjectParams draw_subject_params(std::uint64_t seed, int person) {
  std::mt19937_64 rng(derive_seed(seed, 0x5b1ec7ULL, static_cast<std::uint64_t>(person)));
  SyntheticSubjectParams p;
  p.upper_finger_length = uniform(rng, 70, 125);
  p.lower_finger_length = uniform(rng, 70, 125);
  p.upper_finger_width = uniform(rng, 15, 26);
  p.lower_finger_width = uniform(rng, 15, 26);
  p.upper_finger_taper = uniform(rng, 0.55, 0.95);
  p.lower_finger_taper = uniform(rng, 0.55, 0.95);
  p.inter_finger_angle_deg = uniform(rng, 20, 36);
  p.palm_width = uniform(rng, 60, 100);
  // Keep the palm inside the span of the finger bases so the fingertips stay
  // the topmost and bottommost points of the silhouette.
  p.palm_height = uniform(rng, 0.85, 1.0) * (p.upper_finger_width + p.lower_finger_width + kCrotchGap);
  const double r = uniform(rng, 150, 235);
  p.skin = {clamp_channel(r), clamp_channel(r * uniform(rng, 0.62, 0.8)), clamp_channel(r * uniform(rng, 0.5, 0.7))};
  return p;
}

RgbImage render_victory_sign(const SyntheticSubjectParams& params, const SyntheticPose& pose, int width,
                             int height, double noise_fraction, std::mt19937_64& rng) {
  if (!(params.upper_finger_length > 0 && params.lower_finger_length > 0 && params.upper_finger_width > 0 &&
        params.lower_finger_width > 0 && params.palm_width > 0 && params.palm_height > 0 &&
        params.upper_finger_taper > 0 && params.upper_finger_taper <= 1 && params.lower_finger_taper > 0 &&
        params.lower_finger_taper <= 1)) {
    throw Error(ErrorCode::InvalidArgument, "synthetic lengths and widths must be positive");
  }
  if (!(params.inter_finger_angle_deg > 5 && params.inter_finger_angle_deg < 40)) {
    throw Error(ErrorCode::InvalidArgument, "inter-finger angle must lie in (5, 40) degrees");
  }
  if (!(pose.scale > 0)) throw Error(ErrorCode::InvalidArgument, "pose scale must be positive");

  // Behavioural drift may push the opening out of range; keep the V visible.
  const double opening = std::clamp(params.inter_finger_angle_deg + pose.angle_offset_deg, 6.0, 39.0);
  const HandModel hand(params, opening);
  const Vec2 model_centre = 0.5 * (hand.lo + hand.hi);
  const Vec2 image_centre{width / 2.0 + pose.dx, height / 2.0 + pose.dy};
  const double phi = pose.rotation_deg * std::numbers::pi / 180;
  const double c = std::cos(phi), s = std::sin(phi);

  // Image -> model: undo translation, rotation (y points down, so a
  // counter-clockwise screen rotation is a clockwise one in these axes) and scale.
  auto to_model = [&](double x, double y) {
    const double u = (x - image_centre.x) / pose.scale;
    const double v = (y - image_centre.y) / pose.scale;
    return Vec2{c * u - s * v, s * u + c * v} + model_centre;
  };

  const double brightness = uniform(rng, 0.95, 1.05);
  RgbImage img(width, height);
  constexpr double kSub[2] = {0.25, 0.75};
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      int hits = 0;
      for (double sy : kSub)
        for (double sx : kSub) hits += hand.contains(to_model(x + sx, y + sy));
      const double coverage = hits / 4.0;
      const double bg = uniform(rng, 0, 14);
      const double grain = uniform(rng, -6, 6);
      auto mix = [&](std::uint8_t skin) {
        return clamp_channel(coverage * (skin * brightness + grain) + (1 - coverage) * bg);
      };
      img(x, y) = {mix(params.skin.r), mix(params.skin.g), mix(params.skin.b)};
    }
  }

  const auto noisy = static_cast<std::size_t>(std::floor(noise_fraction * static_cast<double>(img.size())));
  for (std::size_t i = 0; i < noisy; ++i) {
    const auto idx = static_cast<std::size_t>(rng() % img.size());
    const std::uint8_t v = (rng() & 1) ? 255 : 0;
    img.pixels()[idx] = {v, v, v};
  }
  return img;
}

RgbImage render_victory_sign(const SyntheticSubjectParams& params, int width, int height) {
  std::mt19937_64 rng(0);
  return render_victory_sign(params, SyntheticPose{}, width, height, 0.0, rng);
}

std::vector<SyntheticImage> generate_synthetic_dataset(const SyntheticConfig& config) {
  if (config.subjects < 1 || config.images_per_session < 1 || config.sessions < 1) {
    throw Error(ErrorCode::InvalidArgument, "synthetic dataset counts must be at least 1");
  }
  if (config.images_per_session > 5 || config.sessions > 2) {
    throw Error(ErrorCode::InvalidArgument, "the naming scheme allows at most 2 sessions of 5 images");
  }
  const SyntheticJitter& j = config.jitter;
  std::vector<SyntheticImage> out;
  out.reserve(static_cast<std::size_t>(config.subjects * config.sessions * config.images_per_session));
  for (int person = 1; person <= config.subjects; ++person) {
    const SyntheticSubjectParams params = draw_subject_params(config.seed, person);
    std::mt19937_64 meta_rng(derive_seed(config.seed, 0xa9eULL, static_cast<std::uint64_t>(person)));
    const Gender gender = (meta_rng() & 1) ? Gender::Female : Gender::Male;
    const int age = 14 + static_cast<int>(meta_rng() % 37);

    for (int session = 1; session <= config.sessions; ++session) {
      for (int index = 1; index <= config.images_per_session; ++index) {
        std::mt19937_64 rng(derive_seed(config.seed, static_cast<std::uint64_t>(person),
                                        static_cast<std::uint64_t>(session), static_cast<std::uint64_t>(index)));
        SyntheticPose pose;
        pose.rotation_deg = uniform(rng, -j.max_rotation_deg, j.max_rotation_deg);
        pose.scale = uniform(rng, j.min_scale, j.max_scale);
        pose.dx = uniform(rng, -j.max_translation, j.max_translation);
        pose.dy = uniform(rng, -j.max_translation, j.max_translation);
        if (session == 2) {
          pose.angle_offset_deg = uniform(rng, -j.session2_angle_drift_deg, j.session2_angle_drift_deg);
        }
        SyntheticImage item{render_victory_sign(params, pose, config.width, config.height, j.noise_fraction, rng),
                            SubjectMeta{person, gender, age, session, index}, params, pose};
        out.push_back(std::move(item));
      }
    }
  }
  return out;
}

}  // namespace vsign
