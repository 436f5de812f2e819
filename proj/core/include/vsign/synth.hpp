#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "vsign/dataset.hpp"
#include "vsign/image.hpp"

namespace vsign {

/// Per-subject hand shape. Lengths and widths are in pixels at scale 1.
struct SyntheticSubjectParams {
  double upper_finger_length = 100;
  double lower_finger_length = 100;
  double upper_finger_width = 20;
  double lower_finger_width = 20;
  double upper_finger_taper = 0.8;  // tip width / base width, in (0, 1]
  double lower_finger_taper = 0.8;
  double inter_finger_angle_deg = 28;  // full opening of the V
  double palm_width = 80;
  double palm_height = 40;
  Rgb skin{200, 150, 125};
};

/// Placement of one rendering.
struct SyntheticPose {
  double rotation_deg = 0;  // counter-clockwise as seen on screen
  double scale = 1;
  double dx = 0;  // offset of the hand from the image centre
  double dy = 0;
  double angle_offset_deg = 0;  // added to the subject's inter-finger angle
};

struct SyntheticJitter {
  double max_rotation_deg = 5;
  double min_scale = 0.9;
  double max_scale = 1.1;
  double max_translation = 20;
  double noise_fraction = 0.01;  // salt-and-pepper pixels
  double session2_angle_drift_deg = 3;
};

struct SyntheticConfig {
  int subjects = 50;
  int images_per_session = 5;
  int sessions = 2;
  std::uint64_t seed = 1;
  int width = 408;
  int height = 306;
  SyntheticJitter jitter;
};

struct SyntheticImage {
  RgbImage image;
  SubjectMeta meta;
  SyntheticSubjectParams params;
  SyntheticPose pose;
};

/// Deterministic per-subject parameters; depend only on (seed, person).
SyntheticSubjectParams draw_subject_params(std::uint64_t seed, int person);

/// Renders the victory-sign silhouette on a black background: two capsule
/// fingers pointing towards -x from a rounded palm. `noise_fraction` of the
/// pixels are replaced with pure black or white, drawn from `rng`.
RgbImage render_victory_sign(const SyntheticSubjectParams& params, const SyntheticPose& pose,
                             int width, int height, double noise_fraction, std::mt19937_64& rng);

/// Noise-free render with the hand centred and unrotated.
RgbImage render_victory_sign(const SyntheticSubjectParams& params, int width = 408, int height = 306);

/// subjects x sessions x images_per_session renders, ordered by subject,
/// session, then image index. Identical configs give identical pixels.
std::vector<SyntheticImage> generate_synthetic_dataset(const SyntheticConfig& config);

}  // namespace vsign
