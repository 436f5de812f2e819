#include <cmath>

#include "doctest.h"
#include "vsign/error.hpp"
#include "vsign/pipeline.hpp"
#include "vsign/synth.hpp"

using namespace vsign;

TEST_CASE("subject parameters depend only on seed and person") {
  const auto a = draw_subject_params(5, 12), b = draw_subject_params(5, 12), c = draw_subject_params(6, 12);
  CHECK(a.upper_finger_length == b.upper_finger_length);
  CHECK(a.inter_finger_angle_deg == b.inter_finger_angle_deg);
  CHECK(a.upper_finger_length != c.upper_finger_length);
  for (int p = 1; p <= 50; ++p) {
    const auto s = draw_subject_params(1, p);
    CHECK(s.inter_finger_angle_deg > 5);
    CHECK(s.inter_finger_angle_deg < 40);
    CHECK(s.upper_finger_taper > 0);
    CHECK(s.upper_finger_taper <= 1);
  }
}

TEST_CASE("same seed gives identical pixels") {
  SyntheticConfig cfg;
  cfg.subjects = 2;
  cfg.images_per_session = 2;
  const auto a = generate_synthetic_dataset(cfg), b = generate_synthetic_dataset(cfg);
  REQUIRE(a.size() == 8);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].image == b[i].image);
    CHECK(a[i].meta == b[i].meta);
  }
  cfg.seed = 2;
  CHECK(!(generate_synthetic_dataset(cfg)[0].image == a[0].image));
}

TEST_CASE("full corpus layout") {
  SyntheticConfig cfg;
  cfg.width = 64;  // layout only; small frames keep this fast
  cfg.height = 48;
  const auto all = generate_synthetic_dataset(cfg);
  REQUIRE(all.size() == 500);
  std::size_t i = 0;
  for (int person = 1; person <= 50; ++person)
    for (int session = 1; session <= 2; ++session)
      for (int index = 1; index <= 5; ++index, ++i) {
        CHECK(all[i].meta.person == person);
        CHECK(all[i].meta.session == session);
        CHECK(all[i].meta.image_index == index);
        CHECK(all[i].meta.gender == all[i - i % 10].meta.gender);
        CHECK(std::abs(all[i].pose.rotation_deg) <= cfg.jitter.max_rotation_deg);
        if (session == 1) CHECK(all[i].pose.angle_offset_deg == 0.0);
      }
}

TEST_CASE("invalid generator settings") {
  SyntheticConfig cfg;
  cfg.sessions = 3;
  CHECK_THROWS_AS(generate_synthetic_dataset(cfg), Error);
  cfg.sessions = 2;
  cfg.images_per_session = 0;
  CHECK_THROWS_AS(generate_synthetic_dataset(cfg), Error);

  SyntheticSubjectParams p;
  p.inter_finger_angle_deg = 45;
  CHECK_THROWS_AS(render_victory_sign(p), Error);
  p = {};
  p.upper_finger_width = 0;
  CHECK_THROWS_AS(render_victory_sign(p), Error);
}

TEST_CASE("unjittered render on a black background") {
  const RgbImage img = render_victory_sign(SyntheticSubjectParams{});
  CHECK(img.width() == 408);
  CHECK(img.height() == 306);
  CHECK(img(0, 0).r < 20);
  // The palm covers the frame centre's right-hand side.
  const Rgb centre = img(408 / 2 + 20, 306 / 2);
  CHECK(centre.r > 150);
}

TEST_CASE("longer index finger gives a longer d2") {
  SyntheticSubjectParams shorter, longer;
  shorter.upper_finger_length = 90;
  longer.upper_finger_length = 90 * 1.3;
  const auto fs = extract_features(render_victory_sign(shorter), FeatureMethod::M1, segmentation::Otsu{});
  const auto fl = extract_features(render_victory_sign(longer), FeatureMethod::M1, segmentation::Otsu{});
  const double d2s = fs[1], d2l = fl[1];
  CHECK(d2l >= 1.15 * d2s);
}
