#include <doctest.h>

#include <cmath>
#include <random>

#include "rlah/cones.hpp"
#include "rlah/errors.hpp"
#include "rlah/monte_carlo.hpp"

using rlah::Rational;
using rlah::RationalVector;
using rlah::WalkSample;

namespace {

WalkSample manual_sample(std::vector<RationalVector> sums) {
  WalkSample s;
  s.d = static_cast<int>(sums.front().size());
  s.n = static_cast<int>(sums.size());
  s.partial_sums = std::move(sums);
  return s;
}

RationalVector vec(std::initializer_list<long> xs) {
  RationalVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("walks are exact partial sums and reproducible") {
  std::mt19937_64 a(99), b(99);
  const auto s = rlah::draw_walk(3, 5, a);
  const auto t = rlah::draw_walk(3, 5, b);
  REQUIRE(s.partial_sums.size() == 5);
  RationalVector sum(3);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 3; ++j) sum[static_cast<std::size_t>(j)] += s.increments[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    CHECK(s.partial_sums[static_cast<std::size_t>(i)] == sum);
    CHECK(s.partial_sums[static_cast<std::size_t>(i)] == t.partial_sums[static_cast<std::size_t>(i)]);
  }
  CHECK(rlah::in_general_position(s));
  for (const auto& x : s.increments[0]) CHECK(Rational::from_double(x.to_double()) == x);
}

TEST_CASE("k-face tests on hand-built cones") {
  const auto plane = manual_sample({vec({1, 0}), vec({1, 1})});
  CHECK(rlah::is_k_face(plane, {0}));
  CHECK(rlah::is_k_face(plane, {1}));
  CHECK(rlah::count_faces(plane, 1) == 2);
  CHECK(rlah::count_faces(plane, 0) == 1);

  const auto flat = manual_sample({vec({1, 0, 0}), vec({2, 0, 0}), vec({0, 1, 0})});
  CHECK_FALSE(rlah::is_k_face(flat, {0, 1}));

  const auto full = manual_sample({vec({1, 0}), vec({-1, 0}), vec({0, 1}), vec({0, -1})});
  CHECK(rlah::classify_cone(full) == rlah::ConeShape::FullSpace);
  CHECK(rlah::count_faces(full, 1) == 0);
  CHECK(rlah::count_faces(full, 0) == 0);

  const auto half_plane = manual_sample({vec({1, 0}), vec({-1, 0}), vec({0, 1})});
  CHECK(rlah::classify_cone(half_plane) == rlah::ConeShape::ProperNonPointed);
  CHECK(rlah::count_faces(half_plane, 0) == 0);

  CHECK_THROWS_AS(rlah::count_faces(plane, 2), rlah::InvalidParameter);
  CHECK_THROWS_AS(rlah::is_k_face(plane, {0, 1}), rlah::InvalidParameter);
  CHECK_THROWS_AS(rlah::face_certificate(plane, {0, 0}), rlah::InvalidParameter);
}

TEST_CASE("random walk face counts") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto rng = rlah::trial_rng(seed, 0);
    long long rejects = 0;
    CHECK(rlah::count_faces(rlah::draw_generic_walk(2, 2, rng, rejects), 1) == 2);
    CHECK(rlah::count_faces(rlah::draw_generic_walk(3, 3, rng, rejects), 2) == 3);
  }
  std::mt19937_64 rng(5);
  CHECK_THROWS_AS(rlah::count_faces(rlah::draw_walk(2, 25, rng), 1), rlah::CapacityExceeded);
}

TEST_CASE("face certificates satisfy every constraint exactly") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto rng = rlah::trial_rng(seed, 1);
    long long rejects = 0;
    const auto s = rlah::draw_generic_walk(3, 6, rng, rejects);
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b) {
        const auto u = rlah::face_certificate(s, {a, b});
        if (!u) continue;
        for (int i = 0; i < 6; ++i) {
          const Rational v = rlah::dot(*u, s.partial_sums[static_cast<std::size_t>(i)]);
          if (i == a || i == b)
            CHECK(v.is_zero());
          else
            CHECK(v <= Rational(-1));
        }
      }
  }
}

TEST_CASE("expected face estimates") {
  const auto two = rlah::estimate_expected_faces(2, 2, 1, 200, 1);
  CHECK(two.mean == 2.0);
  CHECK(two.stderr_ == 0.0);
  CHECK_THROWS_AS(rlah::estimate_expected_faces(2, 4, 1, 0, 1), rlah::InvalidParameter);
  CHECK_THROWS_AS(rlah::estimate_expected_faces(2, 30, 1, 10, 1), rlah::CapacityExceeded);

  const auto a = rlah::estimate_expected_faces(2, 4, 1, 400, 42, 1);
  const auto b = rlah::estimate_expected_faces(2, 4, 1, 400, 42, 3);
  CHECK(a.mean == b.mean);
  CHECK(a.stderr_ == b.stderr_);
  const double exact = rlah::expected_face_count({2, 4, 1}).to_double();
  CHECK(std::abs(a.mean - exact) <= 3 * a.stderr_);

  const auto apex = rlah::estimate_expected_faces(3, 5, 0, 200, 7);
  CHECK(apex.pointed + apex.proper_non_pointed + apex.full_space == 200);
  CHECK(apex.proper_non_pointed == 0);
  CHECK(apex.mean == static_cast<double>(apex.pointed) / 200.0);
}

TEST_CASE("recovery instances") {
  const rlah::RationalMatrix G{vec({1, 0, 0, 0, 0}), vec({0, 1, 0, 0, 0})};
  const auto inst = rlah::make_recovery_instance(2, 5, {4, 2}, {Rational(1), Rational(3)}, G);
  CHECK(inst.jump_positions == std::vector<int>{2, 4});
  CHECK(inst.signal == vec({4, 4, 1, 1, 0}));
  CHECK_THROWS_AS(rlah::make_recovery_instance(2, 5, {2, 2}, {Rational(1), Rational(1)}, G), rlah::InvalidParameter);
  CHECK_THROWS_AS(rlah::make_recovery_instance(2, 5, {2}, {Rational(-1)}, G), rlah::InvalidParameter);

  const rlah::RationalMatrix singular{vec({1, 1, 0}), vec({2, 2, 0})};
  const auto bad = rlah::make_recovery_instance(2, 3, {1}, {Rational(1)}, singular);
  CHECK_THROWS_AS(rlah::is_unique_recovery(bad), rlah::DegenerateSample);
}

TEST_CASE("unique recovery") {
  std::mt19937_64 rng(3);
  long long rejects = 0;
  for (int i = 0; i < 5; ++i) CHECK(rlah::is_unique_recovery(rlah::draw_recovery_instance(4, 4, 2, rlah::AmplitudeRule::Unit, rng, rejects)));
  CHECK(rlah::estimate_recovery_probability(3, 3, 1, rlah::AmplitudeRule::Random, 50, 9).mean == 1.0);

  // amplitudes only select a point inside the same face
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto r = rlah::trial_rng(seed, 2);
    const auto inst = rlah::draw_recovery_instance(3, 6, 2, rlah::AmplitudeRule::Random, r, rejects);
    RationalVector scaled = inst.amplitudes;
    for (auto& a : scaled) a *= Rational(5, 2);
    const auto other = rlah::make_recovery_instance(3, 6, inst.jump_positions, scaled, inst.G);
    CHECK(rlah::is_unique_recovery(other) == rlah::is_unique_recovery(inst));
  }

  const auto p = rlah::estimate_recovery_probability(2, 3, 1, rlah::AmplitudeRule::Unit, 600, 11);
  CHECK(std::abs(p.mean - rlah::recovery_probability(2, 3, 1).to_double()) <= 3 * p.stderr_);
  // k = d boundary: the direct summation gives 0
  CHECK(rlah::estimate_recovery_probability(2, 8, 2, rlah::AmplitudeRule::Unit, 200, 11).mean == 0.0);
  CHECK_THROWS_AS(rlah::estimate_recovery_probability(2, 3, 3, rlah::AmplitudeRule::Unit, 10, 1), rlah::InvalidParameter);
}
