#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "eprb/model.hpp"

using namespace eprb;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle for the unconditional correlation: midpoint rule over
// (z, phi) of sign(a.s) sign(-b.s), with a = x-axis, b in the x-y plane.
double sphere_sign_correlation(double alpha, int n) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = -1.0 + (i + 0.5) * 2.0 / n;
    const double r = std::sqrt(1.0 - z * z);
    for (int j = 0; j < n; ++j) {
      const double phi = -kPi + (j + 0.5) * 2.0 * kPi / n;
      const double sx = r * std::cos(phi), sy = r * std::sin(phi);
      const double p1 = sx;
      const double p2 = -(std::cos(alpha) * sx + std::sin(alpha) * sy);
      sum += (p1 >= 0 ? 1.0 : -1.0) * (p2 >= 0 ? 1.0 : -1.0);
    }
  }
  return sum / (static_cast<double>(n) * n);
}

}  // namespace

TEST_CASE("unit vectors normalize on construction") {
  const UnitVector3 u(3.0, 4.0, 12.0);
  CHECK(std::abs(u.vector().squaredNorm() - 1.0) < 1e-12);
  CHECK_THROWS_AS(UnitVector3(0.0, 0.0, 0.0), std::invalid_argument);
  CHECK(angle_between(UnitVector3::in_plane(0.0), UnitVector3::in_plane(kPi / 3)) ==
        doctest::Approx(kPi / 3).epsilon(1e-14));
}

TEST_CASE("sample_direction is uniform on the sphere") {
  const int n = 1'000'000;
  double sum_z = 0.0, sum_z2 = 0.0;
  std::vector<double> phis;
  phis.reserve(n);
  for (int i = 0; i < n; ++i) {
    RandomStream rng(11, static_cast<std::uint64_t>(i));
    const auto s = sample_direction(rng);
    REQUIRE(std::abs(s.vector().squaredNorm() - 1.0) < 1e-12);
    sum_z += s.z();
    sum_z2 += s.z() * s.z();
    phis.push_back(std::atan2(s.y(), s.x()));
  }
  CHECK(std::abs(sum_z / n) < 0.003);
  CHECK(std::abs(sum_z2 / n - 1.0 / 3.0) < 0.002);

  // Kolmogorov-Smirnov distance of the azimuth against U[-pi, pi).
  std::sort(phis.begin(), phis.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cdf = (phis[i] + kPi) / (2 * kPi);
    ks = std::max({ks, std::abs(cdf - static_cast<double>(i) / n),
                   std::abs(cdf - static_cast<double>(i + 1) / n)});
  }
  CHECK(ks < 0.002);
}

TEST_CASE("outcome is the sign of the projection") {
  const UnitVector3 s(0.3, -0.4, 0.8);
  CHECK(outcome(s, s) == 1);
  CHECK(outcome(s, -s) == -1);
  CHECK(outcome(UnitVector3(1, 0, 0), UnitVector3(0, 1, 0)) == 1);  // tie
}

TEST_CASE("outcome correlation over the sphere follows the triangle law") {
  const UnitVector3 a = UnitVector3::in_plane(0.0);
  for (double alpha : {kPi / 6, kPi / 3, kPi / 2, 2 * kPi / 3}) {
    const double oracle = sphere_sign_correlation(alpha, 600);
    CHECK(oracle == doctest::Approx(-(1 - 2 * alpha / kPi)).epsilon(0.01));

    const UnitVector3 b = UnitVector3::in_plane(alpha);
    const int n = 1'000'000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      RandomStream rng(5, static_cast<std::uint64_t>(i));
      const auto s = sample_direction(rng);
      sum += outcome(a, s) * outcome(b, -s);
    }
    CHECK(std::abs(sum / n - oracle) < 0.003);
  }
}

TEST_CASE("delay_scale") {
  ModelParams p;
  const UnitVector3 x(1, 0, 0);
  CHECK(delay_scale(x, UnitVector3(0, 1, 0), p) == 1.0);
  CHECK(delay_scale(x, x, p) == 0.0);

  // setting . s = 0.5; compare with a long double evaluation of sqrt(1-x^2)^3.
  const UnitVector3 s = UnitVector3::in_plane(kPi / 3);
  const long double root = std::sqrt(1.0L - 0.25L);
  const double oracle = static_cast<double>(root * root * root);
  CHECK(std::abs(delay_scale(x, s, p) - oracle) < 1e-15);
  CHECK(oracle == doctest::Approx(0.649519052838329));

  ModelParams p2 = p;
  p2.d_exponent = 2.0;
  CHECK(delay_scale(x, s, p2) == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("delay_scale is even in the setting and in the hidden direction") {
  ModelParams p;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    RandomStream rng(3, i);
    const auto a = sample_direction(rng);
    const auto s = sample_direction(rng);
    const double t = delay_scale(a, s, p);
    CHECK(delay_scale(-a, s, p) == doctest::Approx(t).epsilon(1e-12));
    CHECK(delay_scale(a, -s, p) == doctest::Approx(t).epsilon(1e-12));
    CHECK(t >= 0.0);
    CHECK(t <= 1.0);
  }
}

TEST_CASE("sample_time_tag") {
  ModelParams p;
  RandomStream rng(9, 0);
  CHECK(sample_time_tag(rng, 0.0, p) == 0.0);

  const int n = 1'000'000;
  double sum = 0.0, lo = 1.0, hi = 0.0;
  for (int i = 0; i < n; ++i) sum += sample_time_tag(rng, 1.0, p);
  CHECK(std::abs(sum / n - 0.5) < 0.002);
  for (int i = 0; i < n; ++i) {
    const double t = sample_time_tag(rng, 0.4, p);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 0.4);
}

TEST_CASE("generate_pair: perfect (anti)correlation at equal and opposite settings") {
  ModelParams p;
  const UnitVector3 a(0.2, 0.5, -0.3);
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const auto same = generate_event(1, i, a, a, p);
    CHECK(same.x1 * same.x2 == -1);
    const auto opposite = generate_event(1, i, a, -a, p);
    CHECK(opposite.x1 * opposite.x2 == 1);
  }
}

TEST_CASE("generate_pair: uncorrelated at orthogonal settings without post-selection") {
  ModelParams p;
  const auto a1 = UnitVector3::in_plane(0.0);
  const auto a2 = UnitVector3::in_plane(kPi / 2);
  const std::uint64_t n = 1'000'000;
  double sum = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto e = generate_event(2, i, a1, a2, p);
    sum += e.x1 * e.x2;
  }
  CHECK(std::abs(sum / n) < 0.003);
}

TEST_CASE("locality audit: a station's outcome and tag ignore the remote setting") {
  ModelParams p;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    RandomStream rng(77, i);
    const auto a1 = sample_direction(rng);
    const auto a2 = sample_direction(rng);
    const auto a2_alt = sample_direction(rng);
    const auto base = generate_event(123, i, a1, a2, p);
    const auto alt2 = generate_event(123, i, a1, a2_alt, p);
    REQUIRE(base.x1 == alt2.x1);
    REQUIRE(base.t1 == alt2.t1);
    const auto alt1 = generate_event(123, i, a2_alt, a2, p);
    REQUIRE(base.x2 == alt1.x2);
    REQUIRE(base.t2 == alt1.t2);
  }
}

TEST_CASE("tags never exceed their delay scale") {
  ModelParams p;
  const auto a1 = UnitVector3::in_plane(0.0);
  const auto a2 = UnitVector3::in_plane(1.0);
  for (std::uint64_t i = 0; i < 100000; ++i) {
    const auto e = generate_event(4, i, a1, a2, p);
    REQUIRE(e.t1 >= 0.0);
    REQUIRE(e.t2 >= 0.0);
    REQUIRE(e.t1 <= delay_scale(a1, e.s, p));
    REQUIRE(e.t2 <= delay_scale(a2, -e.s, p));
  }
}

TEST_CASE("ModelParams validation") {
  ModelParams p;
  CHECK_NOTHROW(p.validate());
  p.tau = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.window = 1.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.d_exponent = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
