#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "eprb/bell.hpp"

using namespace eprb;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

CorrelationQuartet singlet_quartet(double gamma) {
  auto e = [](double x, double y) { return -std::cos((x - y) * kDeg); };
  CorrelationQuartet q;
  q.e_ac = e(0, 45);
  q.e_ad = e(0, 135);
  q.e_bc = e(90, 45);
  q.e_bd = e(90, 135);
  q.gamma_ac = q.gamma_ad = q.gamma_bc = q.gamma_bd = gamma;
  return q;
}

}  // namespace

TEST_CASE("chsh_lhs") {
  CHECK(chsh_lhs(singlet_quartet(1.0)) == doctest::Approx(2 * std::numbers::sqrt2).epsilon(1e-14));
  CHECK(chsh_lhs(CorrelationQuartet{}) == 0.0);
  CorrelationQuartet extreme;
  extreme.e_ac = extreme.e_bc = extreme.e_bd = -1;
  extreme.e_ad = 1;
  CHECK(chsh_lhs(extreme) == 4.0);
}

TEST_CASE("modified_bound and gamma_threshold") {
  CHECK(modified_bound(1.0) == 2.0);
  CHECK(modified_bound(0.75) == 4.0);
  const double gamma0 = 3 - 3 / std::numbers::sqrt2;
  CHECK(std::abs(modified_bound(gamma0) - 2 * std::numbers::sqrt2) < 1e-12);
  CHECK_THROWS_AS(modified_bound(0.0), std::domain_error);
  CHECK_THROWS_AS(modified_bound(-0.5), std::domain_error);

  CHECK(gamma_threshold(2 * std::numbers::sqrt2) == doctest::Approx(0.878679656440357).epsilon(1e-14));
  CHECK(gamma_threshold(2.0) == 1.0);
  CHECK(gamma_threshold(4.0) == 0.75);
  CHECK_THROWS_AS(gamma_threshold(-4.0), std::domain_error);
}

TEST_CASE("modified_bound is strictly decreasing and inverted by gamma_threshold") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> g(1e-6, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = g(gen), b = g(gen);
    if (a < b) CHECK(modified_bound(a) > modified_bound(b));
    CHECK(std::abs(gamma_threshold(modified_bound(a)) - a) < 1e-12);
    CHECK(modified_bound(a) >= 2.0);
  }
}

TEST_CASE("chsh_lhs is invariant under global sign flip") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> e(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    CorrelationQuartet q;
    q.e_ac = e(gen), q.e_ad = e(gen), q.e_bc = e(gen), q.e_bd = e(gen);
    CorrelationQuartet neg = q;
    neg.e_ac = -q.e_ac, neg.e_ad = -q.e_ad, neg.e_bc = -q.e_bc, neg.e_bd = -q.e_bd;
    CHECK(chsh_lhs(q) == chsh_lhs(neg));
  }
}

TEST_CASE("verdict") {
  const auto low = verdict(singlet_quartet(0.02));
  CHECK(low.violates_chsh);
  CHECK(low.modified_bound == doctest::Approx(296.0));
  CHECK_FALSE(low.violates_modified);

  const auto high = verdict(singlet_quartet(0.9));
  CHECK(high.violates_chsh);
  CHECK(high.violates_modified);

  CorrelationQuartet zero;
  zero.gamma_ac = 0.3;
  const auto none = verdict(zero);
  CHECK_FALSE(none.violates_chsh);
  CHECK_FALSE(none.violates_modified);
  CHECK(none.gamma_min == 0.3);

  auto mixed = singlet_quartet(0.9);
  mixed.gamma_bd = 0.5;
  CHECK(verdict(mixed).gamma_min == 0.5);
  CHECK_FALSE(verdict(mixed).violates_modified);

  auto empty = singlet_quartet(0.5);
  empty.gamma_ad = 0.0;
  CHECK_THROWS_WITH_AS(verdict(empty), "empty post-selected ensemble", std::domain_error);

  auto with_errors = singlet_quartet(0.5);
  with_errors.e_stderr = {0.03, 0.04, 0.0, 0.0};
  CHECK(verdict(with_errors).chsh_lhs_stderr == doctest::Approx(0.05));

  auto bad = singlet_quartet(0.5);
  bad.e_ac = 1.5;
  CHECK_THROWS_AS(verdict(bad), std::invalid_argument);
}
