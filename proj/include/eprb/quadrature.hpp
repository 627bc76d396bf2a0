#pragma once

// Adaptive 7/15-point Gauss-Kronrod integration with caller-supplied
// breakpoints. Subdivision is plain recursive bisection, so the evaluation
// order and therefore the rounded result are fixed for a given input.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace eprb::quad {

template <typename Scalar>
struct Estimate {
  Scalar value{};
  Scalar error{};
};

template <typename Scalar>
struct Kronrod15 {
  // Abscissae of the 15-point Kronrod rule on [-1, 1] (non-negative half);
  // odd indices are the 7-point Gauss nodes.
  static constexpr std::array<long double, 8> nodes{
      0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
      0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
      0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
      0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
  static constexpr std::array<long double, 8> kronrod_weights{
      0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
      0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
      0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
      0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
  static constexpr std::array<long double, 4> gauss_weights{
      0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
      0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

  template <typename F>
  static Estimate<Scalar> apply(F&& f, Scalar a, Scalar b) {
    const Scalar center = (a + b) / 2;
    const Scalar half = (b - a) / 2;
    const Scalar f_center = f(center);
    Scalar kronrod = Scalar(kronrod_weights[7]) * f_center;
    Scalar gauss = Scalar(gauss_weights[3]) * f_center;
    for (int i = 0; i < 7; ++i) {
      const Scalar dx = half * Scalar(nodes[i]);
      const Scalar pair = f(center - dx) + f(center + dx);
      kronrod += Scalar(kronrod_weights[i]) * pair;
      if (i % 2 == 1) gauss += Scalar(gauss_weights[i / 2]) * pair;
    }
    return {kronrod * half, std::abs((kronrod - gauss) * half)};
  }
};

template <typename Scalar>
struct Tolerance {
  Scalar relative = Scalar(1e-10);
  Scalar absolute = Scalar(0);
  int max_depth = 30;
};

namespace detail {

template <typename Scalar, typename F>
Estimate<Scalar> refine(F& f, Scalar a, Scalar b, Estimate<Scalar> coarse, Scalar budget_per_unit,
                        int depth) {
  const Scalar allowed = budget_per_unit * (b - a);
  if (coarse.error <= allowed || depth <= 0 ||
      coarse.error <= std::numeric_limits<Scalar>::epsilon() * std::abs(coarse.value)) {
    return coarse;
  }
  const Scalar mid = (a + b) / 2;
  if (!(mid > a && mid < b)) return coarse;
  const auto left = Kronrod15<Scalar>::apply(f, a, mid);
  const auto right = Kronrod15<Scalar>::apply(f, mid, b);
  const auto l = refine(f, a, mid, left, budget_per_unit, depth - 1);
  const auto r = refine(f, mid, b, right, budget_per_unit, depth - 1);
  return {l.value + r.value, l.error + r.error};
}

}  // namespace detail

/// Integrates f over [breaks.front(), breaks.back()], treating every
/// interior breakpoint as a possible kink. Breakpoints must be sorted.
template <typename Scalar, typename F>
Estimate<Scalar> integrate(F&& f, const std::vector<Scalar>& breaks,
                           const Tolerance<Scalar>& tol = {}) {
  if (breaks.size() < 2) throw std::invalid_argument("integrate: need at least two breakpoints");
  if (!std::is_sorted(breaks.begin(), breaks.end())) {
    throw std::invalid_argument("integrate: breakpoints must be sorted");
  }
  // A first pass sizes the absolute error budget from the relative target.
  std::vector<Estimate<Scalar>> pieces;
  Scalar total{};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] <= breaks[i]) {
      pieces.push_back({});
      continue;
    }
    pieces.push_back(Kronrod15<Scalar>::apply(f, breaks[i], breaks[i + 1]));
    total += pieces.back().value;
  }
  const Scalar length = breaks.back() - breaks.front();
  const Scalar budget = std::max({tol.absolute, tol.relative * std::abs(total),
                                  std::numeric_limits<Scalar>::min()});
  if (!(length > 0)) return {};
  const Scalar per_unit = budget / length;

  Estimate<Scalar> result{};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] <= breaks[i]) continue;
    const auto piece = detail::refine(f, breaks[i], breaks[i + 1], pieces[i], per_unit, tol.max_depth);
    result.value += piece.value;
    result.error += piece.error;
  }
  return result;
}

template <typename Scalar, typename F>
Estimate<Scalar> integrate(F&& f, Scalar a, Scalar b, const Tolerance<Scalar>& tol = {}) {
  return integrate<Scalar>(std::forward<F>(f), std::vector<Scalar>{a, b}, tol);
}

}  // namespace eprb::quad
