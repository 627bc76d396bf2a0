#include "eprb/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eprb {

void ModelParams::validate() const {
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw std::invalid_argument("tau must lie in (0, 1], got " + std::to_string(tau));
  }
  if (!(window >= 0.0 && window <= 1.0)) {
    throw std::invalid_argument("window must lie in [0, 1], got " + std::to_string(window));
  }
  if (!(d_exponent > 0.0) || !std::isfinite(d_exponent)) {
    throw std::invalid_argument("d_exponent must be positive, got " + std::to_string(d_exponent));
  }
  if (t_max != 1.0) {
    throw std::invalid_argument("t_max is the unit of time and must equal 1");
  }
}

UnitVector3 sample_direction(RandomStream& rng) {
  // Uniform z and azimuth give the uniform measure sin(theta) dtheta dphi.
  const double z = 2.0 * rng.uniform() - 1.0;
  const double phi = 2.0 * std::numbers::pi * rng.uniform() - std::numbers::pi;
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return UnitVector3::from_unit({r * std::cos(phi), r * std::sin(phi), z});
}

int outcome(const UnitVector3& setting, const UnitVector3& s) {
  return setting.dot(s) >= 0.0 ? 1 : -1;
}

double delay_scale(const UnitVector3& setting, const UnitVector3& s, const ModelParams& params) {
  const double c = setting.dot(s);
  const double base = std::max(0.0, 1.0 - c * c);
  if (params.d_exponent == 3.0) return params.t_max * base * std::sqrt(base);
  return params.t_max * std::pow(base, 0.5 * params.d_exponent);
}

double sample_time_tag(RandomStream& rng, double delay, const ModelParams& /*params*/) {
  // Always consume the draw so the stream layout does not depend on delay.
  const double u = rng.uniform();
  return delay > 0.0 ? u * delay : 0.0;
}

EventPair generate_pair(RandomStream& rng, const UnitVector3& a1, const UnitVector3& a2,
                        const ModelParams& params) {
  EventPair e;
  e.s = sample_direction(rng);
  const UnitVector3 s2 = -e.s;
  e.x1 = outcome(a1, e.s);
  e.x2 = outcome(a2, s2);
  e.t1 = sample_time_tag(rng, delay_scale(a1, e.s, params), params);
  e.t2 = sample_time_tag(rng, delay_scale(a2, s2, params), params);
  return e;
}

EventPair generate_event(std::uint64_t seed, std::uint64_t index, const UnitVector3& a1,
                         const UnitVector3& a2, const ModelParams& params) {
  RandomStream rng(seed, index);
  return generate_pair(rng, a1, a2, params);
}

}  // namespace eprb
