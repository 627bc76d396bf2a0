#pragma once

// Event-based local realist model of an EPR-Bohm pair with time tags.
//
// Each event draws a hidden direction s uniformly on the sphere. Station 1
// sees s, station 2 sees -s. A station with setting a reports sign(a.s) and a
// time tag uniform on [0, T), where T = (1 - (a.s)^2)^(d/2) in units of the
// maximal delay. Nothing computed for one station reads the other's setting.

#include <cstdint>

#include "eprb/random_stream.hpp"
#include "eprb/unit_vector.hpp"

namespace eprb {

enum class CoincidenceMode {
  /// Tags coincide when they fall in the same resolution bin floor(t / tau).
  SameBin,
  /// Tags coincide when |t1 - t2| <= window.
  Continuous,
};

struct ModelParams {
  double tau = 0.00025;
  double window = 0.00025;
  double t_max = 1.0;
  double d_exponent = 3.0;
  CoincidenceMode coincidence_mode = CoincidenceMode::SameBin;

  /// Throws std::invalid_argument if any field is out of range.
  void validate() const;
};

struct EventPair {
  int x1 = 1;
  int x2 = 1;
  double t1 = 0.0;
  double t2 = 0.0;
  UnitVector3 s;
};

UnitVector3 sample_direction(RandomStream& rng);

/// sign(setting . s), with the measure-zero tie resolved to +1.
int outcome(const UnitVector3& setting, const UnitVector3& s);

/// Maximal delay for this station: t_max * (1 - (setting . s)^2)^(d/2).
double delay_scale(const UnitVector3& setting, const UnitVector3& s, const ModelParams& params);

/// Tag uniform on [0, delay). A zero delay yields tag 0.
double sample_time_tag(RandomStream& rng, double delay, const ModelParams& params);

/// Draws one event. The random stream is consumed in a fixed order
/// (direction, station 1 tag, station 2 tag), independent of the settings.
EventPair generate_pair(RandomStream& rng, const UnitVector3& a1, const UnitVector3& a2,
                        const ModelParams& params);

/// Event `index` of the run keyed by `seed`; equivalent to generate_pair on
/// RandomStream(seed, index).
EventPair generate_event(std::uint64_t seed, std::uint64_t index, const UnitVector3& a1,
                         const UnitVector3& a2, const ModelParams& params);

}  // namespace eprb
