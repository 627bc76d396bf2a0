#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cmath>
#include <stdexcept>

namespace eprb {

/// A direction in space. Construction normalizes; the stored vector always
/// has unit norm to within a few ulps.
template <typename Scalar>
class UnitVector {
 public:
  using Vector = Eigen::Matrix<Scalar, 3, 1>;

  UnitVector() : v_(Vector::UnitZ()) {}

  explicit UnitVector(const Vector& v) {
    const Scalar n = v.norm();
    if (!(n > Scalar(0)) || !std::isfinite(n)) {
      throw std::invalid_argument("UnitVector: zero or non-finite direction");
    }
    v_ = v / n;
  }

  UnitVector(Scalar x, Scalar y, Scalar z) : UnitVector(Vector(x, y, z)) {}

  /// Direction in the x-y plane at the given azimuth (radians from +x).
  static UnitVector in_plane(Scalar azimuth) {
    UnitVector u;
    u.v_ = Vector(std::cos(azimuth), std::sin(azimuth), Scalar(0));
    return u;
  }

  /// Trusted construction from components already on the unit sphere.
  static UnitVector from_unit(const Vector& v) {
    UnitVector u;
    u.v_ = v;
    return u;
  }

  const Vector& vector() const { return v_; }
  Scalar x() const { return v_.x(); }
  Scalar y() const { return v_.y(); }
  Scalar z() const { return v_.z(); }

  Scalar dot(const UnitVector& other) const { return v_.dot(other.v_); }

  UnitVector operator-() const { return from_unit(-v_); }

  friend bool operator==(const UnitVector& a, const UnitVector& b) { return a.v_ == b.v_; }

 private:
  Vector v_;
};

using UnitVector3 = UnitVector<double>;

/// Unsigned angle between two directions, in [0, pi].
template <typename Scalar>
Scalar angle_between(const UnitVector<Scalar>& a, const UnitVector<Scalar>& b) {
  // atan2 form stays accurate near 0 and pi where acos loses digits.
  const Scalar c = a.dot(b);
  const Scalar s = a.vector().cross(b.vector()).norm();
  return std::atan2(s, c);
}

}  // namespace eprb
