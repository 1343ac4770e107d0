#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <string>

namespace issprobe {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Single site for the state metric. Everything in the library measures
// distances through these two functions.
inline double norm(const Vec& v) { return v.norm(); }
inline double distance(const Vec& a, const Vec& b) { return (a - b).norm(); }

// Joint distance of (x, u) and (y, w) used by Hölder checks on rewards.
inline double joint_distance(const Vec& x, const Vec& u, const Vec& y, const Vec& w) {
  return std::sqrt((x - y).squaredNorm() + (u - w).squaredNorm());
}

// s^p with the class-K convention 0^p = 0 for every p >= 0.
inline double gain_pow(double s, double p) { return s <= 0.0 ? 0.0 : std::pow(s, p); }

/// Axis-aligned box [lo, hi] in R^d.
struct Box {
  Vec lo;
  Vec hi;

  Box() = default;
  Box(Vec lo_, Vec hi_);
  static Box cube(int dim, double lo, double hi);

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Vec& x) const;
  Vec center() const { return 0.5 * (lo + hi); }
  /// Half-diagonal length: every point of the box is within radius() of center().
  double radius() const { return 0.5 * (hi - lo).norm(); }
  Vec clamp(const Vec& x) const { return x.cwiseMax(lo).cwiseMin(hi); }
  /// Box with the same center and side lengths scaled by `factor`.
  Box shrunk(double factor) const;
};

/// Shortest text that parses back to the same double.
std::string format_double(double v);
std::string format_vec(const Vec& v);

}  // namespace issprobe
