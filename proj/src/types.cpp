#include "issprobe/types.hpp"

#include "issprobe/errors.hpp"

#include <charconv>

namespace issprobe {

Box::Box(Vec lo_, Vec hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo.size() != hi.size()) throw InvalidParameter("box bounds have different dimensions");
  if (lo.size() == 0) throw InvalidParameter("box must have positive dimension");
  for (int i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i])) throw InvalidParameter("box is degenerate in coordinate " + std::to_string(i));
  }
}

Box Box::cube(int dim, double lo, double hi) {
  return Box(Vec::Constant(dim, lo), Vec::Constant(dim, hi));
}

bool Box::contains(const Vec& x) const {
  if (x.size() != lo.size()) return false;
  for (int i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lo[i] && x[i] <= hi[i])) return false;
  }
  return true;
}

Box Box::shrunk(double factor) const {
  const Vec c = center();
  const Vec half = 0.5 * factor * (hi - lo);
  return Box(c - half, c + half);
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_vec(const Vec& v) {
  std::string s;
  for (int i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_double(v[i]);
  }
  return s;
}

}  // namespace issprobe
