#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace issprobe {

/// Execution mode for batch kernels. `serial` is the reference loop kept for
/// testing; `parallel` runs the same body under OpenMP. Both produce
/// bitwise-identical results because every index writes only its own slot
/// and reductions happen afterwards in index order.
enum class Exec { serial, parallel };

/// Runs body(i) for i in [0, n). Exceptions thrown by any index are
/// collected and the one from the lowest index is rethrown after the loop.
void run_indexed(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body);

struct ArgExtreme {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t index = static_cast<std::size_t>(-1);
  bool found() const { return index != static_cast<std::size_t>(-1); }
};

/// Index-ordered max over finite entries (NaN entries are skipped); ties keep
/// the lowest index.
ArgExtreme argmax(const std::vector<double>& values);
ArgExtreme argmin(const std::vector<double>& values);

/// Evaluates f at every index with the requested execution mode and returns
/// the vector of results.
std::vector<double> map_indexed(std::size_t n, Exec exec, const std::function<double(std::size_t)>& f);

int default_thread_count();
void set_thread_count(int threads);

}  // namespace issprobe
