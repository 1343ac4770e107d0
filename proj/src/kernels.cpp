#include "issprobe/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <exception>

namespace issprobe {

void run_indexed(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body) {
  if (exec == Exec::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<double> map_indexed(std::size_t n, Exec exec, const std::function<double(std::size_t)>& f) {
  std::vector<double> out(n);
  run_indexed(n, exec, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

ArgExtreme argmax(const std::vector<double>& values) {
  ArgExtreme best;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i])) continue;
    if (!best.found() || values[i] > best.value) {
      best.value = values[i];
      best.index = i;
    }
  }
  return best;
}

ArgExtreme argmin(const std::vector<double>& values) {
  ArgExtreme best;
  best.value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i])) continue;
    if (!best.found() || values[i] < best.value) {
      best.value = values[i];
      best.index = i;
    }
  }
  return best;
}

int default_thread_count() {
  if (const char* env = std::getenv("ISSPROBE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

void set_thread_count(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

}  // namespace issprobe
