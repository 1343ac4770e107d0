#include "issprobe/kernels.hpp"
#include "issprobe/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

using namespace issprobe;

TEST(Kernels, SerialAndParallelMapsAgreeBitwise) {
  auto f = [](std::size_t i) { return std::sin(static_cast<double>(i)) * 1e3; };
  const auto a = map_indexed(1000, Exec::serial, f);
  const auto b = map_indexed(1000, Exec::parallel, f);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(Kernels, LowestIndexExceptionWins) {
  set_thread_count(4);
  try {
    run_indexed(100, Exec::parallel, [](std::size_t i) {
      if (i == 17 || i == 80) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "17");
  }
  set_thread_count(default_thread_count());
}

TEST(Kernels, ArgExtremeSkipsNanAndKeepsFirstTie) {
  const double nan = std::nan("");
  const auto mx = argmax({nan, 2.0, 5.0, 5.0, 1.0});
  EXPECT_EQ(mx.index, 2u);
  EXPECT_EQ(mx.value, 5.0);
  const auto mn = argmin({3.0, nan, 1.0, 1.0});
  EXPECT_EQ(mn.index, 2u);
  EXPECT_FALSE(argmax({nan, nan}).found());
}

TEST(Rng, DerivedStreamsAreReproducible) {
  Rng a(derive_seed(7, 1, 3)), b(derive_seed(7, 1, 3)), c(derive_seed(7, 1, 4));
  const double va = a.uniform();
  EXPECT_EQ(va, b.uniform());
  EXPECT_NE(va, c.uniform());
  Rng u(5);
  const Vec v = u.unit_vector(4);
  EXPECT_NEAR(v.norm(), 1.0, 1e-14);
}
