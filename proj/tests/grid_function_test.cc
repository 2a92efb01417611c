#include "cppm/grid_function.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace cppm {
namespace {

GridFunction Ramp(int m) {
  std::vector<double> s(m + 1);
  for (int i = 0; i <= m; ++i) s[i] = 1.0 + 2.0 * i / m;  // 1 + 2x
  return GridFunction(s);
}

TEST(GridFunctionTest, InterpolatesLinearly) {
  const GridFunction f = Ramp(4);
  EXPECT_DOUBLE_EQ(f(0.0), 1.0);
  EXPECT_DOUBLE_EQ(f(1.0), 3.0);
  EXPECT_DOUBLE_EQ(f(0.3), 1.6);
  EXPECT_DOUBLE_EQ(f(-1.0), 1.0);
  EXPECT_DOUBLE_EQ(f(2.0), 3.0);
}

TEST(GridFunctionTest, IntegralIsExactForPiecewiseLinear) {
  const GridFunction f = Ramp(7);
  // int_a^b (1 + 2x) dx = (b - a) + b^2 - a^2
  for (auto [a, b] : {std::pair{0.0, 1.0}, {0.13, 0.77}, {0.5, 0.5}, {0.9, 0.2}}) {
    EXPECT_NEAR(f.Integral(a, b), (b - a) + b * b - a * a, 1e-14);
  }
  const GridFunction kink(std::vector<double>{0.0, 1.0, 1.0});
  EXPECT_NEAR(kink.Primitive(0.25), 0.0625, 1e-15);
  EXPECT_NEAR(kink.Primitive(1.0), 0.75, 1e-15);
}

TEST(GridFunctionTest, UpperInverseIsSupremum) {
  const GridFunction f(std::vector<double>{1.0, 1.0, 1.0, 2.0, 4.0});
  EXPECT_DOUBLE_EQ(f.UpperInverse(1.0), 0.5);  // end of the plateau
  EXPECT_DOUBLE_EQ(f.UpperInverse(0.5), 0.0);
  EXPECT_DOUBLE_EQ(f.UpperInverse(3.0), 0.875);
  EXPECT_DOUBLE_EQ(f.UpperInverse(4.0), 1.0);
  EXPECT_DOUBLE_EQ(f.UpperInverse(10.0), 1.0);
}

TEST(GridFunctionTest, InverseAgreesWithDenseScan) {
  const int m = 50;
  std::vector<double> s(m + 1);
  for (int i = 0; i <= m; ++i) s[i] = std::exp(3.0 * i / m) + (i > 20 && i < 30 ? 0.0 : 0.0);
  const GridFunction f(s);
  for (double v : {1.0, 1.5, 4.0, 10.0, 19.0}) {
    double best = 0.0;
    for (int j = 0; j <= 200000; ++j) {
      const double x = j / 200000.0;
      if (f(x) <= v) best = x;
    }
    EXPECT_NEAR(f.UpperInverse(v), best, 1e-5) << "v=" << v;
  }
}

TEST(GridFunctionTest, RejectsTooFewSamples) {
  EXPECT_THROW(GridFunction(std::vector<double>{1.0}), std::invalid_argument);
}

}  // namespace
}  // namespace cppm
