#ifndef CPPM_GRID_FUNCTION_HPP_
#define CPPM_GRID_FUNCTION_HPP_

#include <vector>

namespace cppm {

// Piecewise-linear function on the uniform grid {0, 1/M, ..., 1}.
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(std::vector<double> samples);

  static GridFunction Constant(double value, int grid_size);

  int grid_size() const { return static_cast<int>(samples_.size()) - 1; }
  double step() const { return 1.0 / grid_size(); }
  const std::vector<double>& samples() const { return samples_; }
  double front() const { return samples_.front(); }
  double back() const { return samples_.back(); }

  // Linear interpolation; x is clamped to [0, 1].
  double operator()(double x) const;

  // Exact integral of the interpolant from 0 to x, x clamped to [0, 1].
  double Primitive(double x) const;
  double Integral(double a, double b) const { return Primitive(b) - Primitive(a); }

  // sup{x in [0,1] : f(x) <= v}. Returns 0 when v < f(0).
  double UpperInverse(double v) const;

  bool IsNondecreasing() const;

 private:
  std::vector<double> samples_;
  std::vector<double> cumulative_;
};

}  // namespace cppm

#endif  // CPPM_GRID_FUNCTION_HPP_
