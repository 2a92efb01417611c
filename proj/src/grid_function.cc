#include "cppm/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cppm {

GridFunction::GridFunction(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 2) throw std::invalid_argument("grid function needs at least 2 samples");
  const double h = step();
  cumulative_.resize(samples_.size());
  cumulative_[0] = 0.0;
  for (size_t i = 1; i < samples_.size(); ++i) {
    cumulative_[i] = cumulative_[i - 1] + 0.5 * h * (samples_[i - 1] + samples_[i]);
  }
}

GridFunction GridFunction::Constant(double value, int grid_size) {
  return GridFunction(std::vector<double>(grid_size + 1, value));
}

double GridFunction::operator()(double x) const {
  const int m = grid_size();
  if (x <= 0.0) return samples_.front();
  if (x >= 1.0) return samples_.back();
  const double s = x * m;
  int i = std::min(static_cast<int>(s), m - 1);
  const double t = s - i;
  return samples_[i] + t * (samples_[i + 1] - samples_[i]);
}

double GridFunction::Primitive(double x) const {
  const int m = grid_size();
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return cumulative_.back();
  const double s = x * m;
  int i = std::min(static_cast<int>(s), m - 1);
  const double d = x - static_cast<double>(i) / m;
  const double t = s - i;
  const double fx = samples_[i] + t * (samples_[i + 1] - samples_[i]);
  return cumulative_[i] + 0.5 * d * (samples_[i] + fx);
}

double GridFunction::UpperInverse(double v) const {
  if (v < samples_.front()) return 0.0;
  if (v >= samples_.back()) return 1.0;
  // last index with sample <= v
  auto it = std::upper_bound(samples_.begin(), samples_.end(), v);
  int i = static_cast<int>(it - samples_.begin()) - 1;
  const double lo = samples_[i], hi = samples_[i + 1];
  const double t = hi > lo ? (v - lo) / (hi - lo) : 0.0;
  return (i + t) / grid_size();
}

bool GridFunction::IsNondecreasing() const {
  return std::is_sorted(samples_.begin(), samples_.end());
}

}  // namespace cppm
