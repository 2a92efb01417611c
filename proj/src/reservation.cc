#include <cmath>
#include <stdexcept>
#include <vector>

#include "cppm/pricing.hpp"

namespace cppm {

std::vector<int> EvenSplit(int k, int parts) {
  if (parts < 1 || k < 0) throw std::invalid_argument("EvenSplit needs parts >= 1 and k >= 0");
  std::vector<int> q(parts, k / parts);
  const int extra = k % parts;
  for (int i = parts - extra; i < parts; ++i) ++q[i];
  return q;
}

std::vector<int> CeilFirstSplit(int k, int parts, double alpha) {
  if (parts < 2) throw std::invalid_argument("CeilFirstSplit needs at least 2 levels");
  const int q1 = static_cast<int>(std::ceil(k / alpha));
  if (q1 > k) return {};
  std::vector<int> q{q1};
  for (int x : EvenSplit(k - q1, parts - 1)) q.push_back(x);
  return q;
}

}  // namespace cppm
