#pragma once
// Small sampling utilities shared by the test files.

#include <functional>
#include <random>
#include <vector>

#include "blowup/grid.hpp"
#include "blowup/state.hpp"

namespace testing_helpers {

inline Eigen::VectorXcd sample(const blowup::RadialGrid& g, const std::function<double(double)>& f) {
  Eigen::VectorXcd v(g.n);
  for (int i = 0; i < g.n; ++i) v(i) = f(g.nodes(i));
  return v;
}

inline blowup::StatePair sample_state(const blowup::GridPtr& g, const std::function<double(double)>& f1,
                                      const std::function<double(double)>& f2) {
  return blowup::StatePair(g, sample(*g, f1), sample(*g, f2));
}

// Even polynomial sum_k c_k rho^(2k) with coefficients uniform in [-1,1].
inline std::function<double(double)> random_even_poly(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(degree / 2 + 1);
  for (auto& x : c) x = u(rng);
  return [c](double r) {
    double s = 0.0, p = 1.0;
    for (double a : c) {
      s += a * p;
      p *= r * r;
    }
    return s;
  };
}

}  // namespace testing_helpers
