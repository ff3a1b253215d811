#include "blowup/nonlinearity.hpp"

#include <cmath>

#include "blowup/geometry.hpp"

namespace blowup {

double sin_minus_id_over_cube(double h) {
  const double h2 = h * h;
  if (h2 < 0.25) {
    // -1/6 + h^2/120 - h^4/5040 + ...
    double term = -1.0 / 6.0, sum = term;
    for (int k = 1; k < 12; ++k) {
      term *= -h2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
      sum += term;
    }
    return sum;
  }
  return (std::sin(h) - h) / (h2 * h);
}

double nonlinearity(double rho, double u) { return -12.0 * u * u * u * sin_minus_id_over_cube(2.0 * rho * u); }

double perturbation_nonlinearity(double rho, double x) {
  // With a = 2 rho psi*_1 and h = 2 rho x,
  // n = 3 (sin a/rho) (sin(rho x)/rho)^2 - 12 cos(a) x^3 (sin h - h)/h^3.
  const double psi = profile_similarity(rho).psi1;
  const double a = 2.0 * rho * psi;
  double sa_rho, s_rho;
  if (rho == 0.0) {
    sa_rho = 2.0 * psi;
    s_rho = x;
  } else {
    sa_rho = std::sin(a) / rho;
    s_rho = std::sin(rho * x) / rho;
  }
  return 3.0 * sa_rho * s_rho * s_rho - 12.0 * std::cos(a) * x * x * x * sin_minus_id_over_cube(2.0 * rho * x);
}

Eigen::VectorXd nonlinearity(const RadialGrid& g, const Eigen::VectorXd& u) {
  Eigen::VectorXd out(g.n);
  for (int i = 0; i < g.n; ++i) out(i) = nonlinearity(g.nodes(i), u(i));
  return out;
}

Eigen::VectorXd perturbation_nonlinearity(const RadialGrid& g, const Eigen::VectorXd& x) {
  Eigen::VectorXd out(g.n);
  for (int i = 0; i < g.n; ++i) out(i) = perturbation_nonlinearity(g.nodes(i), x(i));
  return out;
}

}  // namespace blowup
