#include "blowup/grid.hpp"

#include <cmath>

#include "blowup/errors.hpp"

namespace blowup {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Configuration: return "configuration error";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Usage: return "usage error";
    case ErrorKind::OutsideCone: return "outside-cone error";
    case ErrorKind::EndpointLimit: return "endpoint-limit error";
    case ErrorKind::UndefinedRatio: return "undefined ratio";
    case ErrorKind::ReductionDomain: return "reduction-domain error";
    case ErrorKind::Instability: return "instability error";
    case ErrorKind::IterationFailure: return "iteration failure";
    case ErrorKind::ResolventSingularity: return "resolvent-singularity error";
    case ErrorKind::EigenvalueCollision: return "eigenvalue-collision error";
    case ErrorKind::Continuation: return "continuation error";
    case ErrorKind::Resonance: return "resonance error";
    case ErrorKind::NumericalFailure: return "numerical failure";
  }
  return "error";
}

void gauss_legendre(int m, double a, double b, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  x.resize(m);
  w.resize(m);
  // Legendre P_m(z) and P_{m-1}(z) by the three-term recurrence
  auto legendre = [m](double z, double& pm, double& pm1) {
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= m; ++k) {
      double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    pm = p1;
    pm1 = p0;
  };
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double pm = 0.0, pm1 = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre(z, pm, pm1);
      dp = m * (z * pm - pm1) / (z * z - 1.0);
      double dz = pm / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    legendre(z, pm, pm1);
    dp = m * (z * pm - pm1) / (z * z - 1.0);
    x(m - 1 - i) = 0.5 * (a + b) + 0.5 * (b - a) * z;
    w(m - 1 - i) = (b - a) / ((1.0 - z * z) * dp * dp);
  }
}

namespace {

// Barycentric Lagrange basis of the full grid at point t.
Eigen::VectorXd full_basis(const RadialGrid& g, double t) {
  const int m = static_cast<int>(g.full_nodes.size());
  Eigen::VectorXd l(m);
  for (int j = 0; j < m; ++j) {
    if (t == g.full_nodes(j)) {
      l.setZero();
      l(j) = 1.0;
      return l;
    }
  }
  double s = 0.0;
  for (int j = 0; j < m; ++j) {
    l(j) = g.full_bary(j) / (t - g.full_nodes(j));
    s += l(j);
  }
  return l / s;
}

Eigen::RowVectorXd fold_even(const RadialGrid& g, const Eigen::VectorXd& l) {
  const int n = g.n;
  Eigen::RowVectorXd r(n);
  r(0) = l(n - 1);
  for (int i = 1; i < n; ++i) r(i) = l(n - 1 - i) + l(n - 1 + i);
  return r;
}

Eigen::RowVectorXd fold_odd(const RadialGrid& g, const Eigen::VectorXd& l) {
  const int n = g.n;
  Eigen::RowVectorXd r(n);
  r(0) = 0.0;
  for (int i = 1; i < n; ++i) r(i) = l(n - 1 - i) - l(n - 1 + i);
  return r;
}

}  // namespace

const Eigen::VectorXd& RadialGrid::weight(int k) const {
  if (k < 0 || k > 7) throw Error(ErrorKind::Usage, "weight power must lie in [0,7]");
  return weights_by_power[k];
}

Eigen::MatrixXd RadialGrid::interp_matrix(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd M(x.size(), n);
  for (Eigen::Index k = 0; k < x.size(); ++k) M.row(k) = fold_even(*this, full_basis(*this, x(k)));
  return M;
}

Eigen::MatrixXd RadialGrid::interp_matrix_odd(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd M(x.size(), n);
  for (Eigen::Index k = 0; k < x.size(); ++k) M.row(k) = fold_odd(*this, full_basis(*this, x(k)));
  return M;
}

double RadialGrid::interpolate(const Eigen::VectorXd& f, double x) const {
  return fold_even(*this, full_basis(*this, x)).dot(f);
}

cplx RadialGrid::interpolate(const Eigen::VectorXcd& f, double x) const {
  Eigen::RowVectorXd r = fold_even(*this, full_basis(*this, x));
  return (r.cast<cplx>() * f)(0);
}

GridPtr build_grid(int n) {
  if (n < 8) throw Error(ErrorKind::Configuration, "grid needs n >= 8, got " + std::to_string(n));
  auto g = std::make_shared<RadialGrid>();
  g->n = n;
  const int m = 2 * n - 1;
  ParityOps<double> ops = parity_ops<double>(n);
  g->full_nodes = ops.full_nodes;
  g->full_bary.resize(m);
  for (int j = 0; j < m; ++j) {
    g->full_bary(j) = ((j % 2) ? -1.0 : 1.0) * ((j == 0 || j == m - 1) ? 0.5 : 1.0);
  }
  g->nodes = ops.nodes;
  g->d1 = ops.d1;
  g->d2 = ops.d2;
  g->d1_odd = ops.d1_odd;

  g->lap6 = g->d2;
  for (int i = 1; i < n; ++i) g->lap6.row(i) += (5.0 / g->nodes(i)) * g->d1.row(i);
  g->lap6.row(0) = 6.0 * g->d2.row(0);

  Eigen::VectorXd qx, qw;
  gauss_legendre(n + 8, 0.0, 1.0, qx, qw);
  Eigen::MatrixXd B = g->interp_matrix(qx);
  for (int k = 0; k < 8; ++k) {
    Eigen::VectorXd wk = qw;
    for (Eigen::Index q = 0; q < qx.size(); ++q) wk(q) *= std::pow(qx(q), k);
    g->weights_by_power[k] = B.transpose() * wk;
  }
  g->quad_weights = g->weights_by_power[0];

  gauss_legendre(2 * n + 4, 0.0, 1.0, g->gl_nodes, g->gl_weights);
  g->gl_eval0 = g->interp_matrix(g->gl_nodes);
  g->gl_eval1 = g->interp_matrix_odd(g->gl_nodes) * g->d1;
  g->gl_eval2 = g->gl_eval0 * g->d2;
  return g;
}

}  // namespace blowup
