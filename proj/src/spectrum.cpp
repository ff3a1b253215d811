#include "blowup/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "blowup/errors.hpp"
#include "blowup/geometry.hpp"
#include "blowup/norms.hpp"

namespace blowup {

StatePair OperatorMatrix::apply(const StatePair& u) const {
  if (u.grid->n != grid->n) throw Error(ErrorKind::Usage, "state and operator grids differ");
  const Eigen::VectorXcd s = u.stacked();
  Eigen::VectorXcd out(s.size());
  out.real() = entries * s.real();
  out.imag() = entries * s.imag();
  return StatePair::from_stacked(grid, out);
}

OperatorMatrix assemble_generator(const GridPtr& grid, bool include_potential) {
  const int n = grid->n;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd rd1 = grid->nodes.asDiagonal() * grid->d1;
  OperatorMatrix M;
  M.grid = grid;
  M.includes_potential = include_potential;
  M.entries = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  M.entries.topLeftCorner(n, n) = -rd1 - I;
  M.entries.topRightCorner(n, n) = I;
  M.entries.bottomLeftCorner(n, n) = grid->lap6;
  if (include_potential) {
    for (int i = 0; i < n; ++i) M.entries(n + i, i) += potential_value(grid->nodes(i));
  }
  M.entries.bottomRightCorner(n, n) = -rd1 - 2.0 * I;
  return M;
}

std::vector<EigenPair> eigenpairs(const OperatorMatrix& M) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(M.entries, true);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "dense eigensolver did not converge");
  const Eigen::MatrixXcd V = es.eigenvectors();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(V);
  const Eigen::MatrixXcd W = lu.inverse();
  std::vector<EigenPair> out;
  out.reserve(V.cols());
  for (int j = 0; j < V.cols(); ++j) out.push_back({es.eigenvalues()(j), V.col(j), W.row(j).transpose()});
  std::sort(out.begin(), out.end(), [](const EigenPair& a, const EigenPair& b) {
    if (a.lambda.real() != b.lambda.real()) return a.lambda.real() > b.lambda.real();
    return a.lambda.imag() > b.lambda.imag();
  });
  return out;
}

std::vector<cplx> SpectrumReport::persistent_eigenvalues() const {
  std::vector<cplx> out;
  for (size_t i = 0; i < eigenvalues.size(); ++i)
    if (persistent[i]) out.push_back(eigenvalues[i]);
  return out;
}

namespace {

double ode_residual_on(const RadialGrid& fine, const Eigen::MatrixXd& P, cplx lambda, const Eigen::VectorXcd& u1,
                       bool potential) {
  const Eigen::VectorXcd u = P.cast<cplx>() * u1;
  const Eigen::VectorXcd du = fine.d1.cast<cplx>() * u;
  const Eigen::VectorXcd ddu = fine.d2.cast<cplx>() * u;
  double res = 0.0, scale = 0.0;
  for (int i = 1; i < fine.n; ++i) {
    const double r = fine.nodes(i);
    const double V = potential ? -potential_value(r) : 0.0;
    const cplx t1 = -(1.0 - r * r) * ddu(i);
    const cplx t2 = (2.0 * (lambda + 2.0) * r - 5.0 / r) * du(i);
    const cplx t3 = ((lambda + 2.0) * (lambda + 1.0) + V) * u(i);
    res = std::max(res, std::abs(t1 + t2 + t3));
    scale = std::max({scale, std::abs(t1), std::abs(t2), std::abs(t3)});
  }
  return scale > 0.0 ? res / scale : 0.0;
}

}  // namespace

double spectral_ode_residual(const RadialGrid& g, cplx lambda, const Eigen::VectorXcd& u1, bool potential) {
  const GridPtr fine = build_grid(2 * g.n);
  return ode_residual_on(*fine, g.interp_matrix(fine->nodes), lambda, u1, potential);
}

double endpoint_singular_component(const RadialGrid& g, cplx lambda, const Eigen::VectorXcd& u1) {
  const int m = 48, deg = 8;
  const double h = 0.2;
  Eigen::VectorXd rho(m), x(m);
  for (int j = 0; j < m; ++j) {
    x(j) = 0.5 * h * (1.0 - std::cos(M_PI * (j + 0.5) / m));
    rho(j) = 1.0 - x(j);
  }
  const Eigen::VectorXcd u = g.interp_matrix(rho).cast<cplx>() * u1;
  const cplx sigma = 1.5 - lambda;
  const double nearest = std::round(sigma.real());
  const bool resonant = std::abs(sigma - cplx(nearest, 0.0)) < 0.05 && nearest >= 0.0;
  Eigen::MatrixXcd A(m, deg + 2);
  for (int j = 0; j < m; ++j) {
    const double y = x(j) / h;
    for (int k = 0; k <= deg; ++k) A(j, k) = std::pow(y, k);
    cplx s = std::pow(cplx(y, 0.0), sigma);
    if (resonant) s *= std::log(y);
    A(j, deg + 1) = s;
  }
  const Eigen::VectorXcd c = A.colPivHouseholderQr().solve(u);
  const double umax = u1.cwiseAbs().maxCoeff();
  return umax > 0.0 ? std::abs(c(deg + 1)) / umax : 0.0;
}

SpectrumReport filter_physical(const OperatorMatrix& coarse, const std::vector<EigenPair>& coarse_pairs,
                               const std::vector<EigenPair>& fine_pairs, const FilterOptions& opt) {
  const RadialGrid& g = *coarse.grid;
  const GridPtr fine = build_grid(2 * g.n);
  const Eigen::MatrixXd P = g.interp_matrix(fine->nodes);
  SpectrumReport rep;
  rep.n = g.n;
  for (const auto& cp : coarse_pairs) {
    if (std::abs(cp.lambda) > opt.max_modulus) continue;
    double dist = std::numeric_limits<double>::infinity();
    for (const auto& fp : fine_pairs) dist = std::min(dist, std::abs(fp.lambda - cp.lambda));
    const Eigen::VectorXcd u1 = cp.right.head(g.n);
    const double res = ode_residual_on(*fine, P, cp.lambda, u1, coarse.includes_potential);
    const double endc = endpoint_singular_component(g, cp.lambda, u1);
    rep.eigenvalues.push_back(cp.lambda);
    rep.match_distance.push_back(dist);
    rep.residuals.push_back(res);
    rep.endpoint_component.push_back(endc);
    rep.persistent.push_back(dist <= opt.match_tol && res <= opt.residual_tol && endc <= opt.endpoint_tol);
  }
  return rep;
}

namespace {

// Lower Cholesky factor L of the stacked H Gram matrix, |x|_H = |L^T x|.
Eigen::MatrixXd h_factor(const RadialGrid& g) {
  Eigen::LLT<Eigen::MatrixXd> llt(h_gram(g).stacked());
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "H Gram matrix is not positive definite");
  return llt.matrixL().toDenseMatrix();
}

}  // namespace

double jordan_residual(const OperatorMatrix& M, const StatePair& g) {
  // min_v |(1-M)v - g|_H / |g|_H in the H-orthonormal coordinates y = L^T x
  const auto N = M.entries.rows();
  const Eigen::MatrixXd L = h_factor(*M.grid);
  const Eigen::MatrixXd LT = L.transpose();
  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(N, N) - M.entries;
  const Eigen::MatrixXd B = LT * L.triangularView<Eigen::Lower>().solve(A.transpose()).transpose();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(B, Eigen::ComputeFullU);
  const Eigen::VectorXcd umin = svd.matrixU().col(N - 1).cast<cplx>();
  const Eigen::VectorXcd gy = LT.cast<cplx>() * g.stacked();
  return std::abs(umin.dot(gy)) / gy.norm();
}

ResolventSolver::ResolventSolver(OperatorMatrix M, double singular_tol) : M_(std::move(M)), tol_(singular_tol) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(M_.entries, false);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "dense eigensolver did not converge");
  eig_ = es.eigenvalues();
}

void ResolventSolver::check(cplx lambda) const {
  Eigen::Index k;
  const double d = (eig_.array() - lambda).abs().minCoeff(&k);
  if (d <= tol_) {
    std::ostringstream os;
    os << "lambda lies within " << d << " of the eigenvalue " << eig_(k);
    throw Error(ErrorKind::ResolventSingularity, os.str());
  }
}

StatePair ResolventSolver::solve(cplx lambda, const StatePair& F) const {
  check(lambda);
  const auto N = M_.entries.rows();
  const Eigen::MatrixXcd A = lambda * Eigen::MatrixXcd::Identity(N, N) - M_.entries.cast<cplx>();
  const Eigen::VectorXcd b = F.stacked();
  const Eigen::VectorXcd x = A.partialPivLu().solve(b);
  const double berr = (A * x - b).norm() / (A.norm() * x.norm() + b.norm());
  if (!(berr <= 1e-10)) throw Error(ErrorKind::ResolventSingularity, "resolvent solve lost accuracy");
  return StatePair::from_stacked(M_.grid, x);
}

double ResolventSolver::h_norm(cplx lambda) const {
  check(lambda);
  const Eigen::MatrixXcd L = h_factor(*M_.grid).cast<cplx>();
  const auto N = L.rows();
  const Eigen::MatrixXcd A = lambda * Eigen::MatrixXcd::Identity(N, N) - M_.entries.cast<cplx>();
  // X = L^T A^{-1} L^{-T}
  const Eigen::MatrixXcd LinvT = L.transpose().triangularView<Eigen::Upper>().solve(Eigen::MatrixXcd::Identity(N, N));
  const Eigen::MatrixXcd X = L.transpose() * A.partialPivLu().solve(LinvT);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(X);
  return svd.singularValues()(0);
}

StatePair resolvent_solve(const OperatorMatrix& M, cplx lambda, const StatePair& F) {
  return ResolventSolver(M).solve(lambda, F);
}

}  // namespace blowup
