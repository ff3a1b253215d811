#pragma once

#include <Eigen/Dense>
#include <vector>

#include "blowup/grid.hpp"
#include "blowup/state.hpp"

namespace blowup {

// Collocation matrix of the generator acting on stacked samples (phi1, phi2).
// Real entries; applied to complex states componentwise.
struct OperatorMatrix {
  GridPtr grid;
  Eigen::MatrixXd entries;
  bool includes_potential = true;

  StatePair apply(const StatePair& u) const;
};

OperatorMatrix assemble_generator(const GridPtr& grid, bool include_potential);

struct EigenPair {
  cplx lambda;
  Eigen::VectorXcd right;
  // Row of V^{-1}: left^T right_j = delta_ij (bilinear).
  Eigen::VectorXcd left;
};

// Sorted by decreasing real part. Throws NumericalFailure if the solver fails.
std::vector<EigenPair> eigenpairs(const OperatorMatrix& M);

struct FilterOptions {
  double match_tol = 1e-4;
  double residual_tol = 1e-5;
  double endpoint_tol = 1e-4;
  // Eigenvalues with |lambda| above this are never considered.
  double max_modulus = 50.0;
};

struct SpectrumReport {
  int n = 0;
  std::vector<cplx> eigenvalues;
  std::vector<double> residuals;
  std::vector<double> match_distance;
  std::vector<double> endpoint_component;
  std::vector<bool> persistent;

  std::vector<cplx> persistent_eigenvalues() const;
};

// Relative residual of the first component in the homogeneous spectral ODE,
// evaluated after interpolation onto a grid with twice the nodes.
double spectral_ode_residual(const RadialGrid& g, cplx lambda, const Eigen::VectorXcd& u1, bool potential);

// Size of a (1-rho)^(3/2-lambda) component in u1 relative to max|u1|, from a
// least-squares fit on rho in [0.8, 1] against a polynomial plus that power.
double endpoint_singular_component(const RadialGrid& g, cplx lambda, const Eigen::VectorXcd& u1);

SpectrumReport filter_physical(const OperatorMatrix& coarse, const std::vector<EigenPair>& coarse_pairs,
                               const std::vector<EigenPair>& fine_pairs, const FilterOptions& opt = {});

// Least-squares residual of (1 - M) v = g relative to |g|, from the
// smallest left singular vector of 1 - M.
double jordan_residual(const OperatorMatrix& M, const StatePair& g);

class ResolventSolver {
 public:
  explicit ResolventSolver(OperatorMatrix M, double singular_tol = 1e-6);
  // Solves (lambda - M) u = F. Throws ResolventSingularity within singular_tol
  // of an eigenvalue of M, or when the backward error exceeds 1e-10.
  StatePair solve(cplx lambda, const StatePair& F) const;
  // Operator norm of (lambda - M)^{-1} in the discrete H norm.
  double h_norm(cplx lambda) const;
  const OperatorMatrix& matrix() const { return M_; }
  const Eigen::VectorXcd& eigenvalues() const { return eig_; }

 private:
  void check(cplx lambda) const;
  OperatorMatrix M_;
  Eigen::VectorXcd eig_;
  double tol_;
};

// Convenience wrapper building a ResolventSolver on the spot.
StatePair resolvent_solve(const OperatorMatrix& M, cplx lambda, const StatePair& F);

}  // namespace blowup
