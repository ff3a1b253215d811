#pragma once

#include <functional>
#include <string>
#include <vector>

#include "blowup/evolution.hpp"

namespace blowup {

// Truncated backward cone {t0 <= t <= t1, |r - r0| <= t1 - t}.
struct TruncatedCone {
  double t0 = 0.0;
  double t1 = 0.5;
  double r0 = 2.0;
  double height() const { return t1 - t0; }
  // Throws Domain unless r0 - (t1 - t0) > 0.
  void validate() const;
};

struct ExteriorData {
  std::function<double(double)> f;   // u(t0, r)
  std::function<double(double)> fr;  // d_r u(t0, r)
  std::function<double(double)> g;   // d_t u(t0, r)
};

// u_*^T at time t0 as exterior data.
ExteriorData profile_exterior_data(double T, double t0 = 0.0);

struct ExteriorOptions {
  int levels = 128;  // time steps of the characteristic lattice
  double tol = 1e-13;
  int max_iter = 200;
  bool free = false;  // drop the source term
};

// Characteristic lattice: level k sits at t0 + k h with nodes
// r = r0 - L + k h + 2 j h, j = 0..levels-k, where h = L/levels.
struct ExteriorSolution {
  TruncatedCone cone;
  int levels = 0;
  double h = 0.0;
  std::vector<std::vector<double>> u;
  std::vector<std::vector<double>> ur;
  double picard_residual = 0.0;
  int iterations = 0;
  std::vector<double> residual_history;

  double t_at(int k) const { return cone.t0 + k * h; }
  double r_at(int k, int j) const { return cone.r0 - cone.height() + k * h + 2.0 * j * h; }
  // max |u - exact| over the lattice.
  double max_error(const std::function<double(double, double)>& exact) const;
};

// Picard iteration of the d'Alembert-Duhamel map on the characteristic lattice.
// Throws IterationFailure when the update grows over five consecutive sweeps.
ExteriorSolution duhamel_exterior(const ExteriorData& data, const TruncatedCone& cone, const ExteriorOptions& opt = {});

struct RichardsonReport {
  std::vector<int> levels;
  std::vector<double> errors;    // sup difference to the next finer lattice on shared points
  double observed_order = 0.0;
  double extrapolated_error = 0.0;  // vs exact, when supplied
  ExteriorSolution finest;
};

// Runs levels, 2 levels, 4 levels; the extrapolated values (4 u_{2K} - u_K)/3 at
// the coarse nodes are compared with exact if provided.
RichardsonReport exterior_richardson(const ExteriorData& data, const TruncatedCone& cone, int levels,
                                     const std::function<double(double, double)>& exact = {},
                                     const ExteriorOptions& opt = {});

struct OverlapReport {
  double max_discrepancy = 0.0;
  int points = 0;
  std::string method;
};

// Compares lattice values inside |r| <= T - t with the similarity trajectory,
// u = (psi*_1 + phi_1)(rho)/(T - t). Interpolation: barycentric in rho,
// linear in tau between stored stamps. Throws Usage on empty overlap.
OverlapReport overlap_compare(const ExteriorSolution& ext, const ConeTrajectory& traj);

}  // namespace blowup
