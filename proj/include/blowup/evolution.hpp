#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blowup/geometry.hpp"
#include "blowup/spectrum.hpp"
#include "blowup/state.hpp"

namespace blowup {

enum class EvolutionMode { nonlinear, linearized, free };
const char* to_string(EvolutionMode m);

// Right-hand side of the similarity system. nonlinear and linearized act on
// the perturbation Phi = Psi - Psi_*; free acts on the full state without
// potential or nonlinearity.
class SimilarityRhs {
 public:
  SimilarityRhs(GridPtr grid, EvolutionMode mode);
  StatePair operator()(const StatePair& phi) const;
  const GridPtr& grid() const { return grid_; }
  EvolutionMode mode() const { return mode_; }
  const OperatorMatrix& matrix() const { return M_; }

 private:
  GridPtr grid_;
  EvolutionMode mode_;
  OperatorMatrix M_;
};

StatePair rhs(const StatePair& phi, EvolutionMode mode);

enum class Precision { double_, long_double, digits50 };

// Max-norm of the full-state similarity right-hand side at Psi_*, i.e.
// (psi2 - psi1 - rho psi1', psi1'' + 5/rho psi1' - rho psi2' - 2 psi2 + N(psi1)),
// with the collocation operators assembled in the requested arithmetic.
double profile_residual(int n, Precision precision);

// Exponential filter exp(-36 (k/K)^16) on the Chebyshev coefficients of the
// even extension, as an n x n matrix on the half grid.
Eigen::MatrixXd spectral_filter(const RadialGrid& g);

struct ConeTrajectory {
  double T = 1.0;
  std::vector<double> taus;
  std::vector<StatePair> states;
  double dt = 0.0;
  EvolutionMode mode = EvolutionMode::nonlinear;
};

struct EvolveOptions {
  bool filter = false;
  // Largest allowed dt n^2.
  double cfl = 4.0;
  // Store every k-th step (the final state is always stored).
  int store_every = 1;
  double T = 1.0;
};

// Classical RK4 method of lines. Throws Configuration for dt above the CFL
// bound and Instability (with the last good tau in the message) when the
// state stops being finite.
ConeTrajectory evolve(const StatePair& phi0, double tau_max, double dt, EvolutionMode mode, const EvolveOptions& opt = {});

double default_dt(int n);

// Left eigenvector of the generator (with potential) at the eigenvalue 1,
// normalized against the analytic gauge samples: left^T g = 1.
struct GaugeRepresenter {
  GridPtr grid;
  StatePair left;
};

GaugeRepresenter gauge_representer(const GridPtr& grid);

// Amplitude alpha = left^T Phi (bilinear). Throws Usage when the representer
// is not normalized against g to 1e-10.
cplx gauge_projection(const StatePair& phi, const GaugeRepresenter& rep);

// CSV rows: tau, rho, re_phi1, im_phi1, re_phi2, im_phi2.
void write_trajectory_csv(const ConeTrajectory& traj, const std::string& path);

}  // namespace blowup
