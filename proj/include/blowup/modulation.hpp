#pragma once

#include <string>
#include <vector>

#include "blowup/evolution.hpp"
#include "blowup/geometry.hpp"

namespace blowup {

struct ModulationOptions {
  int n = 32;
  double dt_factor = 0.5;  // dt = dt_factor / n^2
  // Intermediate horizons solved before tau_max; each seeds the next.
  std::vector<double> tau_stages = {2.0, 4.0};
  double tol = 1e-8;
  int max_iter = 40;
  double seed_offset = 0.02;
  int store_every = 8;
  bool filter = false;
};

struct ModulationResult {
  double T_star = 0.0;
  std::vector<double> taus;
  std::vector<double> gauge_history;
  bool converged = false;
  int iterations = 0;
  double objective = 0.0;
  std::string message;
  ConeTrajectory trajectory;
};

// Phi_T(0)(rho) = (T f(T rho) - psi*_1(rho), T^2 g(T rho) - psi*_2(rho)).
StatePair modulation_initial_state(const CorotationalData& data, double T, const GridPtr& grid);

// Secant iteration on h(T) = e^{-tau_max} alpha(tau_max) with staged horizons.
// Failures are reported through converged = false and message.
ModulationResult modulate_T(const CorotationalData& data, double T_init, double tau_max, const ModulationOptions& opt = {});

}  // namespace blowup
