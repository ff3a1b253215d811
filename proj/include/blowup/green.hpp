#pragma once

#include "blowup/resolvent_ode.hpp"
#include "blowup/state.hpp"

namespace blowup {

// Solution of (1 - L0) u = f at lambda = 1 without potential, by variation of
// constants with psi1 = 1/(1+sqrt(1-rho^2))^2 and psi2 = (2-rho^2)/rho^4,
// integrated in theta = asin(s) so that the endpoint weights become smooth.
StatePair lambda1_green(const StatePair& f);

struct GreenOptions {
  // below eps the integrals use their leading power laws
  double eps = 1e-3;
  // width in x = 1 - rho of the endpoint layer integrated termwise
  double edge = 0.05;
  int panel_nodes = 24;
  int fit_nodes = 24;
  int fit_degree = 12;
  double rtol = 1e-12;
};

struct GreenDiagnostics {
  cplx A, B;
  // finite part of U1 at rho = 1 and c = kappa F(1)
  cplx kappa, c;
  double wronskian_drift = 0.0;
};

// Solution of (lambda - L) u = f built from the Green function of the spectral
// ODE with F = f2 + (lambda+2) f1 + rho f1'. The boundary term at rho = 1 is
// integrated by parts, its divergent part dropped by analytic continuation.
// Throws EigenvalueCollision when B(lambda) vanishes, Domain for
// Re lambda <= -1/2, Resonance at lambda = 3/2 - m.
StatePair green_resolvent(cplx lambda, const StatePair& f, bool potential = true, const GreenOptions& opt = {},
                          GreenDiagnostics* diag = nullptr);

}  // namespace blowup
