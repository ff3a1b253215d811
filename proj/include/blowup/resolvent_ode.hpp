#pragma once

#include <string>
#include <vector>

#include "blowup/frobenius.hpp"

namespace blowup {

// u_an = A u_reg + B u_sing near rho = 1, where u_an(0) = 1, u_reg(1) = 1 and
// u_sing is the (1-rho)^{3/2-lambda} branch scaled to unit weighted Wronskian
// with u_reg. Then B is the weighted Wronskian of (u_reg, u_an): analytic in
// lambda away from the resonances 3/2 - lambda in {1, 2, ...}. For the free
// equation at lambda = i omega, B = 2 hypergeom_c3(omega).
struct ConnectionData {
  cplx lambda;
  bool potential = true;
  cplx A;
  cplx B;
  double wronskian_drift = 0.0;
  double matching_point = 0.6;
  // weighted Wronskian of the raw branches, -(3/2-lambda) 2^{lambda-1/2}
  cplx sing_normalization;
};

ConnectionData mode_stability_function(cplx lambda, bool potential, double rho_m = 0.6);

// (lambda - 1/2) B(lambda): removes the simple pole at the resonance
// lambda = 1/2 so that contour integrals count zeros only.
cplx regularized_B(cplx lambda, bool potential);

struct Rect {
  double re_lo, re_hi, im_lo, im_hi;
};

struct WindingSample {
  cplx lambda;
  cplx value;
  double wronskian_drift = 0.0;
};

// regularized_B together with the Wronskian drift of its evaluation(s).
WindingSample regularized_B_sample(cplx lambda, bool potential);

struct WindingResult {
  int winding = 0;
  bool conclusive = true;
  double max_phase_step = 0.0;
  double min_modulus = 0.0;
  std::vector<WindingSample> samples;
};

// Argument principle on the rectangle boundary (counterclockwise) for
// regularized_B, bisecting segments until consecutive phase steps are below
// pi/2. conclusive = false when max_depth bisections do not suffice.
WindingResult winding_scan(const Rect& rect, bool potential, int samples_per_edge = 24, int max_depth = 12);

struct LargeFrequencyConnection {
  cplx c13;
  cplx c23;
  double matching_point = 0.0;
};

// Connection of the amplitude-normalized solution near 1 (leading term
// a^{-1/2}(1-rho)^{3/2-lambda}) to the Bessel pair at the origin, matched at
// min((rho0+1)/2, 2r/|a|). Requires |Im lambda| >= 5.
LargeFrequencyConnection large_frequency_connection(cplx lambda, double r = 1.0, double rho0 = 0.5);

// e^{5 i pi/4} sqrt(pi/2)
cplx large_frequency_limit();

// Gamma(3) Gamma(-1/2 + i omega) / (Gamma((1+i omega)/2) Gamma(1 + i omega/2)).
cplx hypergeom_c3(double omega);

// Explicit lambda = 1 solutions: g1 = 1/(2+rho^2) with the potential;
// psi1 = (2-rho^2-2 sqrt(1-rho^2))/rho^4 and psi2 = (2-rho^2)/rho^4 without.
ValueDerivC free_psi1(double rho);
ValueDerivC free_psi2(double rho);
// Relative ODE residual of the reduction-of-order partner
// g1(rho) int_rho^1 (s^2+2)^2/(s^5 sqrt(1-s^2)) ds at lambda = 1.
double reduction_of_order_residual(double rho);

}  // namespace blowup
