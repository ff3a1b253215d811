#pragma once

#include <functional>
#include <vector>

#include "blowup/special.hpp"

namespace blowup {

// lambda = eps + i omega with a(lambda) = i(3 - 2 lambda)/2.
struct SpectralPoint {
  cplx lambda;
  cplx a() const { return cplx(0.0, 1.0) * (3.0 - 2.0 * lambda) / 2.0; }
};

// -(1-rho^2) u'' + p(rho) u' + q(rho) u = F with p = 2(lambda+2) rho - 5/rho,
// q = (lambda+2)(lambda+1) + V and V = -48/(rho^2+2)^2 (or 0 when free).
struct OdeCoefficients {
  cplx lambda;
  bool potential = true;

  double V(double rho) const;
  cplx p(double rho) const;
  cplx q(double rho) const;
  cplx residual(double rho, cplx u, cplx du, cplx d2u, cplx F = 0.0) const;
  cplx second_derivative(double rho, cplx u, cplx du, cplx F = 0.0) const;
};

OdeCoefficients ode_coefficients(cplx lambda, bool potential);

struct ValueDerivC {
  cplx u;
  cplx du;
};

// v = rho^{5/2} (1-rho^2)^{lambda/2 - 1/4} u removes the first-order term.
// Throws EndpointLimit at rho in {0, 1}.
ValueDerivC transform_v(cplx u, cplx du, double rho, cplx lambda);
ValueDerivC inverse_transform_v(cplx v, cplx dv, double rho, cplx lambda);

// phi(rho) = atanh(rho). Throws Domain for rho outside [0, 1).
double phi_map(double rho);

// Relative residual of b(rho) = sqrt((1-rho^2) phi) C2(a phi) in the
// Bessel-form equation with Liouville-Green potential, C2 one of J2, Y2, H1_2.
double liouville_green_residual(cplx lambda, double rho, BesselKind kind = BesselKind::J2);
// b and b' at rho.
ValueDerivC bessel_basis(cplx lambda, double rho, BesselKind kind);

enum class Endpoint { zero, one };
enum class Branch { regular, singular };

// Frobenius solution u = scale * x^index * sum_k c_k x^k, with x = rho at the
// origin and x = 1 - rho at the light cone.
struct LocalSolution {
  Endpoint endpoint = Endpoint::zero;
  cplx lambda;
  bool potential = true;
  cplx index = 0.0;
  cplx scale = 1.0;
  std::vector<cplx> coeffs;
  double domain_lo = 0.0;
  double domain_hi = 0.5;

  ValueDerivC eval(double rho) const;
  // Max relative ODE residual over n_points on the inner half of the domain.
  double residual(int n_points = 16) const;
};

LocalSolution basis_at_zero(cplx lambda, bool potential, int n_terms = 60);
// The singular branch has index 3/2 - lambda. amplitude_normalized multiplies it
// by a(lambda)^{-1/2}. Throws Resonance when the index gap is an integer hit
// by the recurrence.
LocalSolution basis_at_one(cplx lambda, bool potential, Branch branch, int n_terms = 60, bool amplitude_normalized = false);

struct OdePoint {
  double rho = 0.0;
  cplx u;
  cplx du;
};

// Dormand-Prince 5(4) integration of the ODE from (rho0, u0, du0) through the
// monotone targets, with an optional forcing F. Throws Continuation when the
// step size collapses.
std::vector<OdePoint> integrate_ode(const OdeCoefficients& ode, double rho0, cplx u0, cplx du0,
                                    const std::vector<double>& targets, double rtol = 1e-12,
                                    const std::function<cplx(double)>& forcing = {});

// Continue a local solution from its domain edge to rho_m.
ValueDerivC continue_solution(const LocalSolution& local, double rho_m, double rtol = 1e-12);

// rho^5 (1-rho^2)^{lambda - 1/2} (f g' - f' g), constant for solutions.
cplx weighted_wronskian(cplx lambda, double rho, const ValueDerivC& f, const ValueDerivC& g);

}  // namespace blowup
