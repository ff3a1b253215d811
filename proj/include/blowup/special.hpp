#pragma once

#include <complex>

namespace blowup {

using cplx = std::complex<double>;

enum class BesselKind { J2, Y2, H1_2 };

// Order-2 cylinder functions at complex argument. Principal branch for Y2.
// Power series (extended precision) for |z| <= bessel_crossover, Hankel
// asymptotic expansion beyond.
cplx cyl_bessel(BesselKind kind, cplx z);

struct BesselValue {
  cplx value;
  cplx deriv;
};
// Value and z-derivative.
BesselValue cyl_bessel_vd(BesselKind kind, cplx z);

inline constexpr double bessel_crossover = 17.0;

// Principal branch of log Gamma.
cplx log_gamma(cplx z);
cplx gamma_fn(cplx z);

}  // namespace blowup
