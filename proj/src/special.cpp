#include "blowup/special.hpp"

#include <cmath>

#include "blowup/errors.hpp"

namespace blowup {

namespace {

using lcplx = std::complex<long double>;

constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr long double kEulerL = 0.577215664901532860606512090082402431L;

struct LPair {
  lcplx v, d;
};

LPair j2_series(lcplx z) {
  const lcplx q = -(z * z) / 4.0L;
  lcplx term = (z * z) / 8.0L;
  LPair s{term, term * 2.0L / z};
  for (int k = 0; k < 200; ++k) {
    term *= q / static_cast<long double>((k + 1) * (k + 3));
    s.v += term;
    s.d += term * static_cast<long double>(2 * k + 4) / z;
    if (std::abs(term) <= 1e-21L * std::abs(s.v) && k > 2) break;
  }
  return s;
}

LPair y2_series(lcplx z, const LPair& j2) {
  const lcplx h = z / 2.0L;
  const lcplx q = -(h * h);
  // psi(k+1) + psi(k+3) with psi(m) = -gamma + H_{m-1}
  long double hk1 = 0.0L;        // H_k
  long double hk3 = 1.5L;        // H_{k+2}
  lcplx term = h * h / 2.0L;     // (z/2)^2 / (0! 2!)
  lcplx sum = term * (hk1 + hk3 - 2.0L * kEulerL);
  lcplx dsum = sum * 2.0L / z;
  for (int k = 1; k < 200; ++k) {
    term *= q / static_cast<long double>(k * (k + 2));
    hk1 += 1.0L / k;
    hk3 += 1.0L / (k + 2);
    lcplx t = term * (hk1 + hk3 - 2.0L * kEulerL);
    sum += t;
    dsum += t * static_cast<long double>(2 * k + 2) / z;
    if (std::abs(t) <= 1e-21L * std::abs(sum) && k > 2) break;
  }
  const lcplx lg = std::log(h);
  LPair y;
  y.v = (2.0L / kPiL) * j2.v * lg - (1.0L / kPiL) * (1.0L / (h * h) + 1.0L) - sum / kPiL;
  y.d = (2.0L / kPiL) * (j2.d * lg + j2.v / z) + 1.0L / (kPiL * h * h * h) - dsum / kPiL;
  return y;
}

// Hankel asymptotic sums P(z) = sum_k (+-i)^k a_k / z^k for order 2, with
// their z-derivatives.
void hankel_sums(cplx z, cplx& s1, cplx& s2, cplx& d1, cplx& d2) {
  const double mu = 16.0;
  cplx t1 = 1.0, t2 = 1.0;
  s1 = 1.0;
  s2 = 1.0;
  d1 = 0.0;
  d2 = 0.0;
  const cplx I(0.0, 1.0);
  double prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const cplx f = (mu - odd * odd) / (8.0 * k * z);
    t1 *= I * f;
    t2 *= -I * f;
    const double mag = std::abs(t1);
    if (mag > prev && k > 2) break;  // divergent tail of the asymptotic series
    s1 += t1;
    s2 += t2;
    d1 -= static_cast<double>(k) * t1 / z;
    d2 -= static_cast<double>(k) * t2 / z;
    prev = mag;
    if (mag < 1e-18) break;
  }
}

cplx to_cplx(lcplx z) { return cplx(static_cast<double>(z.real()), static_cast<double>(z.imag())); }

BesselValue bessel_impl(BesselKind kind, cplx z) {
  if (z == cplx(0.0, 0.0)) {
    if (kind == BesselKind::J2) return {0.0, 0.0};
    throw Error(ErrorKind::Domain, "Y2 and H1_2 are singular at z = 0");
  }
  const double az = std::abs(z);
  if (az <= bessel_crossover) {
    lcplx zl(z.real(), z.imag());
    LPair j = j2_series(zl);
    if (kind == BesselKind::J2) return {to_cplx(j.v), to_cplx(j.d)};
    LPair y = y2_series(zl, j);
    if (kind == BesselKind::Y2) return {to_cplx(y.v), to_cplx(y.d)};
    const lcplx I(0.0L, 1.0L);
    return {to_cplx(j.v + I * y.v), to_cplx(j.d + I * y.d)};
  }
  if (z.real() < 0.0 && z.imag() == 0.0) {
    if (kind == BesselKind::J2) {
      BesselValue b = bessel_impl(kind, -z);
      return {b.value, -b.deriv};
    }
    throw Error(ErrorKind::Domain, "asymptotic branch excludes the negative real axis");
  }
  cplx s1, s2, ds1, ds2;
  hankel_sums(z, s1, s2, ds1, ds2);
  const cplx I(0.0, 1.0);
  const cplx pre = std::sqrt(2.0 / (M_PI * z));
  const cplx chi = z - 1.25 * M_PI;
  const cplx e1 = pre * std::exp(I * chi), e2 = pre * std::exp(-I * chi);
  const cplx h1 = e1 * s1, h2 = e2 * s2;
  const cplx dh1 = h1 * (I - 0.5 / z) + e1 * ds1;
  const cplx dh2 = h2 * (-I - 0.5 / z) + e2 * ds2;
  switch (kind) {
    case BesselKind::J2: return {0.5 * (h1 + h2), 0.5 * (dh1 + dh2)};
    case BesselKind::Y2: return {(h1 - h2) / (2.0 * I), (dh1 - dh2) / (2.0 * I)};
    case BesselKind::H1_2: return {h1, dh1};
  }
  return {h1, dh1};
}

}  // namespace

cplx cyl_bessel(BesselKind kind, cplx z) { return bessel_impl(kind, z).value; }

BesselValue cyl_bessel_vd(BesselKind kind, cplx z) { return bessel_impl(kind, z); }

cplx log_gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
    throw Error(ErrorKind::Domain, "log_gamma pole at nonpositive integer");
  }
  if (z.real() < 0.5) {
    // Upward recurrence; each log(z+k) is analytic off (-inf,-k], so the
    // result stays on the principal branch.
    const int m = static_cast<int>(std::ceil(0.5 - z.real()));
    cplx acc = 0.0;
    for (int k = 0; k < m; ++k) acc += std::log(z + static_cast<double>(k));
    return log_gamma(z + static_cast<double>(m)) - acc;
  }
  static const double p[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                              771.32342877765313,   -176.61502916214059,   12.507343278686905,
                              -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  const cplx w = z - 1.0;
  cplx x = p[0];
  for (int i = 1; i < 9; ++i) x += p[i] / (w + static_cast<double>(i));
  const cplx t = w + 7.5;
  return 0.5 * std::log(2.0 * M_PI) + (w + 0.5) * std::log(t) - t + std::log(x);
}

cplx gamma_fn(cplx z) { return std::exp(log_gamma(z)); }

}  // namespace blowup
