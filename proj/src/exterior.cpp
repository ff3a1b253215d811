#include "blowup/exterior.hpp"

#include <algorithm>
#include <cmath>

#include "blowup/errors.hpp"
#include "blowup/geometry.hpp"
#include "blowup/nonlinearity.hpp"

namespace blowup {

void TruncatedCone::validate() const {
  if (!(t1 > t0)) throw Error(ErrorKind::Domain, "cone needs t1 > t0");
  if (!(r0 - (t1 - t0) > 0.0)) throw Error(ErrorKind::Domain, "cone must stay away from the origin: r0 - (t1 - t0) <= 0");
}

ExteriorData profile_exterior_data(double T, double t0) {
  ExteriorData d;
  d.f = [=](double r) { return profile_physical(t0, r, T).value; };
  d.fr = [=](double r) { return profile_physical(t0, r, T).deriv; };
  d.g = [=](double r) { return profile_physical_dt(t0, r, T); };
  return d;
}

double ExteriorSolution::max_error(const std::function<double(double, double)>& exact) const {
  double e = 0.0;
  for (int k = 0; k <= levels; ++k)
    for (size_t j = 0; j < u[k].size(); ++j) e = std::max(e, std::abs(u[k][j] - exact(t_at(k), r_at(k, int(j)))));
  return e;
}

namespace {

using Lattice = std::vector<std::vector<double>>;

Lattice make_lattice(int K) {
  Lattice a(K + 1);
  for (int k = 0; k <= K; ++k) a[k].assign(K - k + 1, 0.0);
  return a;
}

// Simpson rule for the initial velocity over [a, b].
double simpson(const std::function<double(double)>& g, double a, double b) {
  return (b - a) / 6.0 * (g(a) + 4.0 * g(0.5 * (a + b)) + g(b));
}

// One application of the integral map given the source S on the lattice.
// Node (k, j) has west parent (k-1, j) and east parent (k-1, j+1); its
// south point is (k-2, j+1). w+ = u_t + u_r is transported along dr/dt = -1
// from the east parent, w- = u_t - u_r along dr/dt = +1 from the west parent.
void sweep(const ExteriorSolution& s, const ExteriorData& d, const Lattice& S, Lattice& u, Lattice& ur) {
  const int K = s.levels;
  const double h = s.h;
  Lattice wp = make_lattice(K), wm = make_lattice(K);
  for (int j = 0; j <= K; ++j) {
    const double r = s.r_at(0, j);
    u[0][j] = d.f(r);
    ur[0][j] = d.fr(r);
    const double gt = d.g(r);
    wp[0][j] = gt + ur[0][j];
    wm[0][j] = gt - ur[0][j];
  }
  for (int k = 1; k <= K; ++k) {
    for (int j = 0; j <= K - k; ++j) {
      wp[k][j] = wp[k - 1][j + 1] + 0.5 * h * (S[k][j] + S[k - 1][j + 1]);
      wm[k][j] = wm[k - 1][j] + 0.5 * h * (S[k][j] + S[k - 1][j]);
      ur[k][j] = 0.5 * (wp[k][j] - wm[k][j]);
      const double uW = u[k - 1][j], uE = u[k - 1][j + 1];
      if (k == 1) {
        const double r = s.r_at(1, j);
        // triangle of area h^2 with vertices N, W, E
        u[k][j] = 0.5 * (uW + uE) + 0.5 * simpson(d.g, r - h, r + h) +
                  0.5 * h * h * (S[1][j] + S[0][j] + S[0][j + 1]) / 3.0;
      } else {
        // diamond of area 2h^2, trapezoid on its four vertices
        const double uS = u[k - 2][j + 1];
        u[k][j] = uW + uE - uS + 0.25 * h * h * (S[k][j] + S[k - 1][j] + S[k - 1][j + 1] + S[k - 2][j + 1]);
      }
    }
  }
}

void source(const ExteriorSolution& s, const Lattice& u, const Lattice& ur, bool free, Lattice& S) {
  for (int k = 0; k <= s.levels; ++k)
    for (size_t j = 0; j < u[k].size(); ++j) {
      if (free) {
        S[k][j] = 0.0;
        continue;
      }
      const double r = s.r_at(k, int(j));
      S[k][j] = 5.0 / r * ur[k][j] + nonlinearity(r, u[k][j]);
    }
}

}  // namespace

ExteriorSolution duhamel_exterior(const ExteriorData& data, const TruncatedCone& cone, const ExteriorOptions& opt) {
  cone.validate();
  if (opt.levels < 2) throw Error(ErrorKind::Configuration, "exterior lattice needs at least 2 levels");
  ExteriorSolution s;
  s.cone = cone;
  s.levels = opt.levels;
  s.h = cone.height() / opt.levels;
  s.u = make_lattice(opt.levels);
  s.ur = make_lattice(opt.levels);
  Lattice S = make_lattice(opt.levels), un = s.u, urn = s.ur;
  // iterate 0: free evolution of the data
  sweep(s, data, S, s.u, s.ur);
  int growth = 0;
  double prev = INFINITY;
  for (int it = 1; it <= opt.max_iter; ++it) {
    source(s, s.u, s.ur, opt.free, S);
    sweep(s, data, S, un, urn);
    double diff = 0.0;
    for (int k = 0; k <= opt.levels; ++k)
      for (size_t j = 0; j < un[k].size(); ++j) diff = std::max(diff, std::abs(un[k][j] - s.u[k][j]));
    std::swap(s.u, un);
    std::swap(s.ur, urn);
    s.iterations = it;
    s.picard_residual = diff;
    s.residual_history.push_back(diff);
    if (!std::isfinite(diff)) throw Error(ErrorKind::IterationFailure, "non-finite Picard iterate");
    if (diff <= opt.tol) return s;
    growth = diff > prev ? growth + 1 : 0;
    if (growth >= 5) throw Error(ErrorKind::IterationFailure, "Picard update grew over five consecutive sweeps");
    prev = diff;
  }
  throw Error(ErrorKind::IterationFailure,
              "Picard iteration did not reach tolerance; last update " + std::to_string(s.picard_residual));
}

RichardsonReport exterior_richardson(const ExteriorData& data, const TruncatedCone& cone, int levels,
                                     const std::function<double(double, double)>& exact, const ExteriorOptions& opt) {
  RichardsonReport rep;
  std::vector<ExteriorSolution> sols;
  for (int m = 1; m <= 4; m *= 2) {
    ExteriorOptions o = opt;
    o.levels = levels * m;
    sols.push_back(duhamel_exterior(data, cone, o));
    rep.levels.push_back(o.levels);
  }
  // coarse node (k, j) is fine node (m k, m j) on a lattice refined by m
  auto diff = [&](const ExteriorSolution& a, const ExteriorSolution& b, int m) {
    double e = 0.0;
    for (int k = 0; k <= a.levels; ++k)
      for (size_t j = 0; j < a.u[k].size(); ++j) e = std::max(e, std::abs(a.u[k][j] - b.u[m * k][m * j]));
    return e;
  };
  rep.errors.push_back(diff(sols[0], sols[1], 2));
  rep.errors.push_back(diff(sols[1], sols[2], 2));
  rep.observed_order = std::log2(rep.errors[0] / rep.errors[1]);
  if (exact) {
    const ExteriorSolution& c = sols[1];
    const ExteriorSolution& f = sols[2];
    double e = 0.0;
    for (int k = 0; k <= c.levels; ++k)
      for (size_t j = 0; j < c.u[k].size(); ++j) {
        const double x = (4.0 * f.u[2 * k][2 * j] - c.u[k][j]) / 3.0;
        e = std::max(e, std::abs(x - exact(c.t_at(k), c.r_at(k, int(j)))));
      }
    rep.extrapolated_error = e;
  }
  rep.finest = std::move(sols[2]);
  return rep;
}

OverlapReport overlap_compare(const ExteriorSolution& ext, const ConeTrajectory& traj) {
  if (traj.states.empty()) throw Error(ErrorKind::Usage, "empty trajectory");
  const RadialGrid& grid = *traj.states.front().grid;
  const double T = traj.T;
  OverlapReport rep;
  rep.method = "barycentric interpolation in rho on the collocation grid, linear in tau between stored stamps";
  const double tau_end = traj.taus.back();
  for (int k = 0; k <= ext.levels; ++k) {
    const double t = ext.t_at(k);
    if (t >= T) continue;
    const double tau = -std::log1p(-t / T);
    if (tau > tau_end + 1e-14) continue;
    auto it = std::upper_bound(traj.taus.begin(), traj.taus.end(), tau);
    size_t i1 = std::min<size_t>(it - traj.taus.begin(), traj.taus.size() - 1);
    size_t i0 = i1 == 0 ? 0 : i1 - 1;
    const double span = traj.taus[i1] - traj.taus[i0];
    const double w = span > 0 ? (tau - traj.taus[i0]) / span : 0.0;
    for (size_t j = 0; j < ext.u[k].size(); ++j) {
      const double r = ext.r_at(k, int(j));
      if (r > T - t) continue;
      const double rho = r / (T - t);
      const double p0 = grid.interpolate(traj.states[i0].phi1, rho).real();
      const double p1 = grid.interpolate(traj.states[i1].phi1, rho).real();
      double psi = (1.0 - w) * p0 + w * p1;
      if (traj.mode != EvolutionMode::free) psi += profile_similarity(rho).psi1;
      rep.max_discrepancy = std::max(rep.max_discrepancy, std::abs(ext.u[k][j] - psi / (T - t)));
      ++rep.points;
    }
  }
  if (rep.points == 0) throw Error(ErrorKind::Usage, "exterior lattice and trajectory do not overlap");
  return rep;
}

}  // namespace blowup
