#include "blowup/modulation.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "blowup/errors.hpp"

namespace blowup {

StatePair modulation_initial_state(const CorotationalData& data, double T, const GridPtr& grid) {
  BlowupParam{T}.validate();
  StatePair s(grid);
  for (int i = 0; i < grid->n; ++i) {
    const double rho = grid->nodes(i);
    const auto p = profile_similarity(rho);
    s.phi1(i) = T * data.f_at(T * rho) - p.psi1;
    s.phi2(i) = T * T * data.g_at(T * rho) - p.psi2;
  }
  return s;
}

namespace {

struct Sample {
  double T = 0.0;
  double h = std::numeric_limits<double>::quiet_NaN();
  ConeTrajectory traj;
  std::vector<double> alpha;
  bool ok() const { return std::isfinite(h); }
};

class Objective {
 public:
  Objective(const CorotationalData& data, const ModulationOptions& opt)
      : data_(data), opt_(opt), grid_(build_grid(opt.n)), rep_(gauge_representer(grid_)) {}

  Sample operator()(double T, double tau) {
    ++evaluations;
    Sample s;
    s.T = T;
    const double lo = std::max(0.5, 1.0 - data_.delta), hi = std::min(1.5, 1.0 + data_.delta);
    if (T < lo || T > hi) return s;
    try {
      EvolveOptions eo;
      eo.store_every = opt_.store_every;
      eo.filter = opt_.filter;
      eo.T = T;
      s.traj = evolve(modulation_initial_state(data_, T, grid_), tau, opt_.dt_factor / (opt_.n * double(opt_.n)),
                      EvolutionMode::nonlinear, eo);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Instability) throw;
      return s;
    }
    for (const auto& st : s.traj.states) s.alpha.push_back(gauge_projection(st, rep_).real());
    s.h = std::exp(-tau) * s.alpha.back();
    return s;
  }

  int evaluations = 0;

 private:
  const CorotationalData& data_;
  ModulationOptions opt_;
  GridPtr grid_;
  GaugeRepresenter rep_;
};

// Secant on one horizon; unstable evaluations are pulled back toward the
// last good iterate by bisection.
std::optional<Sample> secant(Objective& f, double T0, double T1, double tau, const ModulationOptions& opt,
                             std::string& why, int& iters) {
  Sample a = f(T0, tau), b = f(T1, tau);
  if (!a.ok() || !b.ok()) {
    // shrink the seed pair toward its midpoint until both evolutions survive
    double mid = 0.5 * (T0 + T1), half = 0.5 * (T1 - T0);
    for (int k = 0; k < 20 && (!a.ok() || !b.ok()); ++k) {
      half *= 0.25;
      a = f(mid - half, tau);
      b = f(mid + half, tau);
    }
    if (!a.ok() || !b.ok()) {
      why = "evolution blows up for every seed near the initial blowup time";
      return std::nullopt;
    }
  }
  for (int it = 0; it < opt.max_iter; ++it) {
    ++iters;
    if (std::abs(b.h) <= opt.tol) return b;
    const double denom = b.h - a.h;
    if (denom == 0.0 || std::abs(denom) < 1e-14 * std::max(std::abs(a.h), std::abs(b.h))) {
      why = "objective does not depend on T";
      return std::nullopt;
    }
    double Tn = b.T - b.h * (b.T - a.T) / denom;
    Sample c = f(Tn, tau);
    for (int k = 0; k < 30 && !c.ok(); ++k) {
      Tn = 0.5 * (Tn + b.T);
      c = f(Tn, tau);
    }
    if (!c.ok()) {
      why = "secant step lands where the evolution blows up";
      return std::nullopt;
    }
    if (std::abs(c.T - b.T) < 1e-14) return c;
    a = std::move(b);
    b = std::move(c);
  }
  if (std::abs(b.h) <= opt.tol) return b;
  why = "secant iteration did not converge";
  return std::nullopt;
}

}  // namespace

ModulationResult modulate_T(const CorotationalData& data, double T_init, double tau_max, const ModulationOptions& opt) {
  if (!(tau_max > 0.0)) throw Error(ErrorKind::Configuration, "tau_max must be positive");
  Objective f(data, opt);
  ModulationResult res;
  std::vector<double> stages;
  for (double s : opt.tau_stages)
    if (s < tau_max) stages.push_back(s);
  stages.push_back(tau_max);
  double Tc = T_init, width = opt.seed_offset;
  std::optional<Sample> best;
  for (size_t k = 0; k < stages.size(); ++k) {
    std::string why;
    best = secant(f, Tc - width, Tc + width, stages[k], opt, why, res.iterations);
    if (!best) {
      res.message = why + " (horizon tau = " + std::to_string(stages[k]) + ")";
      res.T_star = Tc;
      return res;
    }
    Tc = best->T;
    if (k + 1 < stages.size()) width = std::max(1e-9, width * std::exp(-(stages[k + 1] - stages[k])));
  }
  res.T_star = best->T;
  res.objective = best->h;
  res.converged = std::abs(best->h) <= opt.tol;
  res.taus = best->traj.taus;
  res.gauge_history = best->alpha;
  res.trajectory = std::move(best->traj);
  res.message = res.converged ? "converged" : "objective above tolerance";
  return res;
}

}  // namespace blowup
