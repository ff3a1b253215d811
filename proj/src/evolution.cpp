#include "blowup/evolution.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <cmath>
#include <sstream>

#include "blowup/errors.hpp"
#include "blowup/io.hpp"
#include "blowup/nonlinearity.hpp"

namespace blowup {

namespace {
using mp50 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>, boost::multiprecision::et_off>;
}

const char* to_string(EvolutionMode m) {
  switch (m) {
    case EvolutionMode::nonlinear: return "nonlinear";
    case EvolutionMode::linearized: return "linearized";
    case EvolutionMode::free: return "free";
  }
  return "?";
}

SimilarityRhs::SimilarityRhs(GridPtr grid, EvolutionMode mode)
    : grid_(std::move(grid)), mode_(mode), M_(assemble_generator(grid_, mode != EvolutionMode::free)) {}

StatePair SimilarityRhs::operator()(const StatePair& phi) const {
  StatePair out = M_.apply(phi);
  if (mode_ == EvolutionMode::nonlinear) {
    const double scale = std::max(1.0, phi.stacked().cwiseAbs().maxCoeff());
    if (phi.phi1.imag().cwiseAbs().maxCoeff() > 1e-13 * scale) {
      throw Error(ErrorKind::Usage, "nonlinear evolution needs a real state");
    }
    out.phi2.real() += perturbation_nonlinearity(*grid_, phi.phi1.real());
  }
  return out;
}

StatePair rhs(const StatePair& phi, EvolutionMode mode) { return SimilarityRhs(phi.grid, mode)(phi); }

namespace {

template <class S>
S sin_minus_id_over_cube_t(const S& h) {
  using std::sin;
  const S h2 = h * h;
  if (h2 < S(0.25)) {
    S term = S(-1) / S(6), sum = term;
    for (int k = 1; k < 40; ++k) {
      term *= -h2 / (S(2 * k + 2) * S(2 * k + 3));
      sum += term;
    }
    return sum;
  }
  return (sin(h) - h) / (h2 * h);
}

template <class S>
double profile_residual_impl(int n) {
  using std::abs;
  using std::atan;
  using std::sqrt;
  using Vec = Eigen::Matrix<S, -1, 1>;
  using Mat = Eigen::Matrix<S, -1, -1>;
  ParityOps<S> ops = parity_ops<S>(n);
  const S sqrt2 = sqrt(S(2));
  Vec psi1(n), psi2(n);
  for (int i = 0; i < n; ++i) {
    const S r = ops.nodes(i);
    psi1(i) = (i == 0) ? sqrt2 : S(2) / r * atan(r / sqrt2);
    psi2(i) = S(2) * sqrt2 / (r * r + S(2));
  }
  Mat lap = ops.d2;
  for (int i = 1; i < n; ++i) lap.row(i) += (S(5) / ops.nodes(i)) * ops.d1.row(i);
  lap.row(0) = S(6) * ops.d2.row(0);
  const Vec d1p1 = ops.d1 * psi1, d1p2 = ops.d1 * psi2, lp1 = lap * psi1;
  S worst = S(0);
  for (int i = 0; i < n; ++i) {
    const S r = ops.nodes(i);
    const S u = psi1(i);
    const S N = S(-12) * u * u * u * sin_minus_id_over_cube_t<S>(S(2) * r * u);
    const S a = psi2(i) - psi1(i) - r * d1p1(i);
    const S b = lp1(i) - r * d1p2(i) - S(2) * psi2(i) + N;
    if (abs(a) > worst) worst = abs(a);
    if (abs(b) > worst) worst = abs(b);
  }
  return static_cast<double>(worst);
}

}  // namespace

double profile_residual(int n, Precision precision) {
  if (n < 8) throw Error(ErrorKind::Configuration, "grid needs n >= 8");
  switch (precision) {
    case Precision::double_: return profile_residual_impl<double>(n);
    case Precision::long_double: return profile_residual_impl<long double>(n);
    case Precision::digits50: return profile_residual_impl<mp50>(n);
  }
  return 0.0;
}

Eigen::MatrixXd spectral_filter(const RadialGrid& g) {
  // even extension on the full grid x_j = cos(pi j/K), K = 2n-2
  const int n = g.n, K = 2 * n - 2;
  Eigen::MatrixXd C(K + 1, K + 1);  // values -> Chebyshev coefficients
  for (int k = 0; k <= K; ++k) {
    const double ck = (k == 0 || k == K) ? 2.0 : 1.0;
    for (int j = 0; j <= K; ++j) {
      const double cj = (j == 0 || j == K) ? 2.0 : 1.0;
      C(k, j) = 2.0 / (K * ck * cj) * std::cos(M_PI * k * j / K);
    }
  }
  Eigen::MatrixXd T(K + 1, K + 1);  // coefficients -> values
  for (int j = 0; j <= K; ++j)
    for (int k = 0; k <= K; ++k) T(j, k) = std::cos(M_PI * k * j / K);
  Eigen::VectorXd sigma(K + 1);
  for (int k = 0; k <= K; ++k) sigma(k) = std::exp(-36.0 * std::pow(double(k) / K, 16));
  const Eigen::MatrixXd Ffull = T * sigma.asDiagonal() * C;
  // full index j = n-1-i carries rho_i for the half grid (x_j = cos(pi j/K) descends)
  Eigen::MatrixXd F(n, n);
  for (int i = 0; i < n; ++i) {
    const int fi = n - 1 - i;
    for (int k = 0; k < n; ++k) {
      const int a = n - 1 - k, b = n - 1 + k;
      F(i, k) = (k == 0) ? Ffull(fi, a) : Ffull(fi, a) + Ffull(fi, b);
    }
  }
  return F;
}

double default_dt(int n) { return 0.5 / (double(n) * n); }

ConeTrajectory evolve(const StatePair& phi0, double tau_max, double dt, EvolutionMode mode, const EvolveOptions& opt) {
  phi0.validate();
  const int n = phi0.n();
  if (!(tau_max > 0.0)) throw Error(ErrorKind::Configuration, "tau_max must be positive");
  if (!(dt > 0.0) || dt * n * n > opt.cfl) {
    std::ostringstream os;
    os << "time step " << dt << " exceeds the CFL bound " << opt.cfl << "/n^2";
    throw Error(ErrorKind::Configuration, os.str());
  }
  SimilarityRhs f(phi0.grid, mode);
  std::optional<Eigen::MatrixXd> filt;
  if (opt.filter) filt = spectral_filter(*phi0.grid);
  ConeTrajectory traj;
  traj.T = opt.T;
  traj.dt = dt;
  traj.mode = mode;
  traj.taus.push_back(0.0);
  traj.states.push_back(phi0);
  const long steps = std::lround(std::ceil(tau_max / dt - 1e-9));
  const double h = tau_max / steps;
  traj.dt = h;
  StatePair u = phi0;
  for (long s = 1; s <= steps; ++s) {
    const StatePair k1 = f(u);
    const StatePair k2 = f(u + (0.5 * h) * k1);
    const StatePair k3 = f(u + (0.5 * h) * k2);
    const StatePair k4 = f(u + h * k3);
    StatePair next = u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (filt) {
      next.phi1.real() = *filt * next.phi1.real();
      next.phi1.imag() = *filt * next.phi1.imag();
      next.phi2.real() = *filt * next.phi2.real();
      next.phi2.imag() = *filt * next.phi2.imag();
    }
    if (!next.finite() || next.stacked().cwiseAbs().maxCoeff() > 1e8) {
      std::ostringstream os;
      os << "evolution became unstable after tau = " << (s - 1) * h;
      throw Error(ErrorKind::Instability, os.str());
    }
    u = std::move(next);
    if (s % opt.store_every == 0 || s == steps) {
      traj.taus.push_back(s * h);
      traj.states.push_back(u);
    }
  }
  return traj;
}

GaugeRepresenter gauge_representer(const GridPtr& grid) {
  const OperatorMatrix M = assemble_generator(grid, true);
  const auto pairs = eigenpairs(M);
  const EigenPair* best = nullptr;
  for (const auto& p : pairs)
    if (!best || std::abs(p.lambda - 1.0) < std::abs(best->lambda - 1.0)) best = &p;
  if (!best || std::abs(best->lambda - 1.0) > 1e-6) throw Error(ErrorKind::NumericalFailure, "no discrete eigenvalue near 1");
  const Eigen::VectorXcd g = gauge_state(grid).stacked();
  const cplx s = best->left.transpose() * g;
  GaugeRepresenter rep;
  rep.grid = grid;
  rep.left = StatePair::from_stacked(grid, best->left / s);
  return rep;
}

cplx gauge_projection(const StatePair& phi, const GaugeRepresenter& rep) {
  require_same_grid(phi, rep.left);
  const cplx norm = rep.left.stacked().transpose() * gauge_state(rep.grid).stacked();
  if (std::abs(norm - 1.0) > 1e-10) throw Error(ErrorKind::Usage, "gauge representer is not normalized");
  return rep.left.stacked().transpose() * phi.stacked();
}

void write_trajectory_csv(const ConeTrajectory& traj, const std::string& path) {
  CsvWriter csv(path, {"tau", "rho", "re_phi1", "im_phi1", "re_phi2", "im_phi2"});
  for (size_t k = 0; k < traj.taus.size(); ++k) {
    const StatePair& s = traj.states[k];
    for (int i = 0; i < s.n(); ++i) {
      csv.row({traj.taus[k], s.grid->nodes(i), s.phi1(i).real(), s.phi1(i).imag(), s.phi2(i).real(), s.phi2(i).imag()});
    }
  }
}

}  // namespace blowup
