#include "blowup/green.hpp"

#include <algorithm>
#include <cmath>

#include "blowup/errors.hpp"

namespace blowup {

namespace {

using Vec = Eigen::VectorXcd;

// Samples of F = f2 + k f1 + rho f1' and of F' on the grid.
void forcing_samples(const StatePair& f, cplx k, Vec& F, Vec& dF) {
  const RadialGrid& g = *f.grid;
  const Vec d1 = g.d1.cast<cplx>() * f.phi1;
  F = f.phi2 + k * f.phi1 + g.nodes.cast<cplx>().cwiseProduct(d1);
  dF = g.d1.cast<cplx>() * F;
}

Eigen::MatrixXd interp_rows(const RadialGrid& g, const std::vector<double>& x, bool odd) {
  const Eigen::VectorXd xv = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  return odd ? g.interp_matrix_odd(xv) : g.interp_matrix(xv);
}

// Lobatto nodes on [-1,1] ascending and Q(i,j) = int_{-1}^{x_i} l_j.
struct PanelRule {
  Eigen::VectorXd x;
  Eigen::MatrixXd Q;
};

PanelRule panel_rule(int m) {
  PanelRule r;
  r.x.resize(m);
  Eigen::VectorXd bw(m);
  for (int j = 0; j < m; ++j) {
    r.x(j) = -std::cos(M_PI * j / (m - 1));
    bw(j) = ((j % 2) ? -1.0 : 1.0) * ((j == 0 || j == m - 1) ? 0.5 : 1.0);
  }
  r.x(0) = -1.0;
  r.x(m - 1) = 1.0;
  r.Q = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd gx, gw;
  for (int i = 1; i < m; ++i) {
    gauss_legendre(m, -1.0, r.x(i), gx, gw);
    for (int q = 0; q < m; ++q) {
      Eigen::VectorXd l(m);
      double s = 0.0;
      for (int j = 0; j < m; ++j) {
        l(j) = bw(j) / (gx(q) - r.x(j));
        s += l(j);
      }
      r.Q.row(i) += gw(q) * l.transpose() / s;
    }
  }
  return r;
}

// Points of consecutive panels, m per panel, endpoints repeated.
struct Panels {
  std::vector<double> breaks;
  std::vector<double> pts;
  int m = 0;
  int count() const { return static_cast<int>(breaks.size()) - 1; }
};

Panels make_panels(const std::vector<double>& breaks, const PanelRule& rule) {
  Panels p;
  p.breaks = breaks;
  p.m = static_cast<int>(rule.x.size());
  for (int k = 0; k + 1 < static_cast<int>(breaks.size()); ++k) {
    const double a = breaks[k], b = breaks[k + 1];
    for (int j = 0; j < p.m; ++j) p.pts.push_back(j == p.m - 1 ? b : 0.5 * (a + b) + 0.5 * (b - a) * rule.x(j));
  }
  return p;
}

// Cumulative integral of samples over the panels, starting from v0.
Vec cumulate(const Panels& p, const PanelRule& rule, const Vec& f, cplx v0, int n_panels) {
  Vec out(f.size());
  out.setConstant(cplx(NAN, NAN));
  cplx start = v0;
  for (int k = 0; k < n_panels; ++k) {
    const double h = 0.5 * (p.breaks[k + 1] - p.breaks[k]);
    const Vec seg = rule.Q.cast<cplx>() * f.segment(k * p.m, p.m);
    for (int j = 0; j < p.m; ++j) out(k * p.m + j) = start + h * seg(j);
    start = out(k * p.m + p.m - 1);
  }
  return out;
}

std::vector<cplx> series_product(const std::vector<cplx>& a, const std::vector<cplx>& b, int n) {
  std::vector<cplx> c(n, 0.0);
  for (int i = 0; i < n && i < static_cast<int>(a.size()); ++i)
    for (int j = 0; i + j < n && j < static_cast<int>(b.size()); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// (1-x)^5 (2-x)^beta as a power series in x.
std::vector<cplx> endpoint_weight_series(cplx beta, int n) {
  std::vector<cplx> w(n);
  cplx binom = 1.0;
  const cplx lead = std::pow(cplx(2.0), beta);
  for (int k = 0; k < n; ++k) {
    if (k > 0) binom *= (beta - double(k - 1)) / double(k);
    w[k] = lead * binom * std::pow(-0.5, k);
  }
  const std::vector<cplx> p5{1.0, -5.0, 10.0, -10.0, 5.0, -1.0};
  return series_product(w, p5, n);
}

cplx weight(cplx lambda, double s) { return std::exp((lambda - 1.5) * std::log(1.0 - s * s)); }

}  // namespace

StatePair green_resolvent(cplx lambda, const StatePair& f, bool potential, const GreenOptions& opt,
                          GreenDiagnostics* diag) {
  f.validate();
  if (!(lambda.real() > -0.5)) throw Error(ErrorKind::Domain, "green_resolvent needs Re lambda > -1/2");
  if (opt.panel_nodes < 8 || opt.fit_degree < 2 || opt.fit_nodes <= opt.fit_degree || !(opt.edge > 0.0 && opt.edge <= 0.25))
    throw Error(ErrorKind::Configuration, "invalid green_resolvent options");
  const RadialGrid& g = *f.grid;
  const int n = g.n;
  const double X = opt.edge;
  const double eps = std::min(opt.eps, 0.5 * g.nodes(1));

  const ConnectionData conn = mode_stability_function(lambda, potential);
  const cplx B = conn.B, A = conn.A;
  if (std::abs(B) < 1e-9) throw Error(ErrorKind::EigenvalueCollision, "B(lambda) vanishes: lambda is an eigenvalue");
  const cplx Ws = conn.sing_normalization;
  const cplx beta = lambda - 1.5;

  Vec Fg, dFg;
  forcing_samples(f, lambda + 2.0, Fg, dFg);

  const LocalSolution an = basis_at_zero(lambda, potential);
  const LocalSolution reg = basis_at_one(lambda, potential, Branch::regular);
  const LocalSolution sng = basis_at_one(lambda, potential, Branch::singular);

  // breakpoints: geometric from eps, uniform 0.05, the edge and the grid nodes
  std::vector<double> br{eps};
  for (double r = 2.0 * eps; r < 0.05; r *= 2.0) br.push_back(r);
  for (int k = 1; k < 20; ++k) br.push_back(0.05 * k);
  br.push_back(1.0 - X);
  br.push_back(1.0);
  for (int i = 1; i < n - 1; ++i)
    if (g.nodes(i) > eps) br.push_back(g.nodes(i));
  std::sort(br.begin(), br.end());
  std::vector<double> breaks;
  for (double b : br)
    if (breaks.empty() || b - breaks.back() > 1e-12) breaks.push_back(b);
  // snap the edge so the middle region ends exactly on a breakpoint
  const int n_all = static_cast<int>(breaks.size()) - 1;
  int n_mid = 0;
  while (n_mid < n_all && breaks[n_mid + 1] <= 1.0 - X + 1e-12) ++n_mid;

  const PanelRule rule = panel_rule(opt.panel_nodes);
  const Panels P = make_panels(breaks, rule);
  const int m = P.m;
  const int N_all = n_all * m, N_mid = n_mid * m;

  // homogeneous solutions at the panel points
  Vec u_an(N_all), u_reg(N_all), u_s(N_all);
  {
    std::vector<double> up;
    std::vector<int> up_idx;
    std::vector<std::pair<double, int>> down;
    for (int k = 0; k < N_all; ++k) {
      const double r = P.pts[k];
      if (k < N_mid || r < 0.95) {
        if (r <= 0.45) u_an(k) = an.eval(r).u;
        else {
          up.push_back(r);
          up_idx.push_back(k);
        }
      }
      if (r >= 0.75) {
        u_reg(k) = reg.eval(r).u;
        // the singular branch vanishes at rho = 1 since Re(3/2 - lambda) > 0 here
        u_s(k) = r < 1.0 ? sng.eval(r).u / Ws : cplx(0.0);
      } else {
        down.push_back({r, k});
      }
    }
    // targets must be strictly monotone
    auto run = [&](const LocalSolution& s, double r0, std::vector<std::pair<double, int>> pts, bool ascending, Vec& out,
                   cplx scale) {
      std::sort(pts.begin(), pts.end());
      if (!ascending) std::reverse(pts.begin(), pts.end());
      std::vector<double> targets;
      std::vector<std::vector<int>> owners;
      for (const auto& [r, k] : pts) {
        if (!targets.empty() && std::abs(targets.back() - r) < 1e-15) owners.back().push_back(k);
        else {
          targets.push_back(r);
          owners.push_back({k});
        }
      }
      if (targets.empty()) return;
      const ValueDerivC v0 = s.eval(r0);
      const auto sol = integrate_ode(OdeCoefficients{lambda, potential}, r0, v0.u, v0.du, targets, opt.rtol);
      for (size_t t = 0; t < targets.size(); ++t)
        for (int k : owners[t]) out(k) = sol[t].u * scale;
    };
    std::vector<std::pair<double, int>> up_pairs;
    for (size_t i = 0; i < up.size(); ++i) up_pairs.push_back({up[i], up_idx[i]});
    run(an, 0.45, up_pairs, true, u_an, 1.0);
    run(reg, 0.75, down, false, u_reg, 1.0);
    run(sng, 0.75, down, false, u_s, 1.0 / Ws);
    for (int k = 0; k < N_all; ++k)
      if (!(k < N_mid || P.pts[k] < 0.95)) u_an(k) = A * u_reg(k) + B * u_s(k);
  }

  const Eigen::MatrixXd Ip = interp_rows(g, P.pts, false), Ipo = interp_rows(g, P.pts, true);
  const Vec Fp = Ip.cast<cplx>() * Fg, dFp = Ipo.cast<cplx>() * dFg;

  // endpoint series in x = 1 - rho
  const int ns = 40;
  std::vector<cplx> rc(ns), sc(ns);
  for (int k = 0; k < ns; ++k) {
    rc[k] = k < static_cast<int>(reg.coeffs.size()) ? reg.scale * reg.coeffs[k] : 0.0;
    sc[k] = k < static_cast<int>(sng.coeffs.size()) ? sng.scale * sng.coeffs[k] / Ws : 0.0;
  }
  const std::vector<cplx> wser = endpoint_weight_series(beta, ns);
  // dU1/drho = x^beta e(x)/B, dUs/drho = gs(x)
  const std::vector<cplx> e = series_product(wser, rc, ns);
  const std::vector<cplx> gs = series_product(wser, sc, ns);
  auto poly = [](const std::vector<cplx>& c, double x) {
    cplx s = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) s = s * x + c[k];
    return s;
  };
  // Q1(x) = (1/B) sum e_k x^{beta+k+1}/(beta+k+1), so U1 = kappa - Q1 near 1
  auto Q1 = [&](double x) {
    cplx s = 0.0;
    for (int k = 0; k < ns; ++k) s += e[k] * std::pow(x, double(k)) / (beta + double(k + 1));
    return s * std::exp((beta + 1.0) * std::log(x)) / B;
  };

  // leading behaviour below eps: u_reg, u_s ~ alpha rho^{-4}, u_an ~ 1
  const cplx alpha_r = std::pow(eps, 4) * u_reg(0), alpha_s = std::pow(eps, 4) * u_s(0);
  const cplx U1_eps = alpha_r * eps * eps / (2.0 * B);
  const cplx Us_eps = alpha_s * eps * eps / 2.0;
  const cplx K0_eps = u_an(0) * Fp(0) * std::pow(eps, 6) / (6.0 * B);

  Vec dU1(N_all), dUs(N_all), dK0(N_all);
  dU1.setZero();
  dK0.setZero();
  for (int k = 0; k < N_all; ++k) {
    const double r = P.pts[k];
    if (k < N_mid) {
      const cplx w = std::pow(r, 5) * weight(lambda, r);
      dU1(k) = u_reg(k) * w / B;
      dUs(k) = u_s(k) * w;
      dK0(k) = u_an(k) * Fp(k) * w / B;
    } else {
      dUs(k) = poly(gs, 1.0 - r);
    }
  }
  const Vec U1 = cumulate(P, rule, dU1, U1_eps, n_mid);
  const Vec Us = cumulate(P, rule, dUs, Us_eps, n_all);
  const Vec K0 = cumulate(P, rule, dK0, K0_eps, n_mid);
  const Vec Js = cumulate(P, rule, Us.cwiseProduct(dFp), Us_eps * dFp(0) * eps / 4.0, n_all);
  Vec dP = U1.cwiseProduct(dFp);
  for (int k = N_mid; k < N_all; ++k) dP(k) = 0.0;
  const Vec Pc = cumulate(P, rule, dP, 0.0, n_mid);

  const cplx kappa = U1(N_mid - 1) + Q1(X);
  const cplx F1 = g.interpolate(Fg, 1.0);
  const cplx c = kappa * F1;

  // F'(1 - X t) ~ sum_j phi_j t^j on the endpoint layer
  Eigen::VectorXcd phi;
  {
    std::vector<double> xs(opt.fit_nodes);
    for (int j = 0; j < opt.fit_nodes; ++j) xs[j] = 1.0 - X * 0.5 * (1.0 - std::cos(M_PI * j / (opt.fit_nodes - 1)));
    const Vec y = interp_rows(g, xs, true).cast<cplx>() * dFg;
    Eigen::MatrixXcd V(opt.fit_nodes, opt.fit_degree + 1);
    for (int j = 0; j < opt.fit_nodes; ++j) {
      const double t = (1.0 - xs[j]) / X;
      for (int d = 0; d <= opt.fit_degree; ++d) V(j, d) = std::pow(t, d);
    }
    phi = V.colPivHouseholderQr().solve(y);
  }
  // int_0^x Q1(x') F'(1-x') dx'
  auto QF = [&](double x) {
    if (x <= 0.0) return cplx(0.0);
    const double t = x / X;
    cplx s = 0.0;
    for (int k = 0; k < ns; ++k) {
      const cplx ek = e[k] * std::pow(X, double(k)) / (beta + double(k + 1));
      if (std::abs(ek) < 1e-30) continue;
      for (int d = 0; d <= opt.fit_degree; ++d) {
        const cplx p = beta + double(k + d + 2);
        s += ek * phi(d) * std::pow(t, double(k + d)) / p;
      }
    }
    return s * X * std::exp((beta + 1.0) * std::log(X)) * std::exp((beta + 1.0) * std::log(t)) * t / B;
  };
  // I1(rho) = int_rho^1 U1 F'
  const cplx F_edge = Fp(N_mid - 1);
  const cplx I1_edge = kappa * (F1 - F_edge) - QF(X);
  auto I1_mid = [&](int k) { return I1_edge + Pc(N_mid - 1) - Pc(k); };
  const cplx I1_0 = I1_mid(0) + U1_eps * dFp(0) * eps / 4.0;

  // solution at the grid nodes; interior nodes are panel breakpoints
  Vec u1(n);
  auto find_point = [&](double r) {
    const auto it = std::lower_bound(P.breaks.begin(), P.breaks.end(), r - 1e-13);
    const int b = static_cast<int>(it - P.breaks.begin());
    // breakpoint b is the last point of panel b-1
    return b * m - 1;
  };
  for (int i = 0; i < n; ++i) {
    const double r = g.nodes(i);
    if (i == 0) {
      u1(i) = c - I1_0;
      continue;
    }
    if (i == n - 1) {
      u1(i) = c * A + reg.scale * reg.coeffs[0] * (Us(N_all - 1) * F1 - A * I1_0 - Js(N_all - 1));
      continue;
    }
    const int k = find_point(r);
    const cplx Fr = Fp(k);
    if (r <= 0.5) {
      u1(i) = u_an(k) * (c - U1(k) * Fr - I1_mid(k)) + u_reg(k) * K0(k);
    } else {
      cplx U1r, I1r;
      if (k < N_mid) {
        U1r = U1(k);
        I1r = I1_mid(k);
      } else {
        const double x = 1.0 - r;
        U1r = kappa - Q1(x);
        I1r = kappa * (F1 - Fr) - QF(x);
      }
      u1(i) = c * u_an(k) - B * u_s(k) * (U1r * Fr + I1r) + u_reg(k) * (Us(k) * Fr - A * I1_0 - Js(k));
    }
  }
  if (diag) *diag = {A, B, kappa, c, conn.wronskian_drift};
  const Vec du1 = g.d1.cast<cplx>() * u1;
  const Vec u2 = (lambda + 1.0) * u1 + g.nodes.cast<cplx>().cwiseProduct(du1) - f.phi1;
  return StatePair(f.grid, u1, u2);
}

StatePair lambda1_green(const StatePair& f) {
  f.validate();
  const RadialGrid& g = *f.grid;
  const int n = g.n;
  Vec Fg, dFg;
  forcing_samples(f, 3.0, Fg, dFg);
  // panels in theta between consecutive node angles
  const int q = 20;
  Vec I_lo(n), I_hi(n);
  Eigen::VectorXd th(n);
  for (int i = 0; i < n; ++i) th(i) = std::asin(std::min(1.0, g.nodes(i)));
  th(n - 1) = M_PI / 2.0;
  std::vector<cplx> seg_lo(n, 0.0), seg_hi(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) {
    Eigen::VectorXd x, w;
    gauss_legendre(q, th(i), th(i + 1), x, w);
    std::vector<double> s(q);
    for (int j = 0; j < q; ++j) s[j] = std::sin(x(j));
    const Vec Fs = interp_rows(g, s, false).cast<cplx>() * Fg;
    for (int j = 0; j < q; ++j) {
      const double sn = s[j], cs = std::cos(x(j));
      seg_hi[i + 1] += w(j) * sn * (2.0 - sn * sn) * Fs(j) / 2.0;
      seg_lo[i + 1] += w(j) * std::pow(sn, 5) * Fs(j) / (2.0 * (1.0 + cs) * (1.0 + cs));
    }
  }
  I_lo(0) = 0.0;
  for (int i = 1; i < n; ++i) I_lo(i) = I_lo(i - 1) + seg_lo[i];
  I_hi(n - 1) = 0.0;
  for (int i = n - 2; i >= 0; --i) I_hi(i) = I_hi(i + 1) + seg_hi[i + 1];
  Vec u1(n);
  for (int i = 0; i < n; ++i) {
    const double r = g.nodes(i);
    const double p1 = free_psi1(r).u.real();
    u1(i) = p1 * I_hi(i);
    if (i > 0) u1(i) += free_psi2(r).u.real() * I_lo(i);
  }
  const Vec du1 = g.d1.cast<cplx>() * u1;
  const Vec u2 = 2.0 * u1 + g.nodes.cast<cplx>().cwiseProduct(du1) - f.phi1;
  return StatePair(f.grid, u1, u2);
}

}  // namespace blowup
