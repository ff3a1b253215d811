#include <cmath>
#include <random>

#include "blowup/errors.hpp"
#include "blowup/norms.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace blowup;

namespace {

Eigen::VectorXcd sample(const RadialGrid& g, const std::function<double(double)>& f) {
  Eigen::VectorXcd v(g.n);
  for (int i = 0; i < g.n; ++i) v(i) = f(g.nodes(i));
  return v;
}

double g1(double r) { return 1.0 / (2.0 + r * r); }
double g1p(double r) { return -2.0 * r / std::pow(2.0 + r * r, 2); }
double g1pp(double r) { return -2.0 / std::pow(2.0 + r * r, 2) + 8.0 * r * r / std::pow(2.0 + r * r, 3); }
double g2(double r) { return 4.0 / std::pow(2.0 + r * r, 2); }
double g2p(double r) { return -16.0 * r / std::pow(2.0 + r * r, 3); }

// random even polynomial with coefficients in [-1,1]
std::function<double(double)> random_even_poly(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(degree / 2 + 1);
  for (auto& x : c) x = u(rng);
  return [c](double r) {
    double s = 0.0, p = 1.0;
    for (double a : c) { s += a * p; p *= r * r; }
    return s;
  };
}

}  // namespace

TEST_CASE("sobolev norm examples") {
  auto g = build_grid(32);
  Eigen::VectorXcd one = Eigen::VectorXcd::Ones(g->n);
  CHECK(std::abs(sobolev_norm(one, {0, 6, 1.0}, *g) - std::sqrt(1.0 / 6.0)) < 1e-12);
  Eigen::VectorXcd r2 = sample(*g, [](double r) { return r * r; });
  CHECK(std::abs(sobolev_norm(r2, {1, 6, 1.0}, *g) - std::sqrt(0.6)) < 1e-12);

  const double ref = std::sqrt(
      oracle::integrate([](double r) { return g1(r) * g1(r) * std::pow(r, 5); }, 0, 1) +
      oracle::integrate([](double r) { return g1p(r) * g1p(r) * std::pow(r, 5); }, 0, 1) +
      oracle::integrate([](double r) {
        const double l = g1pp(r) + (r > 0 ? 5.0 / r * g1p(r) : 5.0 * g1pp(0.0));
        return l * l * std::pow(r, 5);
      }, 0, 1));
  CHECK(std::abs(sobolev_norm(sample(*g, g1), {2, 6, 1.0}, *g) - ref) < 1e-8);
  CHECK_THROWS_AS(sobolev_norm(one, {3, 6, 1.0}, *g), Error);
  CHECK_THROWS_AS(sobolev_norm(one, {1, 5, 1.0}, *g), Error);
}

TEST_CASE("sobolev norm on a scaled ball") {
  auto g = build_grid(24);
  const double R = 1.5;
  Eigen::VectorXcd f = sample(*g, [R](double x) { return (R * x) * (R * x); });  // r^2 on B_R
  // int_0^R r^4 r^3 + int_0^R 4 r^2 r^3 in d = 4
  const double ref = std::sqrt(std::pow(R, 8) / 8.0 + 4.0 * std::pow(R, 6) / 6.0);
  CHECK(std::abs(sobolev_norm(f, {1, 4, R}, *g) - ref) < 1e-11);
}

TEST_CASE("htilde inner product examples") {
  auto g = build_grid(32);
  StatePair c(g, Eigen::VectorXcd::Ones(g->n), Eigen::VectorXcd::Ones(g->n));
  CHECK(std::abs(htilde_inner(c, c) - 2.0) < 1e-12);
  StatePair u(g, sample(*g, [](double r) { return r * r; }), Eigen::VectorXcd::Zero(g->n));
  CHECK(std::abs(htilde_inner(u, u) - 9.0) < 1e-10);

  StatePair gm(g, sample(*g, g1), sample(*g, g2));
  const double ref = 2.0 * oracle::integrate([](double r) { return g1pp(r) * g1pp(r) * std::pow(r, 5); }, 0, 1) +
                     10.0 * oracle::integrate([](double r) { return g1p(r) * g1p(r) * std::pow(r, 3); }, 0, 1) +
                     2.0 * oracle::integrate([](double r) { return g2p(r) * g2p(r) * std::pow(r, 5); }, 0, 1) +
                     g1(1) * g1(1) + g2(1) * g2(1);
  cplx val = htilde_inner(gm, gm);
  CHECK(std::abs(val.imag()) < 1e-14);
  CHECK(std::abs(val.real() - ref) < 1e-8);

  auto g2grid = build_grid(16);
  StatePair other(g2grid);
  CHECK_THROWS_AS(htilde_inner(c, other), Error);
}

TEST_CASE("htilde inner product is conjugate symmetric and positive") {
  auto g = build_grid(32);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    auto a = random_even_poly(rng, 10), b = random_even_poly(rng, 10);
    auto c = random_even_poly(rng, 10), d = random_even_poly(rng, 10);
    StatePair u(g, sample(*g, a) + cplx(0, 1) * sample(*g, b), sample(*g, c));
    StatePair v(g, sample(*g, d), sample(*g, b) - cplx(0, 2) * sample(*g, a));
    CHECK(std::abs(htilde_inner(u, v) - std::conj(htilde_inner(v, u))) <= 1e-12 * std::abs(htilde_inner(u, v)));
    cplx uu = htilde_inner(u, u);
    CHECK(uu.real() >= 0.0);
    CHECK(std::abs(uu.imag()) <= 1e-12 * uu.real());
  }
}

TEST_CASE("hardy ratios") {
  auto g = build_grid(32);
  Eigen::VectorXcd one = Eigen::VectorXcd::Ones(g->n);
  CHECK(std::abs(hardy_ratio(one, HardyVariant::L2_weight_rho, *g) - 3.0) < 1e-12);
  CHECK_THROWS_AS(hardy_ratio(Eigen::VectorXcd::Zero(g->n), HardyVariant::L2_weight_rho, *g), Error);

  auto g64 = build_grid(64);
  for (auto variant : {HardyVariant::L2_weight_rho, HardyVariant::H1_weight_rho3, HardyVariant::d4, HardyVariant::d6}) {
    for (double R : {0.5, 1.0, 1.4}) {
      std::mt19937_64 rng(11);
      double m32 = 0.0, m64 = 0.0;
      for (int t = 0; t < 100; ++t) {
        auto p = random_even_poly(rng, 10);
        auto scaled = [&](double x) { return p(R * x); };
        m32 = std::max(m32, hardy_ratio(sample(*g, scaled), variant, *g, R));
        m64 = std::max(m64, hardy_ratio(sample(*g64, scaled), variant, *g64, R));
      }
      CHECK(std::isfinite(m32));
      CHECK(std::abs(m64 / m32 - 1.0) < 0.05);
    }
  }
}

TEST_CASE("Lq norms") {
  auto g = build_grid(24);
  Eigen::VectorXcd one = Eigen::VectorXcd::Ones(g->n);
  CHECK(std::abs(lq_norm(one, 6.0, *g) - std::pow(1.0 / 6.0, 1.0 / 6.0)) < 1e-13);
  CHECK(std::abs(lq_norm(2.0 * one, 12.0, *g) - 2.0 * std::pow(1.0 / 6.0, 1.0 / 12.0)) < 1e-13);
  CHECK(lq_norm(3.0 * one, std::numeric_limits<double>::infinity(), *g) == doctest::Approx(3.0));
}
