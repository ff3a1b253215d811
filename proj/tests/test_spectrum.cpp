#include <cmath>

#include "blowup/errors.hpp"
#include "blowup/geometry.hpp"
#include "blowup/spectrum.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace blowup;
using testing_helpers::sample_state;

TEST_CASE("generator assembly") {
  auto g = build_grid(64);
  auto M = assemble_generator(g, true);
  auto gs = gauge_state(g);
  auto r = M.apply(gs) - gs;
  CHECK(r.stacked().cwiseAbs().maxCoeff() / gs.stacked().cwiseAbs().maxCoeff() < 1e-8);

  auto g32 = build_grid(32);
  auto M0 = assemble_generator(g32, false);
  auto one = sample_state(g32, [](double) { return 1.0; }, [](double) { return 1.0; });
  auto l = M0.apply(one);
  for (int i = 1; i < g32->n - 1; ++i) {
    CHECK(std::abs(l.phi1(i)) < 1e-10);
    CHECK(std::abs(l.phi2(i) + 2.0) < 1e-10);
  }
  // potential on/off differ by the diagonal 48/(rho^2+2)^2 in the (2,1) block
  auto Mfree = assemble_generator(g, false);
  Eigen::MatrixXd diff = M.entries - Mfree.entries;
  const int n = g->n;
  for (int i = 0; i < n; ++i) CHECK(M.entries(n + i, i) == Mfree.entries(n + i, i) + potential_value(g->nodes(i)));
  diff.block(n, 0, n, n).diagonal().setZero();
  CHECK(diff.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("eigenpairs and filtering") {
  auto g48 = build_grid(48), g64 = build_grid(64);
  auto M48 = assemble_generator(g48, true), M64 = assemble_generator(g64, true);
  auto e48 = eigenpairs(M48), e64 = eigenpairs(M64);
  CHECK(std::abs(e48.front().lambda - 1.0) < 1e-6);
  auto rep = filter_physical(M48, e48, e64);
  int unstable = 0;
  for (size_t i = 0; i < rep.eigenvalues.size(); ++i) {
    if (rep.persistent[i] && rep.eigenvalues[i].real() > 0.05) {
      ++unstable;
      CHECK(std::abs(rep.eigenvalues[i] - 1.0) < 1e-6);
      CHECK(rep.endpoint_component[i] < 1e-6);
    }
  }
  CHECK(unstable == 1);

  // biorthogonality among persistent pairs
  std::vector<const EigenPair*> kept;
  for (const auto& p : e48)
    for (auto lam : rep.persistent_eigenvalues())
      if (p.lambda == lam) kept.push_back(&p);
  for (auto* a : kept)
    for (auto* b : kept) {
      const cplx d = a->left.transpose() * b->right;
      CHECK(std::abs(d - (a == b ? 1.0 : 0.0)) < 1e-8);
    }

  // a random non-matching value is rejected
  std::vector<EigenPair> fake = {{cplx(0.3, 0.7), e48.front().right, e48.front().left}};
  auto rep2 = filter_physical(M48, fake, e64);
  CHECK_FALSE(rep2.persistent[0]);

  // the free operator has no persistent eigenvalue in Re > 0.05
  auto F48 = assemble_generator(g48, false), F64 = assemble_generator(g64, false);
  auto rep0 = filter_physical(F48, eigenpairs(F48), eigenpairs(F64));
  for (size_t i = 0; i < rep0.eigenvalues.size(); ++i)
    if (rep0.persistent[i]) CHECK(rep0.eigenvalues[i].real() <= 0.05);
}

TEST_CASE("endpoint component detects a singular power") {
  auto g = build_grid(48);
  const cplx lam(0.2, 1.0);
  Eigen::VectorXcd smooth(g->n), rough(g->n);
  for (int i = 0; i < g->n; ++i) {
    const double r = g->nodes(i);
    smooth(i) = 1.0 / (2.0 + r * r);
    rough(i) = smooth(i) + 0.1 * std::pow(cplx(1.0 - r * r, 0.0), 1.5 - lam);
  }
  CHECK(endpoint_singular_component(*g, lam, smooth) < 1e-8);
  CHECK(endpoint_singular_component(*g, lam, rough) > 1e-3);
}

TEST_CASE("rank one gauge") {
  auto g = build_grid(64);
  auto M = assemble_generator(g, true);
  CHECK(jordan_residual(M, gauge_state(g)) > 1e-3);
}

TEST_CASE("direct resolvent") {
  auto g = build_grid(48);
  auto M = assemble_generator(g, true);
  ResolventSolver rs(M);
  auto gs = gauge_state(g);
  // (2 - L) g = g, so the solution for F = 3.5 g is 3.5 g
  auto u = rs.solve(2.0, 3.5 * gs);
  // g is an eigenvector only up to the discretization residual
  CHECK((u - 3.5 * gs).stacked().cwiseAbs().maxCoeff() < 1e-8);
  try {
    rs.solve(1.0, gs);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResolventSingularity);
  }
  // bounded along Re lambda = 0.3
  double prev = rs.h_norm(cplx(0.3, 5.0));
  for (double w : {10.0, 20.0, 50.0}) {
    const double cur = rs.h_norm(cplx(0.3, w));
    CHECK(cur < 2.0 * prev);
    CHECK(std::isfinite(cur));
  }
}
