#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <memory>

namespace blowup {

using cplx = std::complex<double>;

// Radial collocation grid on [0,1].
//
// The nodes are the nonnegative half of a symmetric Chebyshev-Gauss-Lobatto
// grid with 2n-1 points on [-1,1], so nodes[0] = 0 and nodes[n-1] = 1.
// Samples are read as even functions of rho (smooth radial fields); the
// operators act on the even extension. d1_odd differentiates odd samples.
struct RadialGrid {
  int n = 0;
  Eigen::VectorXd nodes;
  Eigen::MatrixXd d1;
  Eigen::MatrixXd d2;
  Eigen::MatrixXd d1_odd;
  // d2 + (5/rho) d1, with the origin row replaced by 6 d2 row.
  Eigen::MatrixXd lap6;
  // quad_weights = weight(0): sum_i w_i f_i ~ int_0^1 f drho for even f.
  Eigen::VectorXd quad_weights;

  // Weights for int_0^1 rho^k f(rho) drho with f even, 0 <= k <= 7.
  // Exact for even polynomial f of degree <= 2n-2.
  const Eigen::VectorXd& weight(int k) const;
  // Gauss-Legendre rule on [0,1] with 2n+4 points and the matrices taking
  // samples to the value, first and second derivative of the even
  // interpolant at its nodes. Quadratic forms built from these are exact
  // for the interpolants and positive semidefinite.
  Eigen::VectorXd gl_nodes, gl_weights;
  Eigen::MatrixXd gl_eval0, gl_eval1, gl_eval2;

  // Even-extension interpolation matrix from nodes to the given points in [0,1].
  Eigen::MatrixXd interp_matrix(const Eigen::VectorXd& x) const;
  // Odd-extension interpolation (samples of an odd function).
  Eigen::MatrixXd interp_matrix_odd(const Eigen::VectorXd& x) const;
  double interpolate(const Eigen::VectorXd& f, double x) const;
  cplx interpolate(const Eigen::VectorXcd& f, double x) const;

  // Full symmetric grid data used by the barycentric formula.
  Eigen::VectorXd full_nodes;
  Eigen::VectorXd full_bary;
  std::array<Eigen::VectorXd, 8> weights_by_power;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr build_grid(int n);

// Gauss-Legendre nodes and weights on [a,b].
void gauss_legendre(int m, double a, double b, Eigen::VectorXd& x, Eigen::VectorXd& w);

// First and second Chebyshev-Lobatto differentiation matrices on m points
// x_j = cos(pi j/(m-1)). Node differences use the trigonometric form and the
// diagonals use the negative-sum trick, which keeps the endpoint rows accurate.
template <class S>
void cheb_diff(int m, Eigen::Matrix<S, -1, 1>& x, Eigen::Matrix<S, -1, -1>& D, Eigen::Matrix<S, -1, -1>& D2) {
  using std::atan;
  using std::sin;
  const int N = m - 1;
  const S pi = S(4) * atan(S(1));
  x.resize(m);
  Eigen::Matrix<S, -1, 1> th(m), c(m);
  for (int j = 0; j < m; ++j) {
    th(j) = pi * S(j) / S(N);
    x(j) = sin(pi * S(N - 2 * j) / S(2 * N));
    c(j) = S((j == 0 || j == N) ? 2 : 1) * S((j % 2) ? -1 : 1);
  }
  D.setZero(m, m);
  D2.setZero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const S dx = S(2) * sin((th(j) + th(i)) / S(2)) * sin((th(j) - th(i)) / S(2));
      D(i, j) = (c(i) / c(j)) / dx;
    }
    D(i, i) = -D.row(i).sum();
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const S dx = S(2) * sin((th(j) + th(i)) / S(2)) * sin((th(j) - th(i)) / S(2));
      D2(i, j) = S(2) * (D(i, j) * D(i, i) - D(i, j) / dx);
    }
    D2(i, i) = -D2.row(i).sum();
  }
}

// Even-parity operators on the nonnegative half of a (2n-1)-point grid.
template <class S>
struct ParityOps {
  Eigen::Matrix<S, -1, 1> nodes;
  Eigen::Matrix<S, -1, -1> d1, d2, d1_odd;
  Eigen::Matrix<S, -1, 1> full_nodes;
};

template <class S>
ParityOps<S> parity_ops(int n) {
  const int m = 2 * n - 1;
  Eigen::Matrix<S, -1, 1> x;
  Eigen::Matrix<S, -1, -1> D, D2;
  cheb_diff<S>(m, x, D, D2);
  ParityOps<S> ops;
  ops.full_nodes = x;
  ops.nodes.resize(n);
  for (int i = 0; i < n; ++i) ops.nodes(i) = x(n - 1 - i);
  ops.nodes(0) = S(0);
  ops.nodes(n - 1) = S(1);
  ops.d1.setZero(n, n);
  ops.d2.setZero(n, n);
  ops.d1_odd.setZero(n, n);
  // row i of the half grid is full row n-1-i; column i folds full columns n-1-i and n-1+i
  for (int i = 0; i < n; ++i) {
    const int fi = n - 1 - i;
    for (int k = 0; k < n; ++k) {
      const int a = n - 1 - k, b = n - 1 + k;
      if (k == 0) {
        ops.d1(i, k) = D(fi, a);
        ops.d2(i, k) = D2(fi, a);
      } else {
        ops.d1(i, k) = D(fi, a) + D(fi, b);
        ops.d2(i, k) = D2(fi, a) + D2(fi, b);
        ops.d1_odd(i, k) = D(fi, a) - D(fi, b);
      }
    }
  }
  ops.d1.row(0).setZero();  // derivative of an even function vanishes at the centre
  // restore exact annihilation of constants after folding
  for (int i = 0; i < n; ++i) {
    S s1 = S(0), s2 = S(0);
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      s1 += ops.d1(i, k);
      s2 += ops.d2(i, k);
    }
    ops.d1(i, i) = -s1;
    ops.d2(i, i) = -s2;
  }
  return ops;
}

}  // namespace blowup
