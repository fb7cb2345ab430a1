#pragma once

// Finite-difference machinery for the differential-operator identities.
// The Laguerre functions extend holomorphically in the matrix entries, so
// gradients and Hessians treat every entry as an independent complex
// variable; directional steps are taken along single entry directions
// E_ij.

#include <Eigen/Dense>
#include <functional>

#include "conelag/core.hpp"

namespace conelag::diffops {

struct FiniteDiffSpec {
  // Step factors, scaled by (1 + |x|).  First derivatives tolerate a small
  // step; second derivatives need a larger one to keep the e/h^2 roundoff
  // term below the identity tolerances.
  double grad_step = 1e-5;
  double hess_step = 2e-4;
};

using MatrixFn = std::function<Complex(const Eigen::MatrixXcd&)>;
using ScalarFn = std::function<double(double)>;

/// Euler operator E f(x) = d/dt f(e^t x) at t = 0, by central difference.
template <typename F, typename X>
double euler_derivative(const F& f, const X& x, double h) {
  return (f(x.scaled(std::exp(h))) - f(x.scaled(std::exp(-h)))) / (2.0 * h);
}

inline Complex entry_derivative(const MatrixFn& f, const Eigen::MatrixXcd& z, int i,
                                int j, double h) {
  Eigen::MatrixXcd zp = z, zm = z;
  zp(i, j) += h;
  zm(i, j) -= h;
  return (f(zp) - f(zm)) / (2.0 * h);
}

namespace detail {

inline Complex second_stencil(const MatrixFn& f, const Eigen::MatrixXcd& z, int i,
                              int j, int k, int l, double h, const Complex& f0) {
  if (i == k && j == l) {
    Eigen::MatrixXcd zp = z, zm = z;
    zp(i, j) += h;
    zm(i, j) -= h;
    return (f(zp) - 2.0 * f0 + f(zm)) / (h * h);
  }
  Eigen::MatrixXcd zpp = z, zpm = z, zmp = z, zmm = z;
  zpp(i, j) += h;
  zpp(k, l) += h;
  zpm(i, j) += h;
  zpm(k, l) -= h;
  zmp(i, j) -= h;
  zmp(k, l) += h;
  zmm(i, j) -= h;
  zmm(k, l) -= h;
  return (f(zpp) - f(zpm) - f(zmp) + f(zmm)) / (4.0 * h * h);
}

}  // namespace detail

/// Richardson-extrapolated central second difference, O(h^4) truncation.
inline Complex entry_second_derivative(const MatrixFn& f, const Eigen::MatrixXcd& z,
                                       int i, int j, int k, int l, double h) {
  Complex f0 = f(z);
  Complex coarse = detail::second_stencil(f, z, i, j, k, l, h, f0);
  Complex fine = detail::second_stencil(f, z, i, j, k, l, 0.5 * h, f0);
  return (4.0 * fine - coarse) / 3.0;
}

/// Values of the three trace operators at the Hermitian point s, in the
/// convention where the gradient matrix has (grad)_{ab} = d/dz_{ba}, so that
/// tr(A grad) differentiates along A and tr(s grad), tr(s grad grad) close
/// on spectral functions:
///   t1   = tr(grad) f          = sum_a  d_aa f
///   ts1  = tr(s grad) f        = sum_ij s_ij d_ij f
///   ts2  = tr(s grad grad) f   = sum_ijk s_ij d_kj d_ik f
struct TraceDerivatives {
  Complex t1, ts1, ts2;
  Complex value;
};

inline TraceDerivatives trace_derivatives(const MatrixFn& f, const Eigen::MatrixXcd& s,
                                          const FiniteDiffSpec& fd) {
  const int n = int(s.rows());
  const double scale = 1.0 + s.norm();
  const double h1 = fd.grad_step * scale;
  const double h2 = fd.hess_step * scale;

  TraceDerivatives out;
  out.value = f(s);

  Eigen::MatrixXcd grad(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) grad(i, j) = entry_derivative(f, s, i, j, h1);
  out.t1 = grad.trace();
  out.ts1 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.ts1 += s(i, j) * grad(i, j);

  out.ts2 = 0.0;
  std::map<std::array<int, 4>, Complex> hess;
  auto h2nd = [&](int a, int b, int c, int d) {
    std::array<int, 4> key{a, b, c, d};
    std::array<int, 4> keyT{c, d, a, b};
    if (keyT < key) key = keyT;
    auto it = hess.find(key);
    if (it == hess.end())
      it = hess.emplace(key, entry_second_derivative(f, s, key[0], key[1], key[2],
                                                     key[3], h2))
               .first;
    return it->second;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out.ts2 += s(i, j) * h2nd(k, j, i, k);
  return out;
}

/// tr(-s grad grad - nu grad + s) f: the operator whose eigenfunctions the
/// Laguerre functions are.
inline Complex spectral_operator(const TraceDerivatives& d, const Eigen::MatrixXcd& s,
                                 double nu) {
  return -d.ts2 - nu * d.t1 + s.trace() * d.value;
}

/// (1/2) tr(s grad grad + (nu I + 2s) grad + (nu I + s)) f.
inline Complex lowering_operator(const TraceDerivatives& d, const Eigen::MatrixXcd& s,
                                 double nu) {
  const double n = double(s.rows());
  return 0.5 * (d.ts2 + nu * d.t1 + 2.0 * d.ts1 + (nu * n + s.trace()) * d.value);
}

/// (1/2) tr(-s grad grad + (-nu I + 2s) grad + (nu I - s)) f.
inline Complex raising_operator(const TraceDerivatives& d, const Eigen::MatrixXcd& s,
                                double nu) {
  const double n = double(s.rows());
  return 0.5 * (-d.ts2 - nu * d.t1 + 2.0 * d.ts1 + (nu * n - s.trace()) * d.value);
}

/// (t D^2 + b(t) D + c(t)) f at a scalar point; Richardson-extrapolated
/// central differences.
inline double scalar_second_order(const ScalarFn& f, double t, double b, double c,
                                  const FiniteDiffSpec& fd) {
  const double h = fd.hess_step * (1.0 + std::abs(t));
  const double f0 = f(t);
  auto d12 = [&](double step) {
    double fp = f(t + step), fm = f(t - step);
    return std::pair<double, double>{(fp - fm) / (2.0 * step),
                                     (fp - 2.0 * f0 + fm) / (step * step)};
  };
  auto [d1c, d2c] = d12(h);
  auto [d1f, d2f] = d12(0.5 * h);
  double d1 = (4.0 * d1f - d1c) / 3.0;
  double d2 = (4.0 * d2f - d2c) / 3.0;
  return t * d2 + b * d1 + c * f0;
}

}  // namespace conelag::diffops
