#pragma once

// Quadrature over the cone with the weighted measure
// d mu_nu(x) = Delta(x)^{nu - d/r} dx.
//
// Rank 1 uses generalized Gauss-Laguerre nodes for the weight
// x^{nu-1} e^{-sigma x} after the caller declares the dominant exponential
// decay of the integrand.  Rank 2 (real-symmetric cone) goes through the
// spectral decomposition x = k diag(l1, l2) k^T with Jacobian proportional
// to |l1 - l2|; the ordered eigenvalue region is parametrized as
// (l1, l2) = (v + delta, v) so every slice stays smooth, and both radial
// coordinates get Gauss-Laguerre rules scaled to the declared decay.  The
// proportionality constant of the measure is fixed once by calibration
// against the cone gamma function.

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "conelag/core.hpp"
#include "conelag/jordan.hpp"
#include "conelag/spherical.hpp"

namespace conelag::transforms {

using jordan::JordanElement;

struct GaussLaguerreRule {
  std::vector<double> nodes;
  std::vector<double> weights;  // for integral of f(u) u^alpha e^{-u} du
};

namespace detail {

/// L_k^{(alpha)}(x) and L_{k-1}^{(alpha)}(x) by the upward recurrence.
inline std::pair<long double, long double> laguerre_pair_ld(int n, long double alpha,
                                                            long double x) {
  long double lm1 = 1.0L;
  if (n == 0) return {lm1, 0.0L};
  long double l = 1.0L + alpha - x;
  for (int k = 1; k < n; ++k) {
    long double lnext = ((2.0L * k + alpha + 1.0L - x) * l - (k + alpha) * lm1) /
                        (long double)(k + 1);
    lm1 = l;
    l = lnext;
  }
  return {l, lm1};
}

inline GaussLaguerreRule gauss_laguerre_uncached(double alpha, int n) {
  // Golub-Welsch locates the nodes; the weights then come from the
  // Stroud-Secrest formula evaluated in extended precision.  The
  // eigenvector route would leave far-node weights with only absolute
  // accuracy (~eps^2), which is fatal once an integrand is scaled back by
  // e^{+u} against them; the closed-form weights stay relatively accurate
  // down to their underflow.
  Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    jm(k, k) = 2.0 * k + alpha + 1.0;
    if (k + 1 < n) {
      double b = std::sqrt((k + 1.0) * (k + 1.0 + alpha));
      jm(k, k + 1) = b;
      jm(k + 1, k) = b;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jm, Eigen::EigenvaluesOnly);
  GaussLaguerreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const long double la = alpha;
  // log of Gamma(n+alpha+1)/n! / (n+1)^2
  const long double logc = std::lgamma(n + la + 1.0L) - std::lgamma(n + 1.0L) -
                           2.0L * std::log((long double)(n + 1));
  for (int i = 0; i < n; ++i) {
    long double x = es.eigenvalues()(i);
    for (int it = 0; it < 3; ++it) {
      auto [ln, lnm1] = laguerre_pair_ld(n, la, x);
      long double deriv = (n * ln - (n + la) * lnm1) / x;
      x -= ln / deriv;
    }
    auto [lnp1, ignore] = laguerre_pair_ld(n + 1, la, x);
    long double w =
        std::exp(logc + std::log(x) - 2.0L * std::log(std::fabs(lnp1)));
    rule.nodes[i] = (double)x;
    rule.weights[i] = (double)w;
  }
  return rule;
}

}  // namespace detail

/// Nodes/weights for int_0^inf f(u) u^alpha e^{-u} du; cached.
inline const GaussLaguerreRule& gauss_laguerre(double alpha, int n) {
  if (!(alpha > -1.0)) throw ConfigError("Gauss-Laguerre needs alpha > -1");
  using Key = std::pair<long long, int>;
  static std::map<Key, GaussLaguerreRule> cache;
  static std::mutex mtx;
  Key key{llround(alpha * 1e9), n};
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, detail::gauss_laguerre_uncached(alpha, n)).first;
  return it->second;
}

namespace detail {

/// Deterministic pairwise reduction; the summation order is independent of
/// how the terms were produced.
inline Complex pairwise_sum(std::vector<Complex>& v) {
  if (v.empty()) return 0.0;
  size_t n = v.size();
  while (n > 1) {
    size_t half = (n + 1) / 2;
    for (size_t i = 0; i < n / 2; ++i) v[i] = v[i] + v[i + half];
    n = half;
  }
  return v[0];
}

}  // namespace detail

using Integrand = std::function<Complex(const JordanElement&)>;

/// int_0^inf f(x) x^{nu-1} dx where f decays at least like e^{-decay * x}.
inline Complex rank1_weighted_integral(double nu, const Integrand& f, double decay,
                                       const ConeStructure& cone,
                                       const QuadratureSpec& quad) {
  if (!(decay > 0.0)) throw ConfigError("decay rate must be positive");
  const auto& rule = gauss_laguerre(nu - 1.0, quad.rank1_nodes);
  std::vector<Complex> terms(rule.nodes.size());
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    double x = rule.nodes[i] / decay;
    terms[i] = rule.weights[i] * f(JordanElement::scalar(cone, x)) *
               std::exp(rule.nodes[i]);
  }
  Complex s = detail::pairwise_sum(terms);
  return s * std::pow(decay, -nu);
}

namespace detail {

struct Rank2Grid {
  std::vector<double> angles;
  const GaussLaguerreRule* radial;  // alpha = nu - d/r
  const GaussLaguerreRule* gap;     // alpha = a (Vandermonde power)
};

/// Raw spectral-coordinate integral, without the measure constant:
/// (1/n_theta) sum_theta int int F(x(theta,v,delta))
///   (v (v+delta))^{nu - d/r} delta^a dv ddelta,
/// with per-angle exponential scaling read off the decay matrix.
inline Complex rank2_raw_integral(double nu, const Integrand& f,
                                  const Eigen::Matrix2d& decay,
                                  const ConeStructure& cone, const QuadratureSpec& quad,
                                  bool invariant) {
  const double p = nu - cone.dim_over_rank();
  const auto& rv = gauss_laguerre(p, quad.radial_nodes);
  const auto& rd = gauss_laguerre(double(cone.mult), quad.radial_nodes);
  const int n_theta = invariant ? 1 : quad.angle_nodes;
  const double two_pi = 6.283185307179586476925;
  std::vector<Complex> theta_terms(n_theta);
  for (int a = 0; a < n_theta; ++a) {
    double th = two_pi * a / n_theta;
    double c = std::cos(th), s = std::sin(th);
    Eigen::Matrix2d rot;
    rot << c, -s, s, c;
    Eigen::Matrix2d dloc = rot.transpose() * decay * rot;
    const double s1 = dloc(0, 0);  // decay along l1 = v + delta
    const double s2 = dloc(1, 1);  // decay along l2 = v
    if (!(s1 > 0.0) || !(s2 > 0.0))
      throw ConfigError("decay matrix must be positive definite");
    const double sv = s1 + s2;
    // Substituting u = v(s1+s2), w = delta s1 makes the declared decay
    // exactly e^{-u-w}, so both Gauss-Laguerre weights apply verbatim and
    // f is re-exponentiated by e^{u+w}.  Only (v+delta)^p stays in the
    // integrand.
    std::vector<Complex> terms;
    terms.reserve(rv.nodes.size() * rd.nodes.size());
    for (size_t i = 0; i < rv.nodes.size(); ++i) {
      const double v = rv.nodes[i] / sv;
      for (size_t j = 0; j < rd.nodes.size(); ++j) {
        const double delta = rd.nodes[j] / s1;
        const double l1 = v + delta, l2 = v;
        Eigen::Matrix2d x = rot * Eigen::Vector2d(l1, l2).asDiagonal().toDenseMatrix() *
                            rot.transpose();
        Complex fx = f(JordanElement::from_real(cone, x));
        double w = rv.weights[i] * rd.weights[j] * std::pow(l1, p);
        terms.push_back(w * fx * std::exp(rv.nodes[i] + rd.nodes[j]));
      }
    }
    Complex inner = detail::pairwise_sum(terms);
    theta_terms[a] = inner * std::pow(sv, -(p + 1.0)) * std::pow(s1, -(cone.mult + 1.0));
  }
  Complex acc = detail::pairwise_sum(theta_terms);
  return acc / double(n_theta);
}

}  // namespace detail

/// Measure constant of the rank-2 spectral parametrization, fixed by
/// matching the cone gamma integral at a reference exponent where the
/// radial rules are exact, then cross-checked at a second one.  Cached per
/// node count.
inline double rank2_measure_constant(const ConeStructure& cone,
                                     const QuadratureSpec& quad) {
  if (cone.rank != 2 || cone.mult != 1)
    throw UnsupportedCone("rank-2 quadrature covers the real symmetric cone");
  static std::map<int, double> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  if (auto it = cache.find(quad.radial_nodes); it != cache.end()) return it->second;

  Integrand expt = [](const JordanElement& x) {
    return Complex(std::exp(-jordan::trace(x)));
  };
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  // nu0, nu1 make the exponent nu - d/r a nonnegative integer, so the raw
  // integrals are exact up to roundoff.
  const double nu0 = 2.5, nu1 = 3.5;
  double raw0 = detail::rank2_raw_integral(nu0, expt, id, cone, quad, true).real();
  double constant = spherical::gindikin_gamma(nu0, cone) / raw0;
  double raw1 = detail::rank2_raw_integral(nu1, expt, id, cone, quad, true).real();
  double check = constant * raw1 / spherical::gindikin_gamma(nu1, cone);
  if (std::abs(check - 1.0) > quad.calibration_tol)
    throw UncalibratedQuadrature("calibration cross-check failed: rel err " +
                                 std::to_string(std::abs(check - 1.0)));
  cache[quad.radial_nodes] = constant;
  return constant;
}

/// int_Omega f d mu_nu.  `decay` declares the dominant exponential of f:
/// f(x) e^{(decay, x)} should be slowly varying.  `invariant` skips the
/// angular average for K cap H invariant integrands.
inline Complex cone_quadrature(const ConeStructure& cone, double nu, const Integrand& f,
                               const QuadratureSpec& quad,
                               const Eigen::Matrix2d& decay, bool invariant) {
  if (cone.rank == 1) return rank1_weighted_integral(nu, f, decay(0, 0), cone, quad);
  if (cone.rank != 2) throw UnsupportedRank("cone quadrature covers rank <= 2");
  double constant = rank2_measure_constant(cone, quad);
  return constant * detail::rank2_raw_integral(nu, f, decay, cone, quad, invariant);
}

/// Convenience overload: unit exponential decay e^{-Tr x}.
inline Complex cone_quadrature(const ConeStructure& cone, double nu, const Integrand& f,
                               const QuadratureSpec& quad, double decay_scale = 1.0,
                               bool invariant = false) {
  Eigen::Matrix2d d = Eigen::Matrix2d::Identity() * decay_scale;
  return cone_quadrature(cone, nu, f, quad, d, invariant);
}

/// Gamma_Omega(nu) by its defining integral; the verification oracle for the
/// product formula.
inline double gindikin_gamma_by_quadrature(double nu, const ConeStructure& cone,
                                           const QuadratureSpec& quad) {
  Integrand expt = [](const JordanElement& x) {
    return Complex(std::exp(-jordan::trace(x)));
  };
  return cone_quadrature(cone, nu, expt, quad, 1.0, true).real();
}

}  // namespace conelag::transforms
