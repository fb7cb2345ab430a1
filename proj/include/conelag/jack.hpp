#pragma once

// Jack symmetric polynomials in the P-normalization (unitriangular on
// monomial symmetric functions), with exact rational coefficients.  The
// spherical polynomials psi_m are Jack polynomials with parameter 2/a,
// rescaled to equal 1 at the identity; that rescaling lives in
// spherical.hpp.
//
// Coefficients come from the eigenfunction property of the Jack
// Laplace-Beltrami operator, which is triangular with respect to dominance
// on monomial symmetric functions.  The resulting recursion walks the
// partitions of |lambda| downward from lambda itself.

#include <map>
#include <mutex>
#include <vector>

#include "conelag/core.hpp"
#include "conelag/partition.hpp"

namespace conelag {

using JackCoeffs = std::map<Partition, Rational>;

namespace detail {

inline Rational jack_rho(const Partition& k, const Rational& alpha) {
  Rational s = 0;
  for (int i = 0; i < k.rank(); ++i) {
    Rational ki = k.part(i);
    s += ki * (ki - 1 - Rational(2, 1) / alpha * i);
  }
  return s;
}

inline JackCoeffs jack_coeffs_uncached(const Partition& lambda, const Rational& alpha) {
  const int r = lambda.rank();
  const int w = lambda.weight();
  // Partitions of the same weight, linearized compatibly with dominance.
  std::vector<Partition> mus = partitions_of_weight(r, w);
  JackCoeffs c;
  c[lambda] = 1;
  const Rational rho_l = jack_rho(lambda, alpha);
  for (const auto& mu : mus) {
    if (mu == lambda || !lambda.dominates(mu)) continue;
    Rational acc = 0;
    // Every upward move mu + t(e_i - e_j), i < j, resorted, reaches a
    // partition nu with mu < nu; its coefficient feeds back into mu.
    for (int i = 0; i < r; ++i) {
      for (int j = i + 1; j < r; ++j) {
        for (int t = 1; t <= mu.part(j); ++t) {
          std::vector<int> v = mu.parts();
          v[i] += t;
          v[j] -= t;
          std::sort(v.begin(), v.end(), std::greater<int>());
          Partition nu(v);
          auto it = c.find(nu);
          if (it == c.end() || it->second == 0) continue;
          acc += Rational(mu.part(i) - mu.part(j) + 2 * t) * it->second;
        }
      }
    }
    if (acc != 0) {
      Rational denom = rho_l - jack_rho(mu, alpha);
      c[mu] = Rational(2, 1) / alpha * acc / denom;
    }
  }
  // Drop exact zeros so tables stay sparse.
  for (auto it = c.begin(); it != c.end();)
    it = (it->second == 0) ? c.erase(it) : std::next(it);
  return c;
}

}  // namespace detail

/// Monomial coefficients of the Jack P-polynomial for `lambda` in
/// lambda.rank() variables.  Cached; safe for concurrent readers.
inline const JackCoeffs& jack_coefficients(const Partition& lambda, const Rational& alpha) {
  using Key = std::pair<std::pair<long, long>, Partition>;
  static std::map<Key, JackCoeffs> cache;
  static std::mutex mtx;
  Key key{{numerator(alpha).convert_to<long>(), denominator(alpha).convert_to<long>()},
          lambda};
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, detail::jack_coeffs_uncached(lambda, alpha)).first;
  return it->second;
}

/// m_kappa evaluated at an explicit variable tuple (any field T).
template <typename T>
T monomial_sym_value(const Partition& kappa, const std::vector<T>& x) {
  std::vector<int> perm = kappa.parts();
  std::sort(perm.begin(), perm.end());
  T total{};
  do {
    T term = T(1);
    for (size_t i = 0; i < x.size(); ++i) {
      for (int e = 0; e < perm[i]; ++e) term *= x[i];
    }
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// m_kappa(1,...,1): the number of distinct rearrangements of kappa.
inline Rational monomial_sym_at_ones(const Partition& kappa) {
  const int r = kappa.rank();
  Rational count = 1;
  for (int i = 2; i <= r; ++i) count *= i;
  int run = 1;
  for (int i = 1; i <= r; ++i) {
    if (i < r && kappa.part(i) == kappa.part(i - 1)) {
      ++run;
    } else {
      for (int f = 2; f <= run; ++f) count /= f;
      run = 1;
    }
  }
  return count;
}

namespace detail {

/// Symmetric-function plumbing for two variables: power sums p_k from
/// (e1, e2) by Newton's recurrence, then m_(a,b) = e2^b p_{a-b} (a > b)
/// and m_(a,a) = e2^a.  Valid over any commutative field, so the same
/// code serves doubles, complex values, and exact rationals.
template <typename T>
std::vector<T> power_sums_from_e(const T& e1, const T& e2, int upto) {
  std::vector<T> p(upto + 1);
  p[0] = T(2);
  if (upto >= 1) p[1] = e1;
  for (int k = 2; k <= upto; ++k) p[k] = e1 * p[k - 1] - e2 * p[k - 2];
  return p;
}

template <typename T>
T monomial_sym_r2(const Partition& kappa, const std::vector<T>& psums, const T& e2) {
  const int a = kappa.part(0), b = kappa.part(1);
  T e2b = T(1);
  for (int e = 0; e < b; ++e) e2b *= e2;
  if (a == b) return e2b;
  return e2b * psums[a - b];
}

}  // namespace detail

/// Jack P-polynomial evaluated from the elementary symmetric values of the
/// argument; rank <= 2 only.  This path needs no eigendecomposition, so it
/// stays exact over the rationals and stable for near-degenerate spectra.
template <typename T>
T jack_eval_e(const Partition& lambda, const Rational& alpha, const T& e1, const T& e2) {
  const int r = lambda.rank();
  if (r > 2) throw UnsupportedRank("jack_eval_e handles rank <= 2");
  const auto& coeffs = jack_coefficients(lambda, alpha);
  if (r == 1) {
    T v = T(1);
    for (int e = 0; e < lambda.part(0); ++e) v *= e1;
    return v;
  }
  auto psums = detail::power_sums_from_e<T>(e1, e2, lambda.part(0));
  T total{};
  for (const auto& [kappa, q] : coeffs) {
    T c;
    if constexpr (std::is_same_v<T, Rational>) {
      c = q;
    } else if constexpr (std::is_same_v<T, Complex>) {
      c = to_complex(q);
    } else {
      c = T(to_double(q));
    }
    total += c * detail::monomial_sym_r2<T>(kappa, psums, e2);
  }
  return total;
}

/// Jack P-polynomial at an explicit variable tuple, any rank.
template <typename T>
T jack_eval_vars(const Partition& lambda, const Rational& alpha, const std::vector<T>& x) {
  const auto& coeffs = jack_coefficients(lambda, alpha);
  T total{};
  for (const auto& [kappa, q] : coeffs) {
    T c;
    if constexpr (std::is_same_v<T, Rational>) {
      c = q;
    } else if constexpr (std::is_same_v<T, Complex>) {
      c = to_complex(q);
    } else {
      c = T(to_double(q));
    }
    total += c * monomial_sym_value<T>(kappa, x);
  }
  return total;
}

/// P_lambda(1,...,1), exact.
inline Rational jack_at_ones(const Partition& lambda, const Rational& alpha) {
  const auto& coeffs = jack_coefficients(lambda, alpha);
  Rational total = 0;
  for (const auto& [kappa, q] : coeffs) total += q * monomial_sym_at_ones(kappa);
  return total;
}

}  // namespace conelag
