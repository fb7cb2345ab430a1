#pragma once

// Meixner-Pollaczek polynomials p_{nu,m}(lambda): the expansion
// coefficients of Delta(e - x^2)^{-nu/2} phi_lambda(x) in the spherical
// basis psi_m, where phi_lambda(x) = psi_{i lambda + rho}(c(x)) and c is
// the Cayley transform.
//
// Rank 1 is exact: p_{nu,n} is the n-th Taylor coefficient of
//   G_{nu,lambda}(t) = (1 - t^2)^{-nu/2} ((1+t)/(1-t))^{i lambda},
// a polynomial in beta = i lambda with rational coefficients when nu is
// rational.  General rank goes numerically: sample the left-hand side on a
// small complex polytorus of diagonal points, read off monomial
// coefficients by discrete Fourier sums, and convert to the psi basis by
// an exact triangular change of basis.  Coefficient extraction this way is
// free of series-truncation bias; the only error sources are angle-count
// aliasing and the spherical-function quadrature.

#include "conelag/report.hpp"
#include "conelag/spherical.hpp"

namespace conelag::meixner {

using jordan::JordanElement;

/// rho = half sum of positive restricted roots in the type-A convention,
/// rho_j = sign * (a/4)(r + 1 - 2j); rank 1 has no roots and rho = 0.
/// Both signs stay available behind the switch; the difference-relation
/// suites record which one the identities select.
inline std::vector<double> rho_vector(const ConeStructure& cone, int sign = +1) {
  std::vector<double> rho(cone.rank);
  for (int j = 0; j < cone.rank; ++j)
    rho[j] = sign * 0.25 * cone.mult * (cone.rank - 1 - 2 * j);
  return rho;
}

// ---------------------------------------------------------------------------
// Exact rank-1 polynomials
// ---------------------------------------------------------------------------

/// Polynomial in beta = i lambda with rational coefficients.
using BetaPoly = std::vector<Rational>;

namespace detail {

inline BetaPoly poly_scale(BetaPoly p, const Rational& c) {
  for (auto& v : p) v *= c;
  return p;
}

inline BetaPoly poly_add(const BetaPoly& a, const BetaPoly& b) {
  BetaPoly out(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

/// p(beta) * (beta + c)
inline BetaPoly poly_mul_linear(const BetaPoly& p, const Rational& c) {
  BetaPoly out(p.size() + 1, Rational(0));
  for (size_t i = 0; i < p.size(); ++i) {
    out[i + 1] += p[i];
    out[i] += c * p[i];
  }
  return out;
}

inline BetaPoly poly_mul(const BetaPoly& a, const BetaPoly& b) {
  BetaPoly out(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

/// p(beta + s)
inline BetaPoly poly_shift(const BetaPoly& p, const Rational& s) {
  BetaPoly out(p.size(), Rational(0));
  for (size_t k = 0; k < p.size(); ++k) {
    // expand p_k (beta + s)^k
    Rational binom = 1;
    Rational spow = 1;
    for (size_t j = 0; j <= k; ++j) {
      out[k - j] += p[k] * binom * spow;
      binom = binom * Rational(long(k - j)) / Rational(long(j + 1));
      spow *= s;
    }
  }
  return out;
}

inline bool poly_is_zero(const BetaPoly& p) {
  for (const auto& c : p)
    if (c != 0) return false;
  return true;
}

inline Complex poly_eval_lambda(const BetaPoly& p, Complex lambda) {
  Complex beta = Complex(0.0, 1.0) * lambda;
  Complex acc = 0.0;
  for (size_t k = p.size(); k-- > 0;) acc = acc * beta + to_complex(p[k]);
  return acc;
}

}  // namespace detail

/// Exact rank-1 Meixner-Pollaczek polynomial of degree n.
struct MPPolynomial {
  int n = 0;
  Rational nu;
  BetaPoly coeffs;  // in beta = i lambda, degree n

  Complex value(Complex lambda) const {
    return detail::poly_eval_lambda(coeffs, lambda);
  }

  /// Coefficient list in powers of lambda with exact rational real and
  /// imaginary parts (coefficient of lambda^k is i^k times a rational).
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["nu"] = {{"num", numerator(nu).str()}, {"den", denominator(nu).str()}};
    j["lambda_coefficients"] = nlohmann::ordered_json::array();
    for (size_t k = 0; k < coeffs.size(); ++k) {
      Rational b = coeffs[k];
      // i^k cycles 1, i, -1, -i
      Rational re = 0, im = 0;
      switch (k % 4) {
        case 0: re = b; break;
        case 1: im = b; break;
        case 2: re = -b; break;
        case 3: im = -b; break;
      }
      nlohmann::ordered_json c;
      c["re"] = {{"num", numerator(re).str()}, {"den", denominator(re).str()}};
      c["im"] = {{"num", numerator(im).str()}, {"den", denominator(im).str()}};
      j["lambda_coefficients"].push_back(c);
    }
    return j;
  }
};

/// p_{nu,0..N} from the Taylor product of the two binomial series
/// (1+t)^{beta - nu/2} (1-t)^{-beta - nu/2}.
inline std::vector<MPPolynomial> mp_rank1_family(const Rational& nu, int N) {
  std::vector<BetaPoly> a(N + 1), b(N + 1);
  a[0] = {Rational(1)};
  b[0] = {Rational(1)};
  for (int k = 1; k <= N; ++k) {
    // a_k = a_{k-1} (beta - nu/2 - (k-1)) / k
    a[k] = detail::poly_scale(detail::poly_mul_linear(a[k - 1], -nu / 2 - (k - 1)),
                              Rational(1, k));
    b[k] = detail::poly_scale(detail::poly_mul_linear(b[k - 1], nu / 2 + (k - 1)),
                              Rational(1, k));
  }
  std::vector<MPPolynomial> out(N + 1);
  for (int n = 0; n <= N; ++n) {
    BetaPoly p = {Rational(0)};
    for (int k = 0; k <= n; ++k) p = detail::poly_add(p, detail::poly_mul(a[k], b[n - k]));
    out[n] = MPPolynomial{n, nu, std::move(p)};
  }
  return out;
}

inline MPPolynomial mp_rank1(const Rational& nu, int n) {
  return mp_rank1_family(nu, n).back();
}

// ---------------------------------------------------------------------------
// Exact rank-1 identity checks
// ---------------------------------------------------------------------------

namespace detail {

inline nlohmann::ordered_json mp_point(const Rational& nu, int n) {
  nlohmann::ordered_json j;
  j["nu"] = to_double(nu);
  j["n"] = n;
  return j;
}

inline IdentityReport exact_report(const std::string& name,
                                   nlohmann::ordered_json point, bool zero,
                                   Complex lhs_sample, Complex rhs_sample) {
  IdentityReport r;
  r.identity = name;
  r.point = std::move(point);
  r.lhs = lhs_sample;
  r.rhs = rhs_sample;
  r.abs_residual = zero ? 0.0 : std::abs(lhs_sample - rhs_sample);
  r.rel_residual = zero ? 0.0 : 1.0;
  r.status = zero ? CheckStatus::Pass : CheckStatus::Fail;
  r.note = zero ? "residual polynomial identically zero" : "nonzero residual polynomial";
  return r;
}

}  // namespace detail

/// Three-term recurrence 2 i lambda p_n = (n+1) p_{n+1} - (nu + n - 1) p_{n-1}
/// and the difference relation
/// -(nu + 2n) p_n(lambda) = (i lambda - nu/2) p_n(lambda + i)
///                         - (i lambda + nu/2) p_n(lambda - i),
/// both as exact polynomial identities in lambda.
inline std::pair<IdentityReport, IdentityReport> check_mp_rank1_relations(
    const Rational& nu, int n) {
  auto fam = mp_rank1_family(nu, n + 1);
  const Complex probe(0.37, 0.0);

  // 2 beta p_n - (n+1) p_{n+1} + (nu + n - 1) p_{n-1} == 0
  BetaPoly lhs = detail::poly_mul_linear(fam[n].coeffs, 0);  // beta * p_n
  lhs = detail::poly_scale(lhs, 2);
  BetaPoly rhs = detail::poly_scale(fam[n + 1].coeffs, Rational(n + 1));
  if (n >= 1)
    rhs = detail::poly_add(rhs, detail::poly_scale(fam[n - 1].coeffs, -(nu + n - 1)));
  BetaPoly resid = detail::poly_add(lhs, detail::poly_scale(rhs, -1));
  auto rec = detail::exact_report(
      "mp-three-term", detail::mp_point(nu, n), detail::poly_is_zero(resid),
      detail::poly_eval_lambda(lhs, probe), detail::poly_eval_lambda(rhs, probe));

  // (beta - nu/2) p_n(beta - 1) - (beta + nu/2) p_n(beta + 1) + (nu + 2n) p_n == 0
  BetaPoly down = detail::poly_shift(fam[n].coeffs, -1);
  BetaPoly up = detail::poly_shift(fam[n].coeffs, 1);
  BetaPoly d1 = detail::poly_mul_linear(down, -nu / 2);  // (beta - nu/2) down
  BetaPoly d2 = detail::poly_mul_linear(up, nu / 2);     // (beta + nu/2) up
  BetaPoly rhs2 = detail::poly_add(d1, detail::poly_scale(d2, -1));
  BetaPoly lhs2 = detail::poly_scale(fam[n].coeffs, -(nu + 2 * n));
  BetaPoly resid2 = detail::poly_add(lhs2, detail::poly_scale(rhs2, -1));
  auto diff = detail::exact_report(
      "mp-lambda-difference", detail::mp_point(nu, n), detail::poly_is_zero(resid2),
      detail::poly_eval_lambda(lhs2, probe), detail::poly_eval_lambda(rhs2, probe));
  return {rec, diff};
}

/// Which argument shift in the first sum of the spectral difference relation
/// survives the rank-1 reduction: returns true when the lambda + i e_j
/// reading gives an identically zero residual and the unshifted one does
/// not.
inline bool spectral_shift_reading_is_shifted(const Rational& nu, int nmax = 8) {
  for (int n = 0; n <= nmax; ++n) {
    auto fam = mp_rank1_family(nu, n);
    const BetaPoly& p = fam[n].coeffs;
    BetaPoly lhs = detail::poly_scale(p, -(nu + 2 * n));
    // shifted: (beta - nu/2) p(beta - 1) - (beta + nu/2) p(beta + 1)
    BetaPoly shifted = detail::poly_add(
        detail::poly_mul_linear(detail::poly_shift(p, -1), -nu / 2),
        detail::poly_scale(detail::poly_mul_linear(detail::poly_shift(p, 1), nu / 2), -1));
    // unshifted: (beta - nu/2) p(beta) - (beta + nu/2) p(beta + 1)
    BetaPoly unshifted = detail::poly_add(
        detail::poly_mul_linear(p, -nu / 2),
        detail::poly_scale(detail::poly_mul_linear(detail::poly_shift(p, 1), nu / 2), -1));
    bool ok_shifted =
        detail::poly_is_zero(detail::poly_add(lhs, detail::poly_scale(shifted, -1)));
    bool ok_unshifted =
        detail::poly_is_zero(detail::poly_add(lhs, detail::poly_scale(unshifted, -1)));
    if (!ok_shifted || (ok_unshifted && n > 0)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Spherical function on the real bounded domain
// ---------------------------------------------------------------------------

/// phi_lambda(x) = psi_{i lambda + rho}(c(x)); x must lie in the real
/// bounded domain (e - x^2 positive definite).
inline Complex phi_lambda(const std::vector<Complex>& lambda, const JordanElement& x,
                          const std::vector<double>& rho, const ConeStructure& cone,
                          const QuadratureSpec& quad) {
  if (!jordan::in_real_domain(x))
    throw NonPositiveMinor("argument outside the real bounded domain");
  std::vector<Complex> alpha(cone.rank);
  for (int j = 0; j < cone.rank; ++j)
    alpha[j] = Complex(0.0, 1.0) * lambda[j] + rho[j];
  return spherical::spherical_poly_complex(alpha, jordan::cayley(x), cone, quad);
}

// ---------------------------------------------------------------------------
// General-rank extraction
// ---------------------------------------------------------------------------

struct MpExtraction {
  std::map<Partition, Complex> coeff;  // p_{nu,m}(lambda) for |m| <= weight
  double est_error = 0.0;              // shift between two angle counts
  bool truncation_warning = false;
};

namespace detail {

/// F on the diagonal: prod_j (1 - t_j^2)^{-nu/2} times the analytically
/// continued spherical function of the Cayley image.
inline Complex mp_series_value(double nu, const std::vector<Complex>& alpha,
                               const std::vector<Complex>& t,
                               const ConeStructure& cone, int n_angle) {
  Complex pref = 0.0;
  for (Complex tj : t) pref += std::log(1.0 - tj * tj);
  pref = std::exp(-0.5 * nu * pref);
  std::vector<Complex> w(t.size());
  for (size_t j = 0; j < t.size(); ++j) w[j] = (1.0 + t[j]) / (1.0 - t[j]);
  if (cone.rank == 1) return pref * std::exp(alpha[0] * std::log(w[0]));
  return pref * spherical::detail::psi_alpha_circle_diag(alpha, w[0], w[1], n_angle);
}

inline std::map<Partition, Complex> mp_extract_once(double nu,
                                                    const std::vector<Complex>& lambda,
                                                    const std::vector<double>& rho,
                                                    const ConeStructure& cone,
                                                    int max_weight, int M, double s,
                                                    int n_angle) {
  const int r = cone.rank;
  const double two_pi = 6.283185307179586476925;
  std::vector<Complex> alpha(r);
  for (int j = 0; j < r; ++j) alpha[j] = Complex(0.0, 1.0) * lambda[j] + rho[j];

  // sample the polytorus
  std::vector<Complex> ring(M);
  for (int p = 0; p < M; ++p)
    ring[p] = s * std::exp(Complex(0.0, two_pi * p / M));

  std::map<Partition, Complex> mono;  // a_kappa over partitions kappa
  if (r == 1) {
    std::vector<Complex> f(M);
    for (int p = 0; p < M; ++p)
      f[p] = mp_series_value(nu, alpha, {ring[p]}, cone, n_angle);
    for (int k = 0; k <= max_weight; ++k) {
      Complex acc = 0.0;
      for (int p = 0; p < M; ++p)
        acc += f[p] * std::exp(Complex(0.0, -two_pi * k * p / M));
      mono[Partition({k})] = acc / (double(M) * std::pow(s, k));
    }
  } else {
    std::vector<std::vector<Complex>> f(M, std::vector<Complex>(M));
    for (int p = 0; p < M; ++p)
      for (int q = 0; q < M; ++q)
        f[p][q] = mp_series_value(nu, alpha, {ring[p], ring[q]}, cone, n_angle);
    for (int w = 0; w <= max_weight; ++w) {
      for (auto& kappa : partitions_of_weight(2, w)) {
        int k1 = kappa.part(0), k2 = kappa.part(1);
        Complex acc = 0.0;
        for (int p = 0; p < M; ++p)
          for (int q = 0; q < M; ++q)
            acc += f[p][q] *
                   std::exp(Complex(0.0, -two_pi * double(k1 * p + k2 * q) / M));
        mono[kappa] = acc / (double(M) * M * std::pow(s, w));
      }
    }
  }

  // psi-basis conversion: per weight, the Jack coefficient matrix is
  // triangular with respect to dominance, so forward substitution in the
  // lex-descending order solves it exactly.
  const Rational jack_alpha = spherical::jack_parameter(cone);
  std::map<Partition, Complex> out;
  for (int w = 0; w <= max_weight; ++w) {
    auto parts = partitions_of_weight(r, w);
    for (size_t jrow = 0; jrow < parts.size(); ++jrow) {
      const Partition& kappa = parts[jrow];
      Complex acc = mono.at(kappa);
      for (size_t i = 0; i < jrow; ++i) {
        const Partition& nprt = parts[i];
        const auto& coeffs = jack_coefficients(nprt, jack_alpha);
        auto it = coeffs.find(kappa);
        if (it == coeffs.end()) continue;
        acc -= out.at(nprt) * to_double(it->second / jack_at_ones(nprt, jack_alpha));
      }
      const auto& cdiag = jack_coefficients(kappa, jack_alpha);
      Rational diag = cdiag.at(kappa) / jack_at_ones(kappa, jack_alpha);
      out[kappa] = acc / to_double(diag);
    }
  }
  return out;
}

}  // namespace detail

/// All coefficients p_{nu,m}(lambda) for |m| <= max_weight, with an error
/// estimate from repeating the extraction at a higher angle count.
inline MpExtraction mp_expansion(double nu, const std::vector<Complex>& lambda,
                                 const std::vector<double>& rho,
                                 const ConeStructure& cone, int max_weight,
                                 const QuadratureSpec& quad, double warn_tol = 1e-6) {
  if (cone.rank > 2) throw UnsupportedRank("extraction implemented for rank <= 2");
  if (cone.rank == 2 && cone.mult != 1)
    throw UnsupportedCone("rank-2 extraction needs the real symmetric cone");
  MpExtraction ex;
  auto first = detail::mp_extract_once(nu, lambda, rho, cone, max_weight,
                                       quad.torus_points, quad.torus_radius,
                                       quad.angle_nodes);
  auto second = detail::mp_extract_once(nu, lambda, rho, cone, max_weight,
                                        quad.torus_points + 6, quad.torus_radius,
                                        quad.angle_nodes);
  ex.coeff = second;
  for (const auto& [m, v] : first) {
    double shift = std::abs(v - second.at(m));
    ex.est_error = std::max(ex.est_error, shift);
  }
  ex.truncation_warning = ex.est_error > warn_tol;
  return ex;
}

/// Single coefficient p_{nu,m}(lambda).
inline Complex mp_general(double nu, const Partition& m,
                          const std::vector<Complex>& lambda,
                          const std::vector<double>& rho, const ConeStructure& cone,
                          const QuadratureSpec& quad) {
  return mp_expansion(nu, lambda, rho, cone, m.weight(), quad).coeff.at(m);
}

// ---------------------------------------------------------------------------
// General-rank difference relations
// ---------------------------------------------------------------------------

namespace detail {

inline nlohmann::ordered_json diff_point(double nu, const Partition& m,
                                         const std::vector<Complex>& lambda,
                                         int rho_sign) {
  nlohmann::ordered_json j;
  j["nu"] = nu;
  j["m"] = m.parts();
  std::vector<double> lre, lim;
  for (auto l : lambda) {
    lre.push_back(l.real());
    lim.push_back(l.imag());
  }
  j["lambda_re"] = lre;
  j["lambda_im"] = lim;
  j["rho_sign"] = rho_sign;
  return j;
}

}  // namespace detail

/// The recurrence-type difference relation
///   2 sum_j (i lambda_j + rho_j) p_m(lambda)
///     = sum_j (m+e_j; m) p_{m+e_j}(lambda)
///     - sum_j (nu + m_j - 1 - (a/2)(j-1)) c_{m-e_j}(j) p_{m-e_j}(lambda),
/// with p at a non-partition index read as zero.
inline IdentityReport check_mp_difference(double nu, const Partition& m,
                                          const std::vector<Complex>& lambda,
                                          int rho_sign, const ConeStructure& cone,
                                          const QuadratureSpec& quad,
                                          double tol = 1e-5) {
  auto rho = rho_vector(cone, rho_sign);
  auto pt = detail::diff_point(nu, m, lambda, rho_sign);
  try {
    auto ex = mp_expansion(nu, lambda, rho, cone, m.weight() + 1, quad);
    Complex pm = ex.coeff.at(m);
    Complex lhs = 0.0;
    for (int j = 0; j < cone.rank; ++j)
      lhs += 2.0 * (Complex(0.0, 1.0) * lambda[j] + rho[j]) * pm;
    Complex rhs = 0.0;
    double hint = std::abs(pm);
    for (int j = 0; j < cone.rank; ++j) {
      if (auto up = m.raised(j)) {
        std::vector<Complex> nUp(cone.rank);
        for (int i = 0; i < cone.rank; ++i) nUp[i] = double(up->part(i));
        rhs += spherical::step_coeff(nUp, j, cone) * ex.coeff.at(*up);
        hint += std::abs(ex.coeff.at(*up));
      }
      if (auto low = m.lowered(j)) {
        std::vector<Complex> nLow(cone.rank);
        for (int i = 0; i < cone.rank; ++i) nLow[i] = double(low->part(i));
        rhs -= (nu + m.part(j) - 1 - cone.half_mult() * j) *
               spherical::c_coeff(nLow, j, cone) * ex.coeff.at(*low);
        hint += std::abs(ex.coeff.at(*low));
      }
    }
    return IdentityReport::make("mp-difference", pt, lhs, rhs, tol,
                                (nu + 2.0 * m.weight() + 2.0) * hint);
  } catch (const ZeroDenominator& e) {
    return IdentityReport::skipped("mp-difference", pt, e.what());
  }
}

/// The spectral difference relation in lambda:
///   -(r nu + 2|m|) p_m(lambda)
///     = sum_j (n; n-e_j)|_{n = i lambda + rho - nu/2} p_m(lambda + i e_j)
///     - sum_j (nu/2 + i lambda_j + rho_j - (a/2)(j-1)) c_n(j) p_m(lambda - i e_j).
/// `shifted` selects the lambda + i e_j argument in the first sum (the
/// reading the rank-1 reduction forces); false evaluates it at lambda.
inline IdentityReport check_mp_spectral_difference(double nu, const Partition& m,
                                                   const std::vector<Complex>& lambda,
                                                   int rho_sign,
                                                   const ConeStructure& cone,
                                                   const QuadratureSpec& quad,
                                                   bool shifted = true,
                                                   double tol = 1e-5) {
  auto rho = rho_vector(cone, rho_sign);
  auto pt = detail::diff_point(nu, m, lambda, rho_sign);
  pt["reading"] = shifted ? "lambda+ie_j" : "unshifted";
  try {
    const int r = cone.rank;
    std::vector<Complex> ntup(r);
    for (int j = 0; j < r; ++j)
      ntup[j] = Complex(0.0, 1.0) * lambda[j] + rho[j] - 0.5 * nu;
    Complex pm = mp_general(nu, m, lambda, rho, cone, quad);
    Complex lhs = -(r * nu + 2.0 * m.weight()) * pm;
    Complex rhs = 0.0;
    double hint = (r * nu + 2.0 * m.weight()) * std::abs(pm);
    for (int j = 0; j < r; ++j) {
      std::vector<Complex> lup = lambda, ldown = lambda;
      lup[j] += Complex(0.0, 1.0);
      ldown[j] -= Complex(0.0, 1.0);
      Complex p_up =
          shifted ? mp_general(nu, m, lup, rho, cone, quad) : pm;
      Complex p_down = mp_general(nu, m, ldown, rho, cone, quad);
      rhs += spherical::step_coeff(ntup, j, cone) * p_up;
      rhs -= (0.5 * nu + Complex(0.0, 1.0) * lambda[j] + rho[j] -
              cone.half_mult() * j) *
             spherical::c_coeff(ntup, j, cone) * p_down;
      hint += std::abs(p_up) + std::abs(p_down);
    }
    return IdentityReport::make("mp-spectral-difference", pt, lhs, rhs, tol,
                                (nu + std::abs(lambda[0]) + 2.0 * m.weight() + 2.0) *
                                    hint);
  } catch (const ZeroDenominator& e) {
    return IdentityReport::skipped("mp-spectral-difference", pt, e.what());
  }
}

}  // namespace conelag::meixner
