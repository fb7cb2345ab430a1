// Acceptance suite: every criterion the library must meet, each printing one
// pass/fail line with its worst observed residual.  Tolerances are pinned in
// code next to each criterion.

#include <catch2/catch_amalgamated.hpp>
#include <iostream>
#include <random>

#include "conelag/conelag.hpp"

using namespace conelag;
using conelag::jordan::JordanElement;
using conelag::jordan::TubeElement;

namespace {

const ConeStructure kLine(1, 1);
const ConeStructure kSym2(2, 1);
const ConeStructure kHerm2(2, 2);

void verdict(int criterion, const std::string& what, bool pass, double worst) {
  std::printf("[%s] criterion %2d: %s (worst residual %.3e)\n",
              pass ? "PASS" : "FAIL", criterion, what.c_str(), worst);
  std::fflush(stdout);
}

double rel_gap(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// --- independent rank-1 oracles ------------------------------------------

/// Explicit gamma-ratio sum (the hypergeometric special case).
double laguerre_sum_formula(int n, double alpha, double x) {
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    double c = std::tgamma(n + alpha + 1.0) /
               (std::tgamma(k + alpha + 1.0) * std::tgamma(k + 1.0) *
                std::tgamma(n - k + 1.0));
    s += c * std::pow(-x, k);
  }
  return s;
}

/// Rodriguez form, expanded by the Leibniz rule:
/// e^x x^{-alpha}/n! d^n/dx^n (e^{-x} x^{n+alpha})
///   = (1/n!) sum_k C(n,k) (-1)^{n-k} (n+alpha)^{falling k} x^{n-k}.
double laguerre_rodriguez(int n, double alpha, double x) {
  double s = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    double falling = 1.0;
    for (int t = 0; t < k; ++t) falling *= (n + alpha - t);
    double sign = ((n - k) % 2 == 0) ? 1.0 : -1.0;
    s += binom * sign * falling * std::pow(x, n - k);
    binom = binom * (n - k) / (k + 1.0);
  }
  double nfact = std::tgamma(n + 1.0);
  return s / nfact;
}

/// Taylor coefficient of (1-w)^{-alpha-1} exp(x w/(w-1)) at w^n, by the
/// exponential-of-series recurrence.
double laguerre_generating_coeff(int n, double alpha, double x) {
  // B = exp(-x sum_{k>=1} w^k): b_0 = 1, b_m = (1/m) sum_{j=1}^m j s_j b_{m-j}
  std::vector<double> b(n + 1, 0.0);
  b[0] = 1.0;
  for (int m = 1; m <= n; ++m) {
    double acc = 0.0;
    for (int j = 1; j <= m; ++j) acc += j * (-x) * b[m - j];
    b[m] = acc / m;
  }
  std::vector<double> a(n + 1, 0.0);
  a[0] = 1.0;
  for (int k = 1; k <= n; ++k) a[k] = a[k - 1] * (alpha + k) / k;
  double s = 0.0;
  for (int k = 0; k <= n; ++k) s += a[k] * b[n - k];
  return s;
}

JordanElement seeded_spd(std::mt19937_64& rng, const ConeStructure& cone) {
  std::uniform_real_distribution<double> eig(0.3, 2.0), ang(0.0, 6.283185307179586);
  if (cone.rank == 1) return JordanElement::scalar(cone, eig(rng));
  double l1 = eig(rng), l2 = eig(rng);
  if (std::abs(l1 - l2) < 0.1) l2 += 0.15;
  if (cone.mult == 1) {
    double th = ang(rng);
    Eigen::Matrix2d k;
    k << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    Eigen::Matrix2d d = Eigen::Vector2d(l1, l2).asDiagonal();
    return JordanElement::from_real(cone, k * d * k.transpose());
  }
  double th = ang(rng), ph = ang(rng);
  Eigen::Matrix2cd u;
  u << std::cos(th), -std::sin(th) * std::exp(Complex(0, ph)),
      std::sin(th) * std::exp(Complex(0, -ph)), std::cos(th);
  Eigen::Matrix2cd d = Eigen::Vector2cd(Complex(l1, 0), Complex(l2, 0)).asDiagonal();
  return JordanElement(cone, u * d * u.adjoint());
}

}  // namespace

TEST_CASE("criterion 1: rank-1 classical consistency", "[acceptance]") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> ua(-0.5 + 1e-3, 3.0), ux(1e-3, 5.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    int n = trial % 11;
    double alpha = ua(rng), x = ux(rng);
    double s1 = laguerre_sum_formula(n, alpha, x);
    double s2 = laguerre_rodriguez(n, alpha, x);
    double s3 = laguerre_generating_coeff(n, alpha, x);
    worst = std::max({worst, rel_gap(s1, s2), rel_gap(s2, s3), rel_gap(s1, s3)});
    // and the library's normalization is n! times the classical value
    double lib = laguerre::laguerre_poly(
        laguerre::LaguerreSpec(alpha + 1.0, Partition({n}), kLine),
        JordanElement::scalar(kLine, x));
    worst = std::max(worst, rel_gap(lib, std::tgamma(n + 1.0) * s1));
  }
  bool pass = worst < 1e-9;
  verdict(1, "sum / Rodriguez / generating-function forms agree (50 samples)", pass,
          worst);
  CHECK(pass);
}

TEST_CASE("criterion 2: rank-1 Laplace closed form", "[acceptance]") {
  QuadratureSpec quad;
  double worst = 0.0;
  for (double nu : {1.0, 2.0, 3.5}) {
    for (int n = 0; n <= 8; ++n) {
      for (Complex z : {Complex(1.5, 0.0), Complex(2.0, 1.0)}) {
        auto rep = transforms::check_laplace_identity(
            nu, Partition({n}), TubeElement::diagonal(kLine, {z}), quad, 1e-10);
        worst = std::max(worst, rep.rel_residual);
        // direct comparison with the closed form of the introduction
        Complex intro = std::tgamma(nu + n) / std::tgamma(n + 1.0) *
                        std::pow((z - 1.0) / (z + 1.0), n) * std::pow(z + 1.0, -nu);
        worst = std::max(worst, std::abs(rep.lhs / std::tgamma(n + 1.0) - intro) /
                                    std::abs(intro));
      }
    }
  }
  bool pass = worst < 1e-10;
  verdict(2, "Laplace transform of ell_n matches the closed form", pass, worst);
  CHECK(pass);
}

TEST_CASE("criterion 3: Meixner-Pollaczek exact identities", "[acceptance]") {
  bool pass = true;
  for (const Rational& nu : {Rational(1), Rational(3, 2), Rational(2)}) {
    for (int n = 0; n <= 20; ++n) {
      auto [rec, diff] = meixner::check_mp_rank1_relations(nu, n);
      pass = pass && rec.passed() && diff.passed();
    }
  }
  verdict(3, "three-term recurrence and lambda-difference identically zero "
             "(n <= 20, nu in {1, 3/2, 2})",
          pass, 0.0);
  CHECK(pass);
}

TEST_CASE("criterion 4: spherical polynomial cross-validation", "[acceptance]") {
  QuadratureSpec quad;
  std::mt19937_64 rng(104);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    auto x = seeded_spd(rng, kSym2);
    for (auto& m : partitions_up_to(2, 4)) {
      std::vector<Complex> alpha = {double(m.part(0)), double(m.part(1))};
      Complex integral = spherical::spherical_poly_complex(alpha, x, kSym2, quad);
      double jack = spherical::spherical_poly(m, x, kSym2);
      worst = std::max(worst,
                       std::abs(integral - Complex(jack)) / (1.0 + std::abs(jack)));
    }
  }
  bool pass = worst < 1e-10;
  verdict(4, "Jack evaluation vs defining integral (r=2, a=1, |m| <= 4, 20 points)",
          pass, worst);
  CHECK(pass);
}

TEST_CASE("criterion 5: orthogonality and norms", "[acceptance]") {
  QuadratureSpec quad;
  double worst1 = 0.0;
  {
    double nu = 2.2;
    auto parts = partitions_up_to(1, 6);
    std::vector<double> diag(parts.size());
    for (size_t i = 0; i < parts.size(); ++i)
      diag[i] = laguerre::laguerre_norm_sq(laguerre::LaguerreSpec(nu, parts[i], kLine));
    for (size_t i = 0; i < parts.size(); ++i) {
      for (size_t j = i; j < parts.size(); ++j) {
        laguerre::LaguerreSpec si(nu, parts[i], kLine), sj(nu, parts[j], kLine);
        transforms::Integrand f = [&](const JordanElement& x) {
          return Complex(laguerre::laguerre_fn(si, x) * laguerre::laguerre_fn(sj, x));
        };
        double val = transforms::cone_quadrature(kLine, nu, f, quad, 2.0).real();
        if (i == j)
          worst1 = std::max(worst1, rel_gap(val, diag[i]));
        else
          worst1 = std::max(worst1, std::abs(val) / std::sqrt(diag[i] * diag[j]));
      }
    }
  }
  double worst2 = 0.0;
  {
    double nu = 3.0;
    auto parts = partitions_up_to(2, 2);
    std::vector<double> diag(parts.size());
    for (size_t i = 0; i < parts.size(); ++i)
      diag[i] = laguerre::laguerre_norm_sq(laguerre::LaguerreSpec(nu, parts[i], kSym2));
    for (size_t i = 0; i < parts.size(); ++i) {
      for (size_t j = i; j < parts.size(); ++j) {
        laguerre::LaguerreSpec si(nu, parts[i], kSym2), sj(nu, parts[j], kSym2);
        transforms::Integrand f = [&](const JordanElement& x) {
          return Complex(laguerre::laguerre_fn(si, x) * laguerre::laguerre_fn(sj, x));
        };
        double val = transforms::cone_quadrature(kSym2, nu, f, quad, 2.0, true).real();
        if (i == j)
          worst2 = std::max(worst2, rel_gap(val, diag[i]));
        else
          worst2 = std::max(worst2, std::abs(val) / std::sqrt(diag[i] * diag[j]));
      }
    }
  }
  bool pass = worst1 < 1e-8 && worst2 < 1e-3;
  verdict(5, "Gram matrices match the closed-form norms (rank 1 @1e-8, rank 2 @1e-3)",
          pass, std::max(worst1, worst2));
  CHECK(worst1 < 1e-8);
  CHECK(worst2 < 1e-3);
}

TEST_CASE("criterion 6: Euler-operator recurrence", "[acceptance]") {
  diffops::FiniteDiffSpec fd;
  // rank 1: the coefficients collapse exactly to the classical ones ...
  bool coeffs_exact = true;
  for (int n = 1; n <= 10; ++n) {
    coeffs_exact = coeffs_exact &&
                   spherical::step_coeff(Partition({n}), 0, kLine) == double(n) &&
                   spherical::c_coeff(Partition({n}), 0, kLine) == 1.0;
  }
  // ... and the finite-difference residual vanishes at seeded points
  std::mt19937_64 rng(106);
  double worst1 = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    auto x = seeded_spd(rng, kLine);
    for (int n = 0; n <= 4; ++n) {
      auto [rec, cls] = laguerre::check_euler_recurrence(
          laguerre::LaguerreSpec(2.0, Partition({n}), kLine), x, fd, 1e-8);
      worst1 = std::max(worst1, rec.rel_residual);
    }
  }
  // rank 2, nu = 3, |m| <= 2, 10 seeded points
  double worst2 = 0.0;
  int skipped = 0;
  for (int trial = 0; trial < 10; ++trial) {
    auto x = seeded_spd(rng, kSym2);
    for (auto& m : partitions_up_to(2, 2)) {
      auto [rec, other] = laguerre::check_euler_recurrence(
          laguerre::LaguerreSpec(3.0, m, kSym2), x, fd, 1e-6);
      if (rec.status == CheckStatus::SkippedDegenerate)
        ++skipped;
      else
        worst2 = std::max(worst2, rec.rel_residual);
    }
  }
  bool pass = coeffs_exact && worst1 < 1e-8 && worst2 < 1e-6;
  std::ostringstream what;
  what << "Euler recurrence (rank-1 classical reduction; rank-2 numeric, " << skipped
       << " degenerate skipped)";
  verdict(6, what.str(), pass, std::max(worst1, worst2));
  CHECK(coeffs_exact);
  CHECK(worst1 < 1e-8);
  CHECK(worst2 < 1e-6);
}

TEST_CASE("criterion 7: Hermitian differential operators", "[acceptance]") {
  diffops::FiniteDiffSpec fd;
  ConeStructure halfline(1, 2);
  std::mt19937_64 rng(107);
  // rank-1 specialization reproduces the classical relations
  double worst1 = 0.0;
  for (int n : {0, 1, 2, 3}) {
    for (double t : {0.5, 1.1, 1.9}) {
      laguerre::LaguerreSpec spec(3.0, Partition({n}), halfline);
      for (auto& rep : laguerre::check_classical_rank1(spec, t, fd, 1e-7))
        worst1 = std::max(worst1, rep.rel_residual);
      for (auto& rep : laguerre::check_hermitian_diffops(
               spec, JordanElement::scalar(halfline, t), fd, 1e-7))
        worst1 = std::max(worst1, rep.rel_residual);
    }
  }
  // rank 2: all three identities at 10 seeded Hermitian points
  double worst2 = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    auto x = seeded_spd(rng, kHerm2);
    for (auto& m : partitions_up_to(2, 2)) {
      laguerre::LaguerreSpec spec(3.0, m, kHerm2);
      for (auto& rep : laguerre::check_hermitian_diffops(spec, x, fd, 1e-5))
        worst2 = std::max(worst2, rep.rel_residual);
    }
  }
  bool pass = worst1 < 1e-7 && worst2 < 1e-5;
  verdict(7, "three operator identities on Herm(2) @1e-5; rank-1 classical @1e-7",
          pass, std::max(worst1, worst2));
  CHECK(worst1 < 1e-7);
  CHECK(worst2 < 1e-5);
}

TEST_CASE("criterion 8: general difference relations", "[acceptance]") {
  QuadratureSpec quad;
  // rank-1 reduction is exact, and it arbitrates the argument shift
  bool shifted = meixner::spectral_shift_reading_is_shifted(Rational(3));
  bool rank1_exact = true;
  for (int n = 0; n <= 10; ++n) {
    auto [rec, diff] = meixner::check_mp_rank1_relations(Rational(3), n);
    rank1_exact = rank1_exact && rec.passed() && diff.passed();
  }
  // rank 2: 5 seeded (lambda, m) pairs, both rho signs recorded
  std::mt19937_64 rng(108);
  std::uniform_real_distribution<double> ul(-0.8, 0.8);
  auto parts = partitions_up_to(2, 2);
  double worst = 0.0;
  bool pass2 = true;
  int plus_ok = 0, minus_ok = 0;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Complex> lam = {Complex(ul(rng), 0.0), Complex(ul(rng), 0.0)};
    const Partition& m = parts[trial % parts.size()];
    bool any = false;
    for (int sign : {+1, -1}) {
      auto r1 = meixner::check_mp_difference(3.0, m, lam, sign, kSym2, quad, 1e-5);
      auto r2 = meixner::check_mp_spectral_difference(3.0, m, lam, sign, kSym2, quad,
                                                      true, 1e-5);
      bool ok = r1.passed() && r2.passed();
      if (ok && r1.status != CheckStatus::SkippedDegenerate) {
        any = true;
        (sign > 0 ? plus_ok : minus_ok)++;
        worst = std::max({worst, r1.rel_residual, r2.rel_residual});
      }
    }
    pass2 = pass2 && any;
  }
  bool pass = shifted && rank1_exact && pass2;
  std::ostringstream what;
  what << "difference relations (shifted reading; rho signs passing: +" << plus_ok
       << "/-" << minus_ok << " of 5 points)";
  verdict(8, what.str(), pass, worst);
  CHECK(shifted);
  CHECK(rank1_exact);
  CHECK(pass2);
}

TEST_CASE("criterion 9: Laplace identity at rank 2", "[acceptance]") {
  QuadratureSpec quad;
  double nu = 3.0;
  auto z1 = TubeElement::diagonal(kSym2, {Complex(2.0, 0.0), Complex(1.5, 0.0)});
  auto z2 = TubeElement::diagonal(kSym2, {Complex(2.0, 0.5), Complex(1.5, 0.5)});
  double worst = 0.0;
  for (auto& m : partitions_up_to(2, 2)) {
    for (const auto& z : {z1, z2}) {
      auto rep = transforms::check_laplace_identity(nu, m, z, quad, 1e-3);
      worst = std::max(worst, rep.rel_residual);
    }
  }
  bool pass = worst < 1e-3;
  verdict(9, "L(ell_m) = Gamma_Omega(m+nu) q_m on Sym(2) tube points", pass, worst);
  CHECK(pass);
}

TEST_CASE("criterion 10: generating function", "[acceptance]") {
  QuadratureSpec quad;
  std::mt19937_64 rng(110);
  std::uniform_real_distribution<double> uw(-0.3, 0.3), ux(0.3, 2.0);
  // rank 1: absolute truncation residual at N = 15 (see the norm note in the
  // README: the tolerance is absolute; the relative tail at |w| = 0.3 is
  // genuinely larger)
  double worst1 = 0.0;
  for (double nu : {1.0, 2.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      double w = uw(rng), x = ux(rng);
      auto res = transforms::generating_series(nu, JordanElement::scalar(kLine, w),
                                               JordanElement::scalar(kLine, x), 15,
                                               quad);
      worst1 = std::max(worst1, std::abs(res.lhs - res.partial_sum));
    }
  }
  // rank 2: relative residual at N = 8 plus geometric decay over N = 4, 6, 8
  double worst2 = 0.0;
  bool decay_ok = true;
  std::uniform_real_distribution<double> us(0.02, 0.15);
  for (int trial = 0; trial < 4; ++trial) {
    double s = us(rng);
    auto w = JordanElement::diagonal(kSym2, {s, -0.5 * s});
    auto x = seeded_spd(rng, kSym2);
    auto r4 = transforms::generating_series(3.0, w, x, 4, quad);
    auto r6 = transforms::generating_series(3.0, w, x, 6, quad);
    auto r8 = transforms::generating_series(3.0, w, x, 8, quad);
    worst2 = std::max(worst2, r8.residual);
    decay_ok = decay_ok && r6.residual <= 0.75 * r4.residual + 1e-14 &&
               r8.residual <= 0.75 * r6.residual + 1e-14;
  }
  bool pass = worst1 < 1e-8 && worst2 < 1e-4 && decay_ok;
  verdict(10, "generating series (rank 1 N=15; rank 2 N=8 with geometric decay)",
          pass, std::max(worst1, worst2));
  CHECK(worst1 < 1e-8);
  CHECK(worst2 < 1e-4);
  CHECK(decay_ok);
}

TEST_CASE("criterion 11: gamma calibration", "[acceptance]") {
  QuadratureSpec quad;
  double worst1 = 0.0, worst2 = 0.0;
  for (double nu : {2.5, 3.0, 4.0}) {
    worst1 = std::max(worst1,
                      rel_gap(transforms::gindikin_gamma_by_quadrature(nu, kLine, quad),
                              spherical::gindikin_gamma(nu, kLine)));
    worst2 = std::max(worst2,
                      rel_gap(transforms::gindikin_gamma_by_quadrature(nu, kSym2, quad),
                              spherical::gindikin_gamma(nu, kSym2)));
  }
  bool pass = worst1 < 1e-6 && worst2 < 1e-4;
  verdict(11, "cone quadrature reproduces Gamma_Omega (rank 1 @1e-6, rank 2 @1e-4)",
          pass, std::max(worst1, worst2));
  CHECK(worst1 < 1e-6);
  CHECK(worst2 < 1e-4);
}
