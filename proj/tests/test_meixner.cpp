#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "conelag/meixner.hpp"

using namespace conelag;
using namespace conelag::jordan;
using namespace conelag::meixner;

namespace {
const ConeStructure kSym2(2, 1);
const ConeStructure kLine(1, 1);

Complex g_series(double nu, Complex lambda, double x) {
  return std::pow(1.0 - x * x, -0.5 * nu) *
         std::exp(Complex(0.0, 1.0) * lambda * std::log((1.0 + x) / (1.0 - x)));
}
}  // namespace

TEST_CASE("rho vector conventions", "[meixner]") {
  auto r1 = rho_vector(kLine);
  CHECK(r1.size() == 1);
  CHECK(r1[0] == 0.0);
  for (int sign : {+1, -1}) {
    auto r2 = rho_vector(kSym2, sign);
    CHECK(r2[0] + r2[1] == Catch::Approx(0.0));
    CHECK(r2[0] == Catch::Approx(sign * 0.25));
  }
}

TEST_CASE("rank-1 polynomials", "[meixner]") {
  auto fam = mp_rank1_family(Rational(2), 3);
  // p_0 = 1
  CHECK(fam[0].coeffs.size() == 1);
  CHECK(fam[0].coeffs[0] == 1);
  // p_1 = 2 i lambda, i.e. 2 beta
  REQUIRE(fam[1].coeffs.size() == 2);
  CHECK(fam[1].coeffs[0] == 0);
  CHECK(fam[1].coeffs[1] == 2);
  // p_2 = 2 beta^2 + nu/2
  REQUIRE(fam[2].coeffs.size() == 3);
  CHECK(fam[2].coeffs[0] == Rational(1));  // nu/2 at nu=2
  CHECK(fam[2].coeffs[1] == 0);
  CHECK(fam[2].coeffs[2] == 2);
  // leading coefficient of p_n is 2^n / n! in beta
  auto fam5 = mp_rank1_family(Rational(3, 2), 5);
  CHECK(fam5[5].coeffs[5] == Rational(32, 120));
}

TEST_CASE("rank-1 exact relations", "[meixner][identity]") {
  for (const Rational& nu : {Rational(1), Rational(3, 2), Rational(2)}) {
    for (int n = 0; n <= 12; ++n) {
      auto [rec, diff] = check_mp_rank1_relations(nu, n);
      CHECK(rec.status == CheckStatus::Pass);
      CHECK(diff.status == CheckStatus::Pass);
    }
  }
  // difference relation at n=0 is the constant identity -nu = -nu
  auto [rec0, diff0] = check_mp_rank1_relations(Rational(2), 0);
  CHECK(diff0.lhs == diff0.rhs);
}

TEST_CASE("spectral difference shift reading", "[meixner]") {
  CHECK(spectral_shift_reading_is_shifted(Rational(2)));
  CHECK(spectral_shift_reading_is_shifted(Rational(3, 2)));
}

TEST_CASE("coefficient symmetry under reflection", "[meixner][property]") {
  // conj(p(conj lambda)) with i -> -i equals p(-lambda): true because the
  // beta coefficients are real rationals.
  auto p = mp_rank1(Rational(5, 2), 7);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    Complex lam(u(rng), u(rng));
    Complex a = p.value(-lam);
    Complex b = std::conj(p.value(std::conj(lam)));
    CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
  }
}

TEST_CASE("generating series partial sums", "[meixner][property]") {
  double nu = 2.0;
  const int N = 12;
  auto fam = mp_rank1_family(Rational(2), N);
  for (double lam : {0.0, 1.0, 2.5}) {
    for (double x : {0.1, -0.2, 0.3}) {
      Complex partial = 0.0;
      for (int n = 0; n <= N; ++n)
        partial += fam[n].value(lam) * std::pow(x, n);
      Complex full = g_series(nu, lam, x);
      // tail starts at x^{N+1}
      CHECK(std::abs(partial - full) <= 50.0 * std::pow(std::abs(x), N + 1));
    }
  }
}

TEST_CASE("mp polynomial serialization", "[meixner]") {
  auto j = mp_rank1(Rational(2), 2).to_json();
  CHECK(j["n"] == 2);
  REQUIRE(j["lambda_coefficients"].size() == 3);
  // p_2 = 2 beta^2 + 1 = -2 lambda^2 + 1 at nu = 2
  CHECK(j["lambda_coefficients"][0]["re"]["num"] == "1");
  CHECK(j["lambda_coefficients"][2]["re"]["num"] == "-2");
  CHECK(j["lambda_coefficients"][1]["re"]["num"] == "0");
}

TEST_CASE("spherical function of the bounded domain", "[meixner]") {
  QuadratureSpec quad;
  // x = 0 maps to the identity, phi = 1
  auto zero = JordanElement::diagonal(kSym2, {0.0, 0.0});
  std::vector<Complex> lam = {Complex(0.7, 0.0), Complex(-0.3, 0.0)};
  Complex v0 = phi_lambda(lam, zero, rho_vector(kSym2, -1), kSym2, quad);
  CHECK(std::abs(v0 - 1.0) < 1e-12);

  // rank 1 closed form ((1+x)/(1-x))^{i lambda}
  double x = 0.4, l = 1.3;
  Complex v1 = phi_lambda({Complex(l, 0.0)}, JordanElement::scalar(kLine, x),
                          rho_vector(kLine), kLine, quad);
  Complex expect = std::exp(Complex(0.0, l) * std::log((1.0 + x) / (1.0 - x)));
  CHECK(std::abs(v1 - expect) < 1e-12);

  CHECK_THROWS_AS(phi_lambda(lam, JordanElement::diagonal(kSym2, {1.2, 0.1}),
                             rho_vector(kSym2, -1), kSym2, quad),
                  NonPositiveMinor);
}

TEST_CASE("spherical function is Weyl invariant for the adopted rho",
          "[meixner][property]") {
  QuadratureSpec quad;
  Eigen::Matrix2d xm;
  xm << 0.25, 0.1, 0.1, -0.15;
  auto x = JordanElement::from_real(kSym2, xm);
  std::vector<Complex> lam = {Complex(0.4, 0.0), Complex(-0.15, 0.0)};
  std::vector<Complex> swapped = {lam[1], lam[0]};
  auto rho_good = rho_vector(kSym2, -1);
  Complex a = phi_lambda(lam, x, rho_good, kSym2, quad);
  Complex b = phi_lambda(swapped, x, rho_good, kSym2, quad);
  CHECK(std::abs(a - b) < 1e-12);
  // the opposite sign is visibly not Weyl symmetric
  auto rho_bad = rho_vector(kSym2, +1);
  Complex c = phi_lambda(lam, x, rho_bad, kSym2, quad);
  Complex d = phi_lambda(swapped, x, rho_bad, kSym2, quad);
  CHECK(std::abs(c - d) > 1e-4);
}

TEST_CASE("general extraction reduces to the exact rank-1 polynomials",
          "[meixner][oracle]") {
  QuadratureSpec quad;
  auto fam = mp_rank1_family(Rational(3), 6);
  for (double l : {0.0, 0.7, -1.2}) {
    std::vector<Complex> lam = {Complex(l, 0.0)};
    auto ex = mp_expansion(3.0, lam, rho_vector(kLine), kLine, 6, quad);
    CHECK_FALSE(ex.truncation_warning);
    for (int n = 0; n <= 6; ++n) {
      Complex exact = fam[n].value(lam[0]);
      CHECK(std::abs(ex.coeff.at(Partition({n})) - exact) <
            1e-8 * (1.0 + std::abs(exact)));
    }
  }
}

TEST_CASE("rank-2 extraction basics", "[meixner]") {
  QuadratureSpec quad;
  std::vector<Complex> lam = {Complex(0.3, 0.0), Complex(-0.1, 0.0)};
  auto rho = rho_vector(kSym2, -1);
  auto ex = mp_expansion(3.0, lam, rho, kSym2, 2, quad);
  // psi_0 coefficient of the series at x = 0 is exactly 1
  CHECK(std::abs(ex.coeff.at(Partition::zero(2)) - 1.0) < 1e-10);
  CHECK(ex.est_error < 1e-6);
  // values are finite, conjugate-symmetric in lambda -> -lambda
  std::vector<Complex> neg = {-lam[0], -lam[1]};
  auto exneg = mp_expansion(3.0, neg, rho, kSym2, 2, quad);
  for (auto& [m, v] : ex.coeff) {
    CHECK(std::isfinite(v.real()));
    // real lambda: p(-lambda) = conj(p(lambda)) for these polynomials
    CHECK(std::abs(exneg.coeff.at(m) - std::conj(v)) < 1e-9 * (1.0 + std::abs(v)));
  }
}

TEST_CASE("difference relations at rank 2", "[meixner][identity]") {
  QuadratureSpec quad;
  std::vector<Complex> lam = {Complex(0.3, 0.0), Complex(-0.1, 0.0)};
  for (int sign : {+1, -1}) {
    for (auto& m : partitions_up_to(2, 2)) {
      auto rep = check_mp_difference(3.0, m, lam, sign, kSym2, quad, 1e-5);
      INFO("sign=" << sign << " m=" << m.str() << " rel=" << rep.rel_residual);
      CHECK(rep.status == CheckStatus::Pass);
      auto spec = check_mp_spectral_difference(3.0, m, lam, sign, kSym2, quad, true, 1e-5);
      INFO("spectral sign=" << sign << " m=" << m.str() << " rel=" << spec.rel_residual);
      CHECK(spec.status == CheckStatus::Pass);
    }
  }
  // the unshifted reading of the spectral relation fails visibly
  auto bad = check_mp_spectral_difference(3.0, Partition({1, 0}), lam, -1, kSym2,
                                          quad, false, 1e-5);
  CHECK(bad.status == CheckStatus::Fail);
}

TEST_CASE("degenerate lambda points are skipped", "[meixner]") {
  QuadratureSpec quad;
  // equal coordinates with rho sign -1 zero out a step/c denominator at
  // n = i lambda + rho - nu/2
  std::vector<Complex> lam = {Complex(0.4, 0.0), Complex(0.4, 0.0)};
  auto rep = check_mp_spectral_difference(3.0, Partition({1, 0}), lam, -1, kSym2,
                                          quad, true, 1e-5);
  CHECK(rep.status == CheckStatus::SkippedDegenerate);
  // the same point with the opposite sign stays regular
  auto ok = check_mp_spectral_difference(3.0, Partition({1, 0}), lam, +1, kSym2,
                                         quad, true, 1e-5);
  CHECK(ok.status == CheckStatus::Pass);
}
