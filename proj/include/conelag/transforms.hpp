#pragma once

// The weighted Laplace transform on the cone, the tube-side basis functions
// q_{m,nu}, their exchange identity, and the generating function of the
// Laguerre functions.

#include "conelag/laguerre.hpp"
#include "conelag/quadrature.hpp"

namespace conelag::transforms {

using jordan::JordanElement;
using jordan::TubeElement;

/// Principal-branch power Delta(z+e)^{-nu}; refuses arguments whose
/// determinant falls on the closed negative real axis rather than picking a
/// branch.
inline Complex shifted_det_power(const TubeElement& z, double nu) {
  const int r = z.rank();
  Eigen::MatrixXcd s = z.matrix() + Eigen::MatrixXcd::Identity(r, r);
  Complex det = s.determinant();
  double scale = std::pow(1.0 + z.matrix().norm(), r);
  if (std::abs(det) < 1e-12 * scale)
    throw SingularShift("z + e is numerically singular");
  if (det.real() <= 0.0 && std::abs(det.imag()) <= 1e-14 * std::abs(det.real()))
    throw BranchViolation("det(z+e) on the negative real axis");
  return std::exp(-nu * std::log(det));
}

/// q_{m,nu}(z) = Delta(z+e)^{-nu} psi_m((z-e)(z+e)^{-1}).
inline Complex q_basis(double nu, const Partition& m, const TubeElement& z) {
  Complex pref = shifted_det_power(z, nu);
  Eigen::MatrixXcd w = jordan::cayley_inverse(z.matrix());
  return pref * spherical::spherical_poly_matrix(m, w, z.cone());
}

// ---------------------------------------------------------------------------
// Laplace transform
// ---------------------------------------------------------------------------

/// Rank-1 transform of a holomorphically extendable integrand:
///   L(f)(z) = int_0^inf e^{-z x} f(x) x^{nu-1} dx,
/// where f(x) = g(x) e^{-decay x} with g entire of polynomial-type growth.
/// The substitution u = (z + decay) x turns the rule exact for polynomial g,
/// oscillation-free for complex z.
inline Complex laplace_rank1(double nu, const std::function<Complex(Complex)>& f,
                             double decay, Complex z, const QuadratureSpec& quad) {
  Complex sigma = z + decay;
  if (!(sigma.real() > 0.0))
    throw ConfigError("Re z must exceed the negated decay rate");
  const auto& rule = gauss_laguerre(nu - 1.0, quad.rank1_nodes);
  std::vector<Complex> terms(rule.nodes.size());
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    Complex x = rule.nodes[i] / sigma;
    terms[i] = rule.weights[i] * f(x) * std::exp(decay * x);
  }
  Complex s = detail::pairwise_sum(terms);
  return s * std::exp(-nu * std::log(sigma));
}

/// L(f)(z) = int_Omega e^{-(z,x)} f(x) d mu_nu(x) for Re z in the cone.
/// `f_decay` declares the exponential decay of f itself; the real part of z
/// joins it in the quadrature weights while the imaginary part stays in the
/// integrand as a phase.
inline Complex laplace_transform(double nu, const Integrand& f,
                                 const Eigen::MatrixXd& f_decay, const TubeElement& z,
                                 const QuadratureSpec& quad) {
  const auto& cone = z.cone();
  JordanElement re = z.real_part();
  if (!jordan::in_cone(re)) throw NonPositiveMinor("Re z must lie in the open cone");
  Integrand g = [&](const JordanElement& x) {
    return f(x) * std::exp(-jordan::pairing(z.matrix(), x.matrix()));
  };
  Eigen::Matrix2d decay = Eigen::Matrix2d::Identity();
  if (cone.rank == 1) {
    decay(0, 0) = re.matrix()(0, 0).real() + f_decay(0, 0);
  } else {
    decay = re.matrix().real() + f_decay;
  }
  return cone_quadrature(cone, nu, g, quad, decay, false);
}

namespace detail {

/// Classical generalized Laguerre polynomial by the stable three-term
/// recurrence, in extended precision.
inline std::complex<long double> classical_laguerre_ld(int n, long double alpha,
                                                       std::complex<long double> y) {
  if (n == 0) return 1.0L;
  std::complex<long double> lm1 = 1.0L;
  std::complex<long double> l = 1.0L + alpha - y;
  for (int k = 1; k < n; ++k) {
    auto lnext = ((2.0L * k + alpha + 1.0L - y) * l - (k + alpha) * lm1) /
                 (long double)(k + 1);
    lm1 = l;
    l = lnext;
  }
  return l;
}

/// Rank-1 L(ell_n)(z) with extended-precision accumulation.  At z near the
/// real axis the transform is exponentially smaller than the oscillating
/// integrand (by ((z-1)/(z+1))^n), so double accumulation loses up to six
/// digits at n = 8; 80-bit arithmetic restores them.
inline Complex laplace_laguerre_rank1(double nu, int n, Complex z,
                                      const QuadratureSpec& quad) {
  using CLD = std::complex<long double>;
  // The substituted integrand is a polynomial of degree n, so a small rule
  // is already exact; extra nodes only add weight noise amplified by the
  // polynomial growth at far nodes.
  const int nodes = std::min(quad.rank1_nodes, std::max(n + 6, 12));
  const auto& rule = gauss_laguerre(nu - 1.0, nodes);
  CLD sigma(z.real() + 1.0L, z.imag());
  long double nfact = 1.0L;
  for (int k = 2; k <= n; ++k) nfact *= k;
  CLD acc = 0.0L;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    CLD x = (long double)rule.nodes[i] / sigma;
    acc += (long double)rule.weights[i] *
           classical_laguerre_ld(n, (long double)nu - 1.0L, 2.0L * x);
  }
  CLD val = nfact * acc * std::exp(-(long double)nu * std::log(sigma));
  return Complex((double)val.real(), (double)val.imag());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The Laplace image of the Laguerre functions
// ---------------------------------------------------------------------------

/// L_nu(ell_m^nu) = Gamma_Omega(m + nu) q_{m,nu}: compares the transform
/// computed by quadrature against the closed form on the tube side.
inline IdentityReport check_laplace_identity(double nu, const Partition& m,
                                             const TubeElement& z,
                                             const QuadratureSpec& quad,
                                             double tol = -1.0) {
  const auto& cone = z.cone();
  laguerre::LaguerreSpec spec(nu, m, cone);
  if (tol < 0.0) tol = cone.rank == 1 ? 1e-10 : 1e-3;

  nlohmann::ordered_json pt;
  pt["rank"] = cone.rank;
  pt["multiplicity"] = cone.mult;
  pt["nu"] = nu;
  pt["m"] = m.parts();
  {
    std::vector<double> zre, zim;
    for (int i = 0; i < cone.rank; ++i) {
      zre.push_back(z.matrix()(i, i).real());
      zim.push_back(z.matrix()(i, i).imag());
    }
    pt["z_diag_re"] = zre;
    pt["z_diag_im"] = zim;
  }

  Complex lhs;
  if (cone.rank == 1) {
    lhs = detail::laplace_laguerre_rank1(nu, m.part(0), z.scalar_value(), quad);
  } else {
    Integrand f = [&](const JordanElement& x) {
      return Complex(laguerre::laguerre_fn(spec, x));
    };
    lhs = laplace_transform(nu, f, Eigen::MatrixXd::Identity(cone.rank, cone.rank), z,
                            quad);
  }
  Complex rhs = spherical::gindikin_gamma(nu, m, cone) * q_basis(nu, m, z);
  return IdentityReport::make("laplace-image", pt, lhs, rhs, tol);
}

// ---------------------------------------------------------------------------
// Generating function
// ---------------------------------------------------------------------------

struct GeneratingResult {
  Complex lhs = 0.0;
  Complex partial_sum = 0.0;
  double residual = 0.0;
};

/// The closed form Delta(e-w)^{-nu} int_{K cap H} e^{-(k x k^{-1}, c(w))} dk
/// against the truncated expansion sum_{|m| <= N} d_m (d/r)_m^{-1}
/// psi_m(w) ell_m^nu(x), for w in the real bounded domain and x in the cone.
inline GeneratingResult generating_series(double nu, const JordanElement& w,
                                          const JordanElement& x, int max_weight,
                                          const QuadratureSpec& quad) {
  const auto& cone = w.cone();
  if (!jordan::in_real_domain(w))
    throw NonPositiveMinor("w must lie in the real bounded domain");
  JordanElement cw = jordan::cayley(w);

  GeneratingResult out;
  double det_pref = 1.0;
  {
    Eigen::MatrixXcd em = Eigen::MatrixXcd::Identity(cone.rank, cone.rank) - w.matrix();
    double det = em.determinant().real();
    det_pref = std::pow(det, -nu);
  }
  if (cone.rank == 1) {
    out.lhs = det_pref * std::exp(-cw.matrix()(0, 0).real() * x.scalar_value());
  } else {
    const double two_pi = 6.283185307179586476925;
    Complex acc = 0.0;
    for (int k = 0; k < quad.angle_nodes; ++k) {
      double th = two_pi * k / quad.angle_nodes;
      Eigen::Matrix2d rot;
      rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
      Eigen::MatrixXcd kxk = rot.cast<Complex>() * x.matrix() * rot.transpose().cast<Complex>();
      acc += std::exp(-jordan::pairing(cw.matrix(), kxk));
    }
    out.lhs = det_pref * acc / double(quad.angle_nodes);
  }

  Complex sum = 0.0;
  for (auto& m : partitions_up_to(cone.rank, max_weight)) {
    double dm = to_double(spherical::dim_pm(m, cone));
    double dr = spherical::gen_pochhammer(cone.dim_over_rank(), m, cone);
    double psi = spherical::spherical_poly(m, w, cone);
    double ell = laguerre::laguerre_fn(laguerre::LaguerreSpec(nu, m, cone), x);
    sum += dm / dr * psi * ell;
  }
  out.partial_sum = sum;
  out.residual = std::abs(out.lhs - out.partial_sum) /
                 std::max(std::abs(out.lhs), 1e-30);
  return out;
}

/// Nodes and weights of the underlying rules in CSV form (debug aid).
inline std::string dump_nodes_csv(const ConeStructure& cone, double nu,
                                  const QuadratureSpec& quad) {
  std::ostringstream os;
  os << "coordinate,index,node,weight\n";
  char buf[128];
  if (cone.rank == 1) {
    const auto& rule = gauss_laguerre(nu - 1.0, quad.rank1_nodes);
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
      std::snprintf(buf, sizeof buf, "x,%zu,%.17g,%.17g\n", i, rule.nodes[i],
                    rule.weights[i]);
      os << buf;
    }
    return os.str();
  }
  const auto& rv = gauss_laguerre(nu - cone.dim_over_rank(), quad.radial_nodes);
  const auto& rd = gauss_laguerre(double(cone.mult), quad.radial_nodes);
  for (size_t i = 0; i < rv.nodes.size(); ++i) {
    std::snprintf(buf, sizeof buf, "v,%zu,%.17g,%.17g\n", i, rv.nodes[i], rv.weights[i]);
    os << buf;
  }
  for (size_t i = 0; i < rd.nodes.size(); ++i) {
    std::snprintf(buf, sizeof buf, "delta,%zu,%.17g,%.17g\n", i, rd.nodes[i],
                  rd.weights[i]);
    os << buf;
  }
  for (int k = 0; k < quad.angle_nodes; ++k) {
    std::snprintf(buf, sizeof buf, "theta,%d,%.17g,%.17g\n", k,
                  6.283185307179586476925 * k / quad.angle_nodes,
                  1.0 / quad.angle_nodes);
    os << buf;
  }
  return os.str();
}

}  // namespace conelag::transforms
