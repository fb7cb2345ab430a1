#pragma once

// Core vocabulary shared by every module: structure constants of the cone,
// exact rational arithmetic, the error taxonomy, and quadrature settings.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace conelag {

using Complex = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Complex to_complex(const Rational& q) {
  return Complex(to_double(q), 0.0);
}

/// q^n with integer n (n may be negative; q must be nonzero then).
inline Rational rational_pow(const Rational& q, long n) {
  if (n < 0) return 1 / rational_pow(q, -n);
  Rational acc = 1, base = q;
  for (long k = n; k > 0; k >>= 1) {
    if (k & 1) acc *= base;
    if (k > 1) base *= base;
  }
  return acc;
}

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define CONELAG_ERROR(Name)                                         \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(#Name, what) {}  \
  }

CONELAG_ERROR(NonPositiveMinor);
CONELAG_ERROR(SingularCayley);
CONELAG_ERROR(GammaPole);
CONELAG_ERROR(ZeroDenominator);
CONELAG_ERROR(SingularInterpolation);
CONELAG_ERROR(UnsupportedRank);
CONELAG_ERROR(UnsupportedCone);
CONELAG_ERROR(UncalibratedQuadrature);
CONELAG_ERROR(DegenerateCoefficient);
CONELAG_ERROR(SingularShift);
CONELAG_ERROR(BranchViolation);
CONELAG_ERROR(ConfigError);

#undef CONELAG_ERROR

/// Discrete invariants of a symmetric cone: rank r, root multiplicity a,
/// real dimension d = r + a r(r-1)/2.  a = 1 is the real-symmetric matrix
/// cone, a = 2 the complex-Hermitian one; rank 1 is the half-line for
/// either value of a.
struct ConeStructure {
  int rank = 1;
  int mult = 1;
  int dim = 1;

  ConeStructure() = default;
  ConeStructure(int r, int a) : rank(r), mult(a), dim(r + a * r * (r - 1) / 2) {
    if (r < 1) throw ConfigError("rank must be >= 1");
    if (a < 1) throw ConfigError("multiplicity must be >= 1");
  }

  double half_mult() const { return 0.5 * mult; }
  double dim_over_rank() const { return double(dim) / rank; }
  Rational dim_over_rank_exact() const { return Rational(dim, rank); }
  /// p = 2d/r.
  double genus() const { return 2.0 * dim / rank; }
  /// Continuous Wallach threshold a(r-1)/2; norms need nu above it.
  double wallach_edge() const { return 0.5 * mult * (rank - 1); }

  bool operator==(const ConeStructure& o) const {
    return rank == o.rank && mult == o.mult;
  }
};

/// Node counts and extraction settings for every numerical integral in the
/// library.  The rank-2 measure constant is not stored here; it is fixed by
/// self-calibration against the cone gamma function (see quadrature.hpp) and
/// cached per (cone, radial_nodes).
struct QuadratureSpec {
  int rank1_nodes = 96;    // generalized Gauss-Laguerre points on (0,inf)
  int radial_nodes = 48;   // per eigenvalue coordinate at rank 2
  int angle_nodes = 64;    // trapezoid points on the K cap H circle
  int torus_points = 36;   // per-variable circle points for series extraction
  double torus_radius = 0.45;
  double calibration_tol = 1e-6;
};

}  // namespace conelag
