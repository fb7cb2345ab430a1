#pragma once

// Jordan-algebra primitives for the matrix cones: Sym(r,R) when a = 1 and
// Herm(r,C) when a = 2, stored uniformly as complex Hermitian matrices.
// Rank 1 is the half-line in either case.  Tube points carry the
// complexified structure: complex symmetric matrices over Sym, arbitrary
// complex matrices over Herm.

#include <Eigen/Dense>
#include <vector>

#include "conelag/core.hpp"

namespace conelag::jordan {

using Matrix = Eigen::MatrixXcd;

namespace detail {

inline Matrix hermitize(Matrix m) {
  // Canonical one-triangle storage: mirror the lower triangle.
  for (int i = 0; i < m.rows(); ++i) {
    m(i, i) = Complex(m(i, i).real(), 0.0);
    for (int j = i + 1; j < m.cols(); ++j) m(i, j) = std::conj(m(j, i));
  }
  return m;
}

}  // namespace detail

/// A point of the Euclidean Jordan algebra underlying the cone: a real
/// symmetric (a = 1) or complex Hermitian (a = 2) r x r matrix.
class JordanElement {
 public:
  JordanElement(ConeStructure cone, const Matrix& entries, double check_tol = 1e-12)
      : cone_(cone), m_(detail::hermitize(entries)) {
    if (entries.rows() != cone.rank || entries.cols() != cone.rank)
      throw ConfigError("matrix size does not match cone rank");
    if ((entries - entries.adjoint()).norm() >
        check_tol * (1.0 + entries.norm()))
      throw ConfigError("matrix is not Hermitian");
    if (cone.mult == 1 && m_.imag().norm() > check_tol * (1.0 + m_.norm()))
      throw ConfigError("multiplicity-1 cone expects a real symmetric matrix");
  }

  static JordanElement identity(ConeStructure cone) {
    return JordanElement(cone, Matrix::Identity(cone.rank, cone.rank));
  }

  static JordanElement scalar(ConeStructure cone, double v) {
    if (cone.rank != 1) throw ConfigError("scalar element needs rank 1");
    Matrix m(1, 1);
    m(0, 0) = v;
    return JordanElement(cone, m);
  }

  static JordanElement diagonal(ConeStructure cone, const std::vector<double>& d) {
    if (int(d.size()) != cone.rank) throw ConfigError("diagonal length != rank");
    Matrix m = Matrix::Zero(cone.rank, cone.rank);
    for (int i = 0; i < cone.rank; ++i) m(i, i) = d[i];
    return JordanElement(cone, m);
  }

  static JordanElement from_real(ConeStructure cone, const Eigen::MatrixXd& s) {
    return JordanElement(cone, s.cast<Complex>());
  }

  const ConeStructure& cone() const { return cone_; }
  const Matrix& matrix() const { return m_; }
  int rank() const { return cone_.rank; }
  double scalar_value() const { return m_(0, 0).real(); }

  JordanElement scaled(double t) const { return JordanElement(cone_, m_ * t); }
  JordanElement negated() const { return scaled(-1.0); }
  JordanElement plus_identity(double t = 1.0) const {
    return JordanElement(cone_, m_ + t * Matrix::Identity(rank(), rank()));
  }

  std::vector<double> eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(),
                           es.eigenvalues().data() + rank());
    return ev;
  }

  /// tr(x^k), real for Hermitian x.
  double power_sum(int k) const {
    Matrix acc = Matrix::Identity(rank(), rank());
    for (int i = 0; i < k; ++i) acc = acc * m_;
    return acc.trace().real();
  }

  double norm() const { return m_.norm(); }

 private:
  ConeStructure cone_;
  Matrix m_;
};

/// A point of the complexified algebra / tube domain.
class TubeElement {
 public:
  TubeElement(ConeStructure cone, Matrix entries, double check_tol = 1e-12)
      : cone_(cone), m_(std::move(entries)) {
    if (m_.rows() != cone.rank || m_.cols() != cone.rank)
      throw ConfigError("matrix size does not match cone rank");
    // Complexification of Sym is complex-bilinear symmetric; of Herm it is
    // all of M_r(C).
    if (cone.mult == 1 &&
        (m_ - m_.transpose()).norm() > check_tol * (1.0 + m_.norm()))
      throw ConfigError("multiplicity-1 tube point must be complex symmetric");
  }

  static TubeElement diagonal(ConeStructure cone, const std::vector<Complex>& d) {
    if (int(d.size()) != cone.rank) throw ConfigError("diagonal length != rank");
    Matrix m = Matrix::Zero(cone.rank, cone.rank);
    for (int i = 0; i < cone.rank; ++i) m(i, i) = d[i];
    return TubeElement(cone, m);
  }

  static TubeElement from_jordan(const JordanElement& x) {
    return TubeElement(x.cone(), x.matrix());
  }

  const ConeStructure& cone() const { return cone_; }
  const Matrix& matrix() const { return m_; }
  int rank() const { return cone_.rank; }
  Complex scalar_value() const { return m_(0, 0); }

  /// The Hermitian part; for a Laplace-transform argument this must lie in
  /// the open cone.
  JordanElement real_part() const {
    Matrix re = 0.5 * (m_ + m_.adjoint());
    return JordanElement(cone_, re);
  }

 private:
  ConeStructure cone_;
  Matrix m_;
};

/// Tr x.
inline double trace(const JordanElement& x) { return x.matrix().trace().real(); }

namespace detail {

inline Complex leading_minor(const Matrix& m, int j) {
  if (j == 1) return m(0, 0);
  return m.topLeftCorner(j, j).determinant();
}

}  // namespace detail

/// The Jordan determinant; for matrix cones the ordinary determinant.
inline double det_delta(const JordanElement& x) {
  return detail::leading_minor(x.matrix(), x.rank()).real();
}

/// Delta_j(x): determinant of the leading j x j block, 1 <= j <= rank.
inline double principal_minor(const JordanElement& x, int j) {
  if (j < 1 || j > x.rank()) throw ConfigError("principal minor index out of range");
  return detail::leading_minor(x.matrix(), j).real();
}

/// Delta_alpha(x) = Delta_1^{a1-a2} ... Delta_r^{ar}, defined through real
/// logarithms of the minors.  Outside the region where every minor is
/// strictly positive there is no canonical branch, so we refuse.
inline Complex power_function(const JordanElement& x, const std::vector<Complex>& alpha) {
  const int r = x.rank();
  if (int(alpha.size()) != r) throw ConfigError("exponent tuple length != rank");
  Complex log_acc = 0.0;
  for (int j = 1; j <= r; ++j) {
    double dj = principal_minor(x, j);
    if (!(dj > 0.0))
      throw NonPositiveMinor("Delta_" + std::to_string(j) + " = " + std::to_string(dj));
    Complex expo = alpha[j - 1] - (j < r ? alpha[j] : Complex(0.0));
    log_acc += expo * std::log(dj);
  }
  return std::exp(log_acc);
}

namespace detail {

inline Matrix cayley_matrix(const Matrix& z, double rcond_floor = 1e-12) {
  const int r = int(z.rows());
  Matrix a = Matrix::Identity(r, r) - z;
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double smin = svd.singularValues()(r - 1);
  double smax = svd.singularValues()(0);
  if (!(smin > rcond_floor * smax) || !(smax > 0))
    throw SingularCayley("e - z has reciprocal condition below threshold");
  Matrix b = Matrix::Identity(r, r) + z;
  return b * svd.solve(Matrix::Identity(r, r));
}

}  // namespace detail

/// c(z) = (e+z)(e-z)^{-1}.  Maps the real bounded domain onto the cone.
inline TubeElement cayley(const TubeElement& z) {
  return TubeElement(z.cone(), detail::cayley_matrix(z.matrix()));
}

/// Cayley image of a real point of the bounded domain; lands in the algebra.
inline JordanElement cayley(const JordanElement& x) {
  Matrix c = detail::cayley_matrix(x.matrix());
  return JordanElement(x.cone(), 0.5 * (c + c.adjoint()));
}

/// Inverse Cayley transform w -> (w-e)(w+e)^{-1}.
inline Matrix cayley_inverse(const Matrix& w, double rcond_floor = 1e-12) {
  const int r = int(w.rows());
  Matrix a = Matrix::Identity(r, r) + w;
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double smin = svd.singularValues()(r - 1);
  double smax = svd.singularValues()(0);
  if (!(smin > rcond_floor * smax) || !(smax > 0))
    throw SingularCayley("w + e has reciprocal condition below threshold");
  return (w - Matrix::Identity(r, r)) * svd.solve(Matrix::Identity(r, r));
}

/// True iff the smallest eigenvalue exceeds tol.
inline bool in_cone(const JordanElement& x, double tol = 0.0) {
  auto ev = x.eigenvalues();
  return ev.front() > tol;
}

/// True iff e - x^2 is positive definite (the real bounded domain D_R).
inline bool in_real_domain(const JordanElement& x) {
  for (double ev : x.eigenvalues())
    if (std::abs(ev) >= 1.0) return false;
  return true;
}

/// The complex bilinear trace pairing (z, x) = Tr(z x); real on pairs of
/// Hermitian points.
inline Complex pairing(const Matrix& z, const Matrix& x) {
  return (z * x).trace();
}

}  // namespace conelag::jordan
