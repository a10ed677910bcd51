#pragma once

// Dense complex linear algebra shared by every other module. All routines
// are pure functions of their inputs.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <sstream>
#include <string>

#include "horizon/error.hpp"

namespace horizon {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

struct Tolerance {
  double rank_tol = 1e-10;  // singular values below rank_tol * max(1, sigma_max) count as zero
  double eq_tol = 1e-9;     // elementwise / residual comparisons

  void validate() const {
    if (!(rank_tol > 0.0) || !(eq_tol > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");
    }
  }

  /// Reads "tol" (both fields) or "rank_tol,eq_tol" from the environment.
  static Tolerance from_env(const char* var = "HORIZON_TOL") {
    Tolerance tol;
    const char* raw = std::getenv(var);
    if (raw == nullptr || *raw == '\0') return tol;
    std::string text(raw);
    try {
      auto comma = text.find(',');
      if (comma == std::string::npos) {
        tol.rank_tol = tol.eq_tol = std::stod(text);
      } else {
        tol.rank_tol = std::stod(text.substr(0, comma));
        tol.eq_tol = std::stod(text.substr(comma + 1));
      }
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, std::string(var) + " is not a number pair: " + text);
    }
    tol.validate();
    return tol;
  }
};

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

inline bool is_hermitian(const ComplexMatrix& h, double tol) {
  return h.rows() == h.cols() && (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_skew_hermitian(const ComplexMatrix& a, double tol) {
  return a.rows() == a.cols() && (a + a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const ComplexMatrix id = ComplexMatrix::Identity(u.rows(), u.cols());
  return (u.adjoint() * u - id).cwiseAbs().maxCoeff() <= tol;
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

/// Re Tr(A^dag B).
inline double trace_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

inline double frobenius(const ComplexMatrix& a) { return a.norm(); }

/// Orthonormal basis (as columns) of { v : M v = 0 }. Singular values at or
/// below rank_tol * max(1, sigma_max) are treated as zero.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> null_space(
    const Eigen::MatrixBase<Derived>& m, const Tolerance& tol = {}) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return Mat::Identity(cols, cols);
  Eigen::JacobiSVD<Mat> svd(m.derived(), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = tol.rank_tol * std::max(1.0, sv.size() > 0 ? double(sv(0)) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

struct HermEig {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // unitary, columns are eigenvectors
};

namespace detail {

// Fix the phase of each column so its largest-magnitude entry is real positive.
inline void canonicalize_phases(ComplexMatrix& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    Eigen::Index arg = 0;
    v.col(c).cwiseAbs().maxCoeff(&arg);
    const cplx pivot = v(arg, c);
    if (std::abs(pivot) > 0.0) v.col(c) *= std::conj(pivot) / std::abs(pivot);
  }
}

}  // namespace detail

inline HermEig herm_eig(const ComplexMatrix& h, const Tolerance& tol = {}) {
  if (!is_hermitian(h, tol.eq_tol * std::max(1.0, h.cwiseAbs().maxCoeff()))) {
    throw Error(ErrorKind::NotHermitian, "matrix fails the Hermitian symmetry check");
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  HermEig out{solver.eigenvalues(), solver.eigenvectors()};
  detail::canonicalize_phases(out.vectors);
  return out;
}

/// Eigendecomposition of a skew-Hermitian A, stored as iA = V diag(lambda) V^dag,
/// so exp(A) = V diag(e^{-i lambda}) V^dag. Reusable for many derivative directions.
class SkewExp {
 public:
  explicit SkewExp(const ComplexMatrix& a, const Tolerance& tol = {}) {
    const double scale = std::max(1.0, a.size() ? a.cwiseAbs().maxCoeff() : 0.0);
    if (!is_skew_hermitian(a, tol.eq_tol * scale)) {
      throw Error(ErrorKind::NotSkewHermitian, "generator is not skew-Hermitian");
    }
    eig_ = herm_eig(kI * 0.5 * (a - a.adjoint()), tol);
    const Eigen::Index n = eig_.values.size();
    phases_.resize(n);
    for (Eigen::Index p = 0; p < n; ++p) phases_(p) = std::exp(-kI * eig_.values(p));
    value_ = eig_.vectors * phases_.asDiagonal() * eig_.vectors.adjoint();
  }

  const ComplexMatrix& value() const { return value_; }

  /// d/dt exp(A + t dA) at t = 0 via the Daleckii-Krein divided differences.
  ComplexMatrix derivative(const ComplexMatrix& da) const {
    const ComplexMatrix& v = eig_.vectors;
    ComplexMatrix t = v.adjoint() * da * v;
    const Eigen::Index n = t.rows();
    for (Eigen::Index q = 0; q < n; ++q) {
      for (Eigen::Index p = 0; p < n; ++p) {
        // (e^{mu_p} - e^{mu_q}) / (mu_p - mu_q) with mu = -i lambda, written
        // as e^{(mu_p+mu_q)/2} sinc((lambda_p-lambda_q)/2) to stay stable.
        const double half = 0.5 * (eig_.values(p) - eig_.values(q));
        const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
        t(p, q) *= std::exp(-kI * 0.5 * (eig_.values(p) + eig_.values(q))) * sinc;
      }
    }
    return v * t * v.adjoint();
  }

  const HermEig& eig() const { return eig_; }

 private:
  HermEig eig_;
  ComplexVector phases_;
  ComplexMatrix value_;
};

inline ComplexMatrix expm_skew(const ComplexMatrix& a, const Tolerance& tol = {}) {
  return SkewExp(a, tol).value();
}

inline ComplexMatrix dexpm(const ComplexMatrix& a, const ComplexMatrix& da,
                           const Tolerance& tol = {}) {
  if (da.rows() != a.rows() || da.cols() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "dexpm direction has the wrong shape");
  }
  return SkewExp(a, tol).derivative(da);
}

/// Principal logarithm of U / det(U)^{1/N}; eigenphases in (-pi, pi].
inline ComplexMatrix logm_unitary(const ComplexMatrix& u, const Tolerance& tol = {}) {
  if (!is_unitary(u, tol.eq_tol * 10.0)) {
    throw Error(ErrorKind::NonUnitary, "logm_unitary expects a unitary matrix");
  }
  const auto n = static_cast<double>(u.rows());
  const cplx det = u.determinant();
  const cplx root = std::polar(1.0, std::arg(det) / n);
  const ComplexMatrix normalized = u / root;

  Eigen::ComplexSchur<ComplexMatrix> schur(normalized);
  const ComplexMatrix& q = schur.matrixU();
  const ComplexMatrix& t = schur.matrixT();
  ComplexVector logs(t.rows());
  for (Eigen::Index p = 0; p < t.rows(); ++p) {
    const double phase = std::arg(t(p, p));
    if (kPi - std::abs(phase) < tol.eq_tol) {
      throw Error(ErrorKind::BranchAmbiguity, "eigenphase lies on the branch cut at pi");
    }
    logs(p) = kI * phase;
  }
  ComplexMatrix a = q * logs.asDiagonal() * q.adjoint();
  return 0.5 * (a - a.adjoint());
}

/// exp(A) for skew-Hermitian A and its derivative along dA in one shot.
inline std::pair<ComplexMatrix, ComplexMatrix> expm_with_derivative(const ComplexMatrix& a,
                                                                    const ComplexMatrix& da,
                                                                    const Tolerance& tol = {}) {
  SkewExp e(a, tol);
  return {e.value(), e.derivative(da)};
}

/// Global-phase-insensitive distance: 1 - |Tr(A^dag B)| / N for unitaries.
inline double phase_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return 1.0 - std::abs((a.adjoint() * b).trace()) / static_cast<double>(a.rows());
}

/// Max elementwise error between A and B after aligning B's global phase to A.
inline double max_error_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b) {
  const cplx overlap = (b.adjoint() * a).trace();
  const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx{1.0, 0.0};
  return (a - phase * b).cwiseAbs().maxCoeff();
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace horizon
