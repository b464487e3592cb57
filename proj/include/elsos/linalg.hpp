#pragma once

// Dense Hermitian linear algebra used by every numerical module.
//
// Operators are stored as Eigen matrices over `double` (real symmetric) or
// `std::complex<double>` (complex Hermitian). Eigensolves go through Eigen's
// self-adjoint solver (Householder tridiagonalization + implicit QL).

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace elsos {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<std::complex<double>>;
using Index = Eigen::Index;

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kSpectralCutTolerance = 1e-8;
/// Largest dimension `kron` will produce unless told otherwise (12^4).
inline constexpr Index kDefaultKronCap = 20736;

template <typename Scalar>
inline constexpr bool is_complex_v = !std::is_same_v<Scalar, double>;

template <typename Scalar>
double max_abs_entry(const Matrix<Scalar>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename Scalar>
bool all_finite(const Matrix<Scalar>& m) {
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r) {
      if constexpr (is_complex_v<Scalar>) {
        if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) return false;
      } else {
        if (!std::isfinite(m(r, c))) return false;
      }
    }
  return true;
}

/// A square matrix equal to its conjugate transpose.
///
/// Construction rejects non-finite or non-square input and input whose
/// Hermitian defect exceeds `tol * max(1, max|entry|)`. The stored matrix is
/// the exact symmetrization (A + A*)/2.
template <typename Scalar>
class HermitianOperator {
 public:
  using MatrixType = Matrix<Scalar>;

  HermitianOperator() = default;

  explicit HermitianOperator(MatrixType entries, double tol = kHermitianTolerance) {
    if (entries.rows() != entries.cols())
      throw LinalgError("HermitianOperator: matrix is not square");
    if (!all_finite(entries)) throw LinalgError("HermitianOperator: non-finite entries");
    const double scale = std::max(1.0, max_abs_entry(entries));
    const double defect = max_abs_entry<Scalar>(entries - entries.adjoint());
    if (defect > tol * scale)
      throw LinalgError("HermitianOperator: matrix is not Hermitian (defect " +
                        std::to_string(defect) + ")");
    m_ = (entries + entries.adjoint()) * 0.5;
  }

  static HermitianOperator identity(Index dim) {
    return HermitianOperator(MatrixType::Identity(dim, dim));
  }
  static HermitianOperator zero(Index dim) {
    return HermitianOperator(MatrixType::Zero(dim, dim));
  }
  static HermitianOperator diagonal(const std::vector<double>& d) {
    MatrixType m = MatrixType::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = d[i];
    return HermitianOperator(std::move(m));
  }

  Index dim() const { return m_.rows(); }
  const MatrixType& matrix() const { return m_; }
  Scalar operator()(Index r, Index c) const { return m_(r, c); }

  HermitianOperator& operator+=(const HermitianOperator& o) {
    check_same_dim(o);
    m_ += o.m_;
    return *this;
  }
  HermitianOperator& operator-=(const HermitianOperator& o) {
    check_same_dim(o);
    m_ -= o.m_;
    return *this;
  }
  HermitianOperator& operator*=(double c) {
    m_ *= c;
    return *this;
  }
  friend HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b) { return a += b; }
  friend HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b) { return a -= b; }
  friend HermitianOperator operator*(double c, HermitianOperator a) { return a *= c; }

  /// this + c * I
  HermitianOperator shifted(double c) const {
    HermitianOperator out = *this;
    out.m_.diagonal().array() += Scalar(c);
    return out;
  }

  /// Complex copy of a real operator (identity for complex operators).
  HermitianOperator<std::complex<double>> to_complex() const {
    return HermitianOperator<std::complex<double>>(m_.template cast<std::complex<double>>());
  }

 private:
  void check_same_dim(const HermitianOperator& o) const {
    if (o.dim() != dim()) throw LinalgError("HermitianOperator: dimension mismatch");
  }
  MatrixType m_;
};

using RealOperator = HermitianOperator<double>;
using ComplexOperator = HermitianOperator<std::complex<double>>;

template <typename Scalar>
struct EigenDecomposition {
  Eigen::VectorXd values;  // ascending
  Matrix<Scalar> vectors;  // columns are orthonormal eigenvectors
};

template <typename Scalar>
EigenDecomposition<Scalar> eig_hermitian(const HermitianOperator<Scalar>& op) {
  if (op.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(op.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw LinalgError("eig_hermitian: solver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Ascending eigenvalues only; cheaper than a full decomposition.
template <typename Scalar>
Eigen::VectorXd eigenvalues(const HermitianOperator<Scalar>& op) {
  if (op.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(op.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw LinalgError("eigenvalues: solver did not converge");
  return solver.eigenvalues();
}

template <typename Scalar>
double min_eigenvalue(const HermitianOperator<Scalar>& op) {
  if (op.dim() == 0) throw LinalgError("min_eigenvalue: empty operator");
  return eigenvalues(op)(0);
}

template <typename Scalar>
double max_eigenvalue(const HermitianOperator<Scalar>& op) {
  if (op.dim() == 0) throw LinalgError("max_eigenvalue: empty operator");
  const auto ev = eigenvalues(op);
  return ev(ev.size() - 1);
}

/// max |eigenvalue|
template <typename Scalar>
double operator_norm(const HermitianOperator<Scalar>& op) {
  if (op.dim() == 0) return 0.0;
  const auto ev = eigenvalues(op);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

/// Largest singular value of an arbitrary square matrix, computed as
/// sqrt(lambda_max(A* A)).
template <typename Scalar>
double spectral_norm(const Matrix<Scalar>& a) {
  if (a.size() == 0) return 0.0;
  Matrix<Scalar> gram = a.adjoint() * a;
  const double top = max_eigenvalue(HermitianOperator<Scalar>(std::move(gram), 1e-9));
  return std::sqrt(std::max(0.0, top));
}

template <typename Scalar>
Matrix<Scalar> kron(const Matrix<Scalar>& a, const Matrix<Scalar>& b, Index cap = kDefaultKronCap) {
  const Index rows = a.rows() * b.rows();
  const Index cols = a.cols() * b.cols();
  if (rows > cap || cols > cap)
    throw LinalgError("kron: result dimension " + std::to_string(std::max(rows, cols)) +
                      " exceeds cap " + std::to_string(cap));
  Matrix<Scalar> out(rows, cols);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <typename Scalar>
HermitianOperator<Scalar> kron(const HermitianOperator<Scalar>& a, const HermitianOperator<Scalar>& b,
                               Index cap = kDefaultKronCap) {
  return HermitianOperator<Scalar>(kron(a.matrix(), b.matrix(), cap));
}

enum class CutMode { AtMost, GreaterThan };

/// Orthogonal projection onto the eigenspaces of `source` on one side of a
/// threshold.
template <typename Scalar>
struct SpectralProjection {
  HermitianOperator<Scalar> source;
  double threshold = 0.0;
  CutMode mode = CutMode::AtMost;
  Index rank = 0;
  HermitianOperator<Scalar> matrix;
};

template <typename Scalar>
SpectralProjection<Scalar> spectral_projection(const HermitianOperator<Scalar>& op, double delta,
                                               CutMode mode,
                                               double ambiguity = kSpectralCutTolerance) {
  const auto dec = eig_hermitian(op);
  const Index n = op.dim();
  Index at_most = 0;
  for (Index k = 0; k < n; ++k) {
    if (std::abs(dec.values(k) - delta) < ambiguity)
      throw LinalgError("spectral_projection: ambiguous cut, eigenvalue " +
                        std::to_string(dec.values(k)) + " within tolerance of threshold");
    if (dec.values(k) <= delta) ++at_most;
  }
  // Eigenvalues are ascending, so the first `at_most` columns span the cut.
  const auto low = dec.vectors.leftCols(at_most);
  Matrix<Scalar> p_le = low * low.adjoint();
  SpectralProjection<Scalar> out;
  out.source = op;
  out.threshold = delta;
  out.mode = mode;
  if (mode == CutMode::AtMost) {
    out.rank = at_most;
    out.matrix = HermitianOperator<Scalar>(std::move(p_le), 1e-9);
  } else {
    out.rank = n - at_most;
    out.matrix = HermitianOperator<Scalar>(Matrix<Scalar>::Identity(n, n) - p_le, 1e-9);
  }
  return out;
}

}  // namespace elsos
