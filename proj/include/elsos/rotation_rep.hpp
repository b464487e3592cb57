#pragma once

// The finite-dimensional representations pi_{p/q} of the Heisenberg group on
// l2(Z/qZ), and the operators they produce.
//
//   pi(x) delta_j = exp(2 pi i j theta) delta_j
//   pi(y) delta_j = delta_{j+1}
//   pi(z)         = exp(2 pi i theta)

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "elsos/angle.hpp"
#include "elsos/group_algebra.hpp"
#include "elsos/groups.hpp"
#include "elsos/linalg.hpp"

namespace elsos {

namespace detail {

inline std::complex<double> root_of_unity(const RationalAngle& angle, std::int64_t k) {
  return std::polar(1.0, angle.phase(k));
}

}  // namespace detail

/// pi_theta(g) for g = x^a y^b z^{c - ab}.
inline ComplexMatrix pi_theta(const RationalAngle& angle, const HeisenbergElt& g) {
  const std::int64_t q = angle.q();
  ComplexMatrix m = ComplexMatrix::Zero(q, q);
  // pi(x)^a pi(y)^b delta_j = w^{a(j+b)} delta_{j+b}, times the central w^{c-ab}.
  for (std::int64_t j = 0; j < q; ++j) {
    const std::int64_t target = mod(j + g.b, q);
    const std::int64_t exponent = mod(g.a, q) * mod(j + g.b, q) + mod(g.c - g.a * g.b, q);
    m(target, j) = detail::root_of_unity(angle, exponent);
  }
  return m;
}

/// Linear extension of pi_theta to R[H]. The result is a general complex
/// matrix; wrap it in a HermitianOperator when the input is self-adjoint.
inline ComplexMatrix evaluate(const RationalAngle& angle, const AlgebraElement<HeisenbergElt>& xi) {
  ComplexMatrix out = ComplexMatrix::Zero(angle.q(), angle.q());
  for (const auto& [g, c] : xi.terms()) out += to_double(c) * pi_theta(angle, g);
  return out;
}

inline ComplexOperator evaluate_hermitian(const RationalAngle& angle, const AlgebraElement<HeisenbergElt>& xi) {
  if (!xi.is_self_adjoint()) throw std::invalid_argument("evaluate_hermitian: element is not self-adjoint");
  return ComplexOperator(evaluate(angle, xi), 1e-10);
}

/// Representation of H_3 on l2(Z/qZ)^{(x)3}: x_i, y_i act on site i and z is
/// the common scalar.
inline ComplexMatrix pi_theta3(const RationalAngle& angle, const Heisenberg3Elt& g) {
  std::int64_t dot = 0;
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (std::size_t i = 0; i < 3; ++i) {
    out = kron<std::complex<double>>(out, pi_theta(angle, HeisenbergElt{g.a[i], g.b[i], g.a[i] * g.b[i]}));
    dot += g.a[i] * g.b[i];
  }
  return out * detail::root_of_unity(angle, g.c - dot);
}

inline ComplexMatrix evaluate3(const RationalAngle& angle, const AlgebraElement<Heisenberg3Elt>& xi) {
  const Index dim = angle.q() * angle.q() * angle.q();
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (const auto& [g, c] : xi.terms()) out += to_double(c) * pi_theta3(angle, g);
  return out;
}

/// X_theta = 2 - pi(x) - pi(x)^*, the diagonal matrix diag(2 b_j).
inline RealOperator x_theta(const RationalAngle& angle) {
  std::vector<double> d(static_cast<std::size_t>(angle.q()));
  for (std::int64_t j = 0; j < angle.q(); ++j) d[static_cast<std::size_t>(j)] = 2.0 * angle.b_m(j);
  return RealOperator::diagonal(d);
}

/// Y_theta = 2 - pi(y) - pi(y)^*, the cyclic discrete Laplacian.
inline RealOperator y_theta(const RationalAngle& angle) {
  const std::int64_t q = angle.q();
  RealMatrix m = RealMatrix::Zero(q, q);
  for (std::int64_t j = 0; j < q; ++j) {
    m(j, j) += 2.0;
    m(mod(j + 1, q), j) -= 1.0;
    m(j, mod(j + 1, q)) -= 1.0;
  }
  return RealOperator(std::move(m));
}

/// Z_theta is the scalar 4 sin^2(pi theta).
inline double z_theta(const RationalAngle& angle) { return angle.z_scalar(); }

/// H_{theta,lambda} = pi((lambda/2)(x + x^*) + y + y^*): diagonal lambda c_m,
/// unit couplings between neighbours on the cycle.
inline RealOperator almost_mathieu(const RationalAngle& angle, double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("almost_mathieu: lambda must be positive");
  const std::int64_t q = angle.q();
  RealMatrix m = RealMatrix::Zero(q, q);
  for (std::int64_t j = 0; j < q; ++j) {
    m(j, j) += lambda * angle.c_m(j);
    m(mod(j + 1, q), j) += 1.0;
    m(j, mod(j + 1, q)) += 1.0;
  }
  return RealOperator(std::move(m));
}

// ---------------------------------------------------------------------------
// Tensor operators built from X, Y, Z at a common angle.

enum class SiteLetter { I, X, Y, Z };

/// coefficient * (word_1 (x) word_2 (x) ...), each word a product of letters
/// acting on one site. Z contributes the scalar Z_theta.
struct TensorTerm {
  double coefficient = 1.0;
  std::vector<std::vector<SiteLetter>> sites;
};

inline TensorTerm term(double coefficient, std::initializer_list<std::vector<SiteLetter>> sites) {
  return {coefficient, std::vector<std::vector<SiteLetter>>(sites)};
}

/// Sum of Kronecker products over `site_count` copies of l2(Z/qZ). Each term
/// must name exactly `site_count` site words; the sum must be Hermitian.
inline RealOperator tensor_operator(const RationalAngle& angle, int site_count, const std::vector<TensorTerm>& terms,
                                    Index cap = kDefaultKronCap) {
  if (site_count < 1) throw std::invalid_argument("tensor_operator: need at least one site");
  const std::int64_t q = angle.q();
  Index dim = 1;
  for (int s = 0; s < site_count; ++s) {
    dim *= q;
    if (dim > cap) throw LinalgError("tensor_operator: dimension exceeds cap " + std::to_string(cap));
  }
  const RealMatrix X = x_theta(angle).matrix();
  const RealMatrix Y = y_theta(angle).matrix();
  const double Z = z_theta(angle);

  RealMatrix out = RealMatrix::Zero(dim, dim);
  for (const auto& t : terms) {
    if (static_cast<int>(t.sites.size()) != site_count)
      throw std::invalid_argument("tensor_operator: term has wrong number of sites");
    double scalar = t.coefficient;
    RealMatrix product = RealMatrix::Identity(1, 1);
    for (const auto& word : t.sites) {
      RealMatrix site = RealMatrix::Identity(q, q);
      for (auto letter : word) {
        switch (letter) {
          case SiteLetter::I: break;
          case SiteLetter::X: site = site * X; break;
          case SiteLetter::Y: site = site * Y; break;
          case SiteLetter::Z: scalar *= Z; break;
        }
      }
      product = kron<double>(product, site, cap);
    }
    out += scalar * product;
  }
  return RealOperator(std::move(out), 1e-10);
}

}  // namespace elsos
