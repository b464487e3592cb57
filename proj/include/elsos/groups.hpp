#pragma once

// Concrete groups in canonical normal form: the integral Heisenberg group,
// its 3-fold central amalgam, and matrices over Z/qZ.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace elsos {

/// The matrix [[1,a,c],[0,1,b],[0,0,1]].
struct HeisenbergElt {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  static constexpr HeisenbergElt identity() { return {0, 0, 0}; }
  static constexpr HeisenbergElt x() { return {1, 0, 0}; }
  static constexpr HeisenbergElt y() { return {0, 1, 0}; }
  static constexpr HeisenbergElt z() { return {0, 0, 1}; }

  friend constexpr auto operator<=>(const HeisenbergElt&, const HeisenbergElt&) = default;
};

constexpr HeisenbergElt operator*(const HeisenbergElt& g, const HeisenbergElt& h) {
  return {g.a + h.a, g.b + h.b, g.c + h.c + g.a * h.b};
}

constexpr HeisenbergElt inverse(const HeisenbergElt& g) { return {-g.a, -g.b, g.a * g.b - g.c}; }

/// 5x5 unipotent matrix with top row (1, a, c), right column (b, c) and zero
/// block in between; x_i = e_{1,i+1}(1), y_i = e_{i+1,5}(1), z = e_{1,5}(1).
struct Heisenberg3Elt {
  std::array<std::int64_t, 3> a{};
  std::array<std::int64_t, 3> b{};
  std::int64_t c = 0;

  static Heisenberg3Elt identity() { return {}; }
  /// i in 1..3
  static Heisenberg3Elt x(int i) {
    Heisenberg3Elt g;
    g.a.at(static_cast<std::size_t>(i - 1)) = 1;
    return g;
  }
  static Heisenberg3Elt y(int i) {
    Heisenberg3Elt g;
    g.b.at(static_cast<std::size_t>(i - 1)) = 1;
    return g;
  }
  static Heisenberg3Elt z() {
    Heisenberg3Elt g;
    g.c = 1;
    return g;
  }

  friend auto operator<=>(const Heisenberg3Elt&, const Heisenberg3Elt&) = default;
};

inline Heisenberg3Elt operator*(const Heisenberg3Elt& g, const Heisenberg3Elt& h) {
  Heisenberg3Elt out;
  std::int64_t dot = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    out.a[i] = g.a[i] + h.a[i];
    out.b[i] = g.b[i] + h.b[i];
    dot += g.a[i] * h.b[i];
  }
  out.c = g.c + h.c + dot;
  return out;
}

inline Heisenberg3Elt inverse(const Heisenberg3Elt& g) {
  Heisenberg3Elt out;
  std::int64_t dot = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    out.a[i] = -g.a[i];
    out.b[i] = -g.b[i];
    dot += g.a[i] * g.b[i];
  }
  out.c = dot - g.c;
  return out;
}

inline std::int64_t mod(std::int64_t v, std::int64_t q) {
  const std::int64_t r = v % q;
  return r < 0 ? r + q : r;
}

/// n x n matrix with entries in Z/qZ, row-major. Indices in the public API
/// are 1-based to match e_{i,j}.
class FiniteMatrixElt {
 public:
  FiniteMatrixElt() = default;
  FiniteMatrixElt(int n, std::int64_t q, std::vector<std::int64_t> entries)
      : n_(n), q_(q), entries_(std::move(entries)) {
    if (n_ < 1 || q_ < 1) throw std::invalid_argument("FiniteMatrixElt: need n >= 1 and q >= 1");
    if (entries_.size() != static_cast<std::size_t>(n_ * n_))
      throw std::invalid_argument("FiniteMatrixElt: wrong number of entries");
    for (auto& e : entries_) e = mod(e, q_);
  }

  static FiniteMatrixElt identity(int n, std::int64_t q) {
    std::vector<std::int64_t> e(static_cast<std::size_t>(n * n), 0);
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i * n + i)] = 1;
    return {n, q, std::move(e)};
  }

  /// e_{i,j}(r): identity plus r at (i, j); i != j, 1-based.
  static FiniteMatrixElt elementary(int n, std::int64_t q, int i, int j, std::int64_t r) {
    if (i == j || i < 1 || j < 1 || i > n || j > n)
      throw std::invalid_argument("elementary: need distinct indices in 1..n");
    FiniteMatrixElt g = identity(n, q);
    g.entries_[static_cast<std::size_t>((i - 1) * n + (j - 1))] = mod(r, q);
    return g;
  }

  int n() const { return n_; }
  std::int64_t q() const { return q_; }
  const std::vector<std::int64_t>& entries() const { return entries_; }
  /// 1-based access
  std::int64_t at(int i, int j) const { return entries_[static_cast<std::size_t>((i - 1) * n_ + (j - 1))]; }

  std::int64_t determinant() const { return det_mod(entries_, n_, q_); }

  friend FiniteMatrixElt operator*(const FiniteMatrixElt& a, const FiniteMatrixElt& b) {
    if (a.n_ != b.n_ || a.q_ != b.q_) throw std::invalid_argument("FiniteMatrixElt: shape mismatch");
    const int n = a.n_;
    std::vector<std::int64_t> out(static_cast<std::size_t>(n * n), 0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const std::int64_t aik = a.entries_[static_cast<std::size_t>(i * n + k)];
        if (aik == 0) continue;
        for (int j = 0; j < n; ++j)
          out[static_cast<std::size_t>(i * n + j)] =
              (out[static_cast<std::size_t>(i * n + j)] + aik * b.entries_[static_cast<std::size_t>(k * n + j)]) % a.q_;
      }
    return {n, a.q_, std::move(out)};
  }

  /// Inverse of a determinant-one matrix via the adjugate.
  friend FiniteMatrixElt inverse(const FiniteMatrixElt& g) {
    if (mod(g.determinant() - 1, g.q_) != 0)
      throw std::domain_error("FiniteMatrixElt: inverse needs determinant 1 mod q");
    const int n = g.n_;
    if (n == 1) return g;
    std::vector<std::int64_t> adj(static_cast<std::size_t>(n * n));
    std::vector<std::int64_t> minor(static_cast<std::size_t>((n - 1) * (n - 1)));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        std::size_t t = 0;
        for (int i = 0; i < n; ++i) {
          if (i == r) continue;
          for (int j = 0; j < n; ++j)
            if (j != c) minor[t++] = g.entries_[static_cast<std::size_t>(i * n + j)];
        }
        const std::int64_t cof = det_mod(minor, n - 1, g.q_);
        // adj(c, r) = (-1)^{r+c} M_{r,c}
        adj[static_cast<std::size_t>(c * n + r)] = ((r + c) % 2 == 0) ? cof : mod(-cof, g.q_);
      }
    return {n, g.q_, std::move(adj)};
  }

  friend bool operator==(const FiniteMatrixElt&, const FiniteMatrixElt&) = default;
  friend auto operator<=>(const FiniteMatrixElt& a, const FiniteMatrixElt& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.q_ <=> b.q_; c != 0) return c;
    return a.entries_ <=> b.entries_;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < n_; ++i) {
      s += i ? ";" : "";
      for (int j = 0; j < n_; ++j) s += (j ? "," : "") + std::to_string(entries_[static_cast<std::size_t>(i * n_ + j)]);
    }
    return s + "]";
  }

 private:
  // Leibniz expansion; n is at most 5 or 6 in this project.
  static std::int64_t det_mod(const std::vector<std::int64_t>& m, int n, std::int64_t q) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::int64_t total = 0;
    do {
      int inversions = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
      std::int64_t term = 1;
      for (int i = 0; i < n && term != 0; ++i)
        term = (term * m[static_cast<std::size_t>(i * n + perm[static_cast<std::size_t>(i)])]) % q;
      total = mod(total + (inversions % 2 ? -term : term), q);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
  }

  int n_ = 0;
  std::int64_t q_ = 1;
  std::vector<std::int64_t> entries_;
};

/// [g, h] = g h g^{-1} h^{-1}
template <typename G>
G commutator(const G& g, const G& h) {
  return g * h * inverse(g) * inverse(h);
}

}  // namespace elsos
