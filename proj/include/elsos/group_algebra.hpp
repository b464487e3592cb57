#pragma once

// Exact arithmetic in real group algebras R[G] with rational coefficients.

#include <concepts>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "elsos/groups.hpp"
#include "elsos/rational.hpp"

namespace elsos {

template <typename G>
concept GroupElement = std::totally_ordered<G> && requires(const G& g, const G& h) {
  { g * h } -> std::convertible_to<G>;
  { inverse(g) } -> std::convertible_to<G>;
};

/// Finite formal sum of group elements with rational coefficients. No zero
/// coefficient is ever stored.
template <GroupElement G>
class AlgebraElement {
 public:
  using Terms = std::map<G, Rational>;

  AlgebraElement() = default;

  static AlgebraElement basis(const G& g, const Rational& coef = Rational(1)) {
    AlgebraElement out;
    out.add_term(g, coef);
    return out;
  }

  void add_term(const G& g, const Rational& coef) {
    if (coef == 0) return;
    auto [it, inserted] = terms_.try_emplace(g, coef);
    if (!inserted) {
      it->second += coef;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const G& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Sum of coefficients (the augmentation map).
  Rational augmentation() const {
    Rational s = 0;
    for (const auto& [g, c] : terms_) s += c;
    return s;
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    for (const auto& [g, c] : o.terms_) add_term(g, c);
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    for (const auto& [g, c] : o.terms_) add_term(g, -c);
    return *this;
  }
  AlgebraElement& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [g, c] : terms_) c *= s;
    return *this;
  }

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator-(AlgebraElement a) { return a *= Rational(-1); }
  friend AlgebraElement operator*(const Rational& s, AlgebraElement a) { return a *= s; }

  /// Convolution product.
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement out;
    for (const auto& [g, c] : a.terms_)
      for (const auto& [h, d] : b.terms_) out.add_term(g * h, c * d);
    return out;
  }

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

  /// The involution sum c_g g -> sum c_g g^{-1}.
  AlgebraElement star() const {
    AlgebraElement out;
    for (const auto& [g, c] : terms_) out.terms_.emplace(inverse(g), c);
    return out;
  }

  bool is_self_adjoint() const { return star() == *this; }

 private:
  Terms terms_;
};

template <GroupElement G>
AlgebraElement<G> mul(const AlgebraElement<G>& a, const AlgebraElement<G>& b) {
  return a * b;
}

template <GroupElement G>
AlgebraElement<G> star(const AlgebraElement<G>& a) {
  return a.star();
}

/// 1 - g
template <GroupElement G>
AlgebraElement<G> one_minus(const G& g, const G& identity) {
  auto out = AlgebraElement<G>::basis(identity);
  out.add_term(g, Rational(-1));
  return out;
}

/// xi^* xi
template <GroupElement G>
AlgebraElement<G> hermitian_square(const AlgebraElement<G>& xi) {
  return xi.star() * xi;
}

/// The generating set closed under inverses, without repetition, in a
/// deterministic order.
template <GroupElement G>
std::vector<G> symmetrize(std::span<const G> generators) {
  std::set<G> s;
  for (const auto& g : generators) {
    s.insert(g);
    s.insert(inverse(g));
  }
  return {s.begin(), s.end()};
}

/// |S| - sum_{s in S} s over the symmetrized generating set S.
template <GroupElement G>
AlgebraElement<G> laplacian(std::span<const G> generators, const G& identity) {
  const auto sym = symmetrize(generators);
  AlgebraElement<G> out;
  if (sym.empty()) return out;
  out.add_term(identity, Rational(static_cast<std::int64_t>(sym.size())));
  for (const auto& s : sym) out.add_term(s, Rational(-1));
  return out;
}

/// (1/2) sum_s (1-s)^*(1-s), the sum-of-squares form of the Laplacian.
template <GroupElement G>
AlgebraElement<G> laplacian_as_squares(std::span<const G> generators, const G& identity) {
  AlgebraElement<G> out;
  for (const auto& s : symmetrize(generators)) out += hermitian_square(one_minus(s, identity));
  return make_rational(1, 2) * out;
}

/// E_{i,j}(r) = 2 - e_{i,j}(r) - e_{i,j}(r)^* in R[SL_n(Z/qZ)].
inline AlgebraElement<FiniteMatrixElt> e_term(int n, std::int64_t q, int i, int j, std::int64_t r) {
  const auto e = FiniteMatrixElt::elementary(n, q, i, j, r);
  AlgebraElement<FiniteMatrixElt> out;
  out.add_term(FiniteMatrixElt::identity(n, q), Rational(2));
  out.add_term(e, Rational(-1));
  out.add_term(inverse(e), Rational(-1));
  return out;
}

// ---------------------------------------------------------------------------
// Steinberg relations on concrete elementary matrices.

struct RelationResult {
  std::string name;
  std::int64_t checked = 0;
  std::int64_t failures = 0;
  std::string first_failure;
  bool pass() const { return failures == 0; }
};

struct SteinbergReport {
  int n = 0;
  std::int64_t q = 0;
  std::vector<RelationResult> relations;
  bool pass() const {
    for (const auto& r : relations)
      if (!r.pass()) return false;
    return true;
  }
};

/// Checks the three Steinberg relations in SL_n(Z/qZ). With `samples == 0`
/// every pair (r, s) in (Z/qZ)^2 is used; otherwise `samples` pairs per index
/// tuple are drawn from a fixed-seed generator.
inline SteinbergReport steinberg_check(int n, std::int64_t q, std::int64_t samples = 0) {
  if (n < 2 || q < 1) throw std::invalid_argument("steinberg_check: need n >= 2, q >= 1");
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  if (samples == 0) {
    for (std::int64_t r = 0; r < q; ++r)
      for (std::int64_t s = 0; s < q; ++s) pairs.emplace_back(r, s);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::int64_t> dist(0, q - 1);
    for (std::int64_t t = 0; t < samples; ++t) pairs.emplace_back(dist(rng), dist(rng));
  }

  RelationResult additive{"e_ij(r) e_ij(s) = e_ij(r+s)"};
  RelationResult chain{"[e_ij(r), e_jk(s)] = e_ik(rs)"};
  RelationResult disjoint{"[e_ij(r), e_kl(s)] = 1 (i != l, j != k)"};
  const auto id = FiniteMatrixElt::identity(n, q);
  auto E = [&](int i, int j, std::int64_t r) { return FiniteMatrixElt::elementary(n, q, i, j, r); };
  auto record = [](RelationResult& rel, bool ok, const std::string& what) {
    ++rel.checked;
    if (!ok) {
      if (rel.failures == 0) rel.first_failure = what;
      ++rel.failures;
    }
  };

  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      for (const auto& [r, s] : pairs) {
        const std::string tag = "i=" + std::to_string(i) + " j=" + std::to_string(j) +
                                " r=" + std::to_string(r) + " s=" + std::to_string(s);
        record(additive, E(i, j, r) * E(i, j, s) == E(i, j, r + s), tag);
        for (int k = 1; k <= n; ++k) {
          if (k == j || k == i) continue;
          record(chain, commutator(E(i, j, r), E(j, k, s)) == E(i, k, r * s), tag + " k=" + std::to_string(k));
        }
        for (int k = 1; k <= n; ++k)
          for (int l = 1; l <= n; ++l) {
            if (k == l || i == l || j == k) continue;
            record(disjoint, commutator(E(i, j, r), E(k, l, s)) == id,
                   tag + " k=" + std::to_string(k) + " l=" + std::to_string(l));
          }
      }
    }
  return {n, q, {additive, chain, disjoint}};
}

// ---------------------------------------------------------------------------
// Named elements of R[H].

namespace heis {

inline AlgebraElement<HeisenbergElt> one() { return AlgebraElement<HeisenbergElt>::basis(HeisenbergElt::identity()); }
inline AlgebraElement<HeisenbergElt> elt(const HeisenbergElt& g) { return AlgebraElement<HeisenbergElt>::basis(g); }
inline AlgebraElement<HeisenbergElt> bar(const HeisenbergElt& g) { return one_minus(g, HeisenbergElt::identity()); }
/// (1-g)^*(1-g) = 2 - g - g^{-1}
inline AlgebraElement<HeisenbergElt> square_of(const HeisenbergElt& g) { return hermitian_square(bar(g)); }
inline AlgebraElement<HeisenbergElt> X() { return square_of(HeisenbergElt::x()); }
inline AlgebraElement<HeisenbergElt> Y() { return square_of(HeisenbergElt::y()); }
inline AlgebraElement<HeisenbergElt> Z() { return square_of(HeisenbergElt::z()); }

/// Laplacian of H for S = {x^{+-1}, y^{+-1}}.
inline AlgebraElement<HeisenbergElt> laplacian() {
  const std::vector<HeisenbergElt> gens{HeisenbergElt::x(), HeisenbergElt::y()};
  return elsos::laplacian<HeisenbergElt>(gens, HeisenbergElt::identity());
}

/// Both sides of the sum-of-squares identity
///   Z + (XY+YX)/2 = (X+Y)Z/4 + (1/8) sum (1-b)^d (1-a)^e (1-a)^e' (1-b)^d'
/// with (a,b) in {(x,y),(y,x)} and each of (e,e'), (d,d') in {(*,.),(.,*)}.
struct SosIdentity {
  AlgebraElement<HeisenbergElt> lhs;
  AlgebraElement<HeisenbergElt> rhs;
  std::vector<AlgebraElement<HeisenbergElt>> squares;  // the 8 summands
};

inline SosIdentity sos_identity() {
  const auto X = heis::X();
  const auto Y = heis::Y();
  const auto Z = heis::Z();
  SosIdentity out;
  out.lhs = Z + make_rational(1, 2) * (X * Y + Y * X);

  auto factor = [](const HeisenbergElt& g, bool starred) { return starred ? bar(g).star() : bar(g); };
  const std::pair<HeisenbergElt, HeisenbergElt> ab[2] = {{HeisenbergElt::x(), HeisenbergElt::y()},
                                                         {HeisenbergElt::y(), HeisenbergElt::x()}};
  AlgebraElement<HeisenbergElt> sum;
  for (const auto& [a, b] : ab)
    for (bool eps_first : {true, false})
      for (bool delta_first : {true, false}) {
        auto term = factor(b, delta_first) * factor(a, eps_first) * factor(a, !eps_first) * factor(b, !delta_first);
        sum += term;
        out.squares.push_back(std::move(term));
      }
  out.rhs = make_rational(1, 4) * ((X + Y) * Z) + make_rational(1, 8) * sum;
  return out;
}

}  // namespace heis

}  // namespace elsos
