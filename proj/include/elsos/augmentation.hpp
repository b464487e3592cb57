#pragma once

// Graded arithmetic in R[H] modulo I^{N+1}, where I is the augmentation
// ideal. Elements are written in the basis xb^i yb^j zb^k (xb = 1 - x, and so
// on) of degree i + j + 2k; zb is central.

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "elsos/group_algebra.hpp"
#include "elsos/groups.hpp"
#include "elsos/linalg.hpp"
#include "elsos/rational.hpp"

namespace elsos {

struct Monomial {
  int i = 0;
  int j = 0;
  int k = 0;

  int degree() const { return i + j + 2 * k; }
  std::string str() const {
    std::string s;
    auto part = [&](const char* name, int e) {
      if (e == 0) return;
      s += name;
      if (e > 1) s += "^" + std::to_string(e);
    };
    part("xb", i);
    part("yb", j);
    part("zb", k);
    return s.empty() ? "1" : s;
  }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

inline constexpr int kMaxTruncation = 10;

/// Truncated element of R[H]/I^{N+1}.
class GradedElement {
 public:
  using Terms = std::map<Monomial, Rational>;

  explicit GradedElement(int truncation = 5) : n_(truncation) {
    if (n_ < 0 || n_ > kMaxTruncation) throw std::invalid_argument("GradedElement: need 0 <= N <= 10");
  }

  static GradedElement monomial(int N, const Monomial& m, const Rational& c = Rational(1)) {
    GradedElement out(N);
    out.add(m, c);
    return out;
  }

  int truncation() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * m; monomials above the truncation are dropped.
  void add(const Monomial& m, const Rational& c) {
    if (c == 0 || m.degree() > n_) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// The homogeneous component of the given degree.
  GradedElement component(int degree) const {
    GradedElement out(n_);
    for (const auto& [m, c] : terms_)
      if (m.degree() == degree) out.add(m, c);
    return out;
  }

  /// Lowest degree present, or -1 for zero.
  int lowest_degree() const {
    int low = -1;
    for (const auto& [m, c] : terms_)
      if (low < 0 || m.degree() < low) low = m.degree();
    return low;
  }

  GradedElement& operator+=(const GradedElement& o) {
    same_truncation(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  GradedElement& operator-=(const GradedElement& o) {
    same_truncation(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  GradedElement& operator*=(const Rational& s) {
    if (s == 0) terms_.clear();
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
  friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
  friend GradedElement operator*(const Rational& s, GradedElement a) { return a *= s; }
  friend bool operator==(const GradedElement&, const GradedElement&) = default;

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) s += (s.empty() ? "" : " + ") + ("(" + c.str() + ")" + m.str());
    return s;
  }

 private:
  void same_truncation(const GradedElement& o) const {
    if (o.n_ != n_) throw std::invalid_argument("GradedElement: truncation mismatch");
  }

  int n_;
  Terms terms_;
};

namespace detail {

using NormalTerms = std::map<Monomial, Rational>;

inline int word_degree(const std::string& w) { return static_cast<int>(w.size()); }

/// Normal form of a word in xb, yb (as 'x', 'y') keeping degrees <= budget.
/// The leftmost "yx" is rewritten by
///   yb xb = xb yb + zb - zb xb - zb yb + zb yb xb.
inline const NormalTerms& normalize(const std::string& word, int budget) {
  thread_local std::map<std::pair<std::string, int>, NormalTerms> memo;
  const auto key = std::make_pair(word, budget);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  NormalTerms out;
  if (budget >= 0 && word_degree(word) <= budget) {
    const auto pos = word.find("yx");
    if (pos == std::string::npos) {
      const int i = static_cast<int>(word.find('y') == std::string::npos ? word.size() : word.find('y'));
      out.emplace(Monomial{i, static_cast<int>(word.size()) - i, 0}, Rational(1));
    } else {
      const std::string u = word.substr(0, pos);
      const std::string v = word.substr(pos + 2);
      auto accumulate = [&](const std::string& w, int shift, const Rational& sign) {
        const int b = budget - 2 * shift;
        if (b < 0) return;
        for (const auto& [m, c] : normalize(w, b)) {
          Monomial mm{m.i, m.j, m.k + shift};
          const Rational term = sign * c;
          auto [it, inserted] = out.try_emplace(mm, term);
          if (!inserted) {
            it->second += term;
            if (it->second == 0) out.erase(it);
          }
        }
      };
      accumulate(u + "xy" + v, 0, 1);
      accumulate(u + v, 1, 1);
      accumulate(u + "x" + v, 1, -1);
      accumulate(u + "y" + v, 1, -1);
      accumulate(u + "yx" + v, 1, 1);
    }
  }
  return memo.emplace(key, std::move(out)).first->second;
}

inline std::string xy_word(int i, int j, int a, int b) {
  return std::string(static_cast<std::size_t>(i), 'x') + std::string(static_cast<std::size_t>(j), 'y') +
         std::string(static_cast<std::size_t>(a), 'x') + std::string(static_cast<std::size_t>(b), 'y');
}

}  // namespace detail

inline GradedElement graded_mul(const GradedElement& a, const GradedElement& b) {
  if (a.truncation() != b.truncation()) throw std::invalid_argument("graded_mul: truncation mismatch");
  const int N = a.truncation();
  GradedElement out(N);
  for (const auto& [m, c] : a.terms())
    for (const auto& [n, d] : b.terms()) {
      const int k = m.k + n.k;
      const int budget = N - 2 * k;
      if (budget < 0 || m.i + m.j + n.i + n.j > budget) continue;
      for (const auto& [w, e] : detail::normalize(detail::xy_word(m.i, m.j, n.i, n.j), budget))
        out.add({w.i, w.j, w.k + k}, c * d * e);
    }
  return out;
}

/// Product of the letters of `word` (each 'x', 'y' or 'z' standing for xb,
/// yb, zb), e.g. "yyxx".
inline GradedElement graded_word(int N, const std::string& word) {
  GradedElement out = GradedElement::monomial(N, {});
  for (char ch : word) {
    Monomial m;
    switch (ch) {
      case 'x': m.i = 1; break;
      case 'y': m.j = 1; break;
      case 'z': m.k = 1; break;
      default: throw std::invalid_argument(std::string("graded_word: unknown letter ") + ch);
    }
    out = graded_mul(out, GradedElement::monomial(N, m));
  }
  return out;
}

/// Image of xi in R[H]/I^{N+1}. Since g = x^a y^b z^{c-ab} and
/// x^a = (1 - xb)^a = sum_k binom(a, k) (-xb)^k, the expansion is already in
/// normal order.
inline GradedElement to_graded(const AlgebraElement<HeisenbergElt>& xi, int N) {
  GradedElement out(N);
  for (const auto& [g, coef] : xi.terms()) {
    const std::int64_t e = g.c - g.a * g.b;
    for (int i = 0; i <= N; ++i) {
      const Rational ci = binomial(g.a, i) * ((i % 2) ? -1 : 1);
      if (ci == 0) continue;
      for (int j = 0; i + j <= N; ++j) {
        const Rational cj = binomial(g.b, j) * ((j % 2) ? -1 : 1);
        if (cj == 0) continue;
        for (int k = 0; i + j + 2 * k <= N; ++k) {
          const Rational ck = binomial(e, k) * ((k % 2) ? -1 : 1);
          out.add({i, j, k}, coef * ci * cj * ck);
        }
      }
    }
  }
  return out;
}

/// The involution, computed by lifting each monomial to the word
/// (1-x)^i (1-y)^j (1-z)^k in R[H], starring there and re-grading.
inline GradedElement graded_star(const GradedElement& a) {
  using heis::bar;
  const int N = a.truncation();
  GradedElement out(N);
  std::map<Monomial, GradedElement> cache;
  for (const auto& [m, c] : a.terms()) {
    auto it = cache.find(m);
    if (it == cache.end()) {
      auto lift = heis::one();
      for (int t = 0; t < m.i; ++t) lift = lift * bar(HeisenbergElt::x());
      for (int t = 0; t < m.j; ++t) lift = lift * bar(HeisenbergElt::y());
      for (int t = 0; t < m.k; ++t) lift = lift * bar(HeisenbergElt::z());
      it = cache.emplace(m, to_graded(lift.star(), N)).first;
    }
    out += c * it->second;
  }
  return out;
}

/// Number of monomials of degree exactly n, by enumeration.
inline std::int64_t graded_dimension(int n) {
  if (n < 0) throw std::invalid_argument("graded_dimension: need n >= 0");
  std::int64_t count = 0;
  for (int k = 0; 2 * k <= n; ++k)
    for (int i = 0; i + 2 * k <= n; ++i) ++count;  // j is then determined
  return count;
}

/// (floor(n/2)+1)(n-floor(n/2)+1)
inline std::int64_t graded_dimension_formula(int n) {
  const std::int64_t h = n / 2;
  return (h + 1) * (n - h + 1);
}

/// box = (1/4) sum_{s,t in S} (1-s)^*(1-t)^*(1-t)(1-s), S = {x, x^-1, y, y^-1}.
inline AlgebraElement<HeisenbergElt> box_algebra() {
  const HeisenbergElt S[] = {HeisenbergElt::x(), inverse(HeisenbergElt::x()), HeisenbergElt::y(),
                             inverse(HeisenbergElt::y())};
  AlgebraElement<HeisenbergElt> out;
  for (const auto& s : S)
    for (const auto& t : S) {
      const auto u = heis::bar(t) * heis::bar(s);
      out += u.star() * u;
    }
  return make_rational(1, 4) * out;
}

inline GradedElement box_element(int N) { return to_graded(box_algebra(), N); }

// ---------------------------------------------------------------------------
// The degree-four functional.

/// phi(xb^4) = phi(yb^4) = 1, phi(zb^2) = -2, phi(xb^2 yb^2) = -1,
/// phi(xb yb zb) = 1, zero on the remaining degree-4 monomials.
inline Rational phi_value(const Monomial& m) {
  if (m == Monomial{4, 0, 0} || m == Monomial{0, 4, 0}) return 1;
  if (m == Monomial{0, 0, 2}) return -2;
  if (m == Monomial{2, 2, 0}) return -1;
  if (m == Monomial{1, 1, 1}) return 1;
  return 0;
}

inline Rational evaluate_phi(const GradedElement& a) {
  if (a.truncation() < 4) throw std::invalid_argument("evaluate_phi: need truncation >= 4");
  Rational out = 0;
  for (const auto& [m, c] : a.terms())
    if (m.degree() == 4) out += c * phi_value(m);
  return out;
}

inline std::vector<Monomial> monomials_of_degree(int n) {
  std::vector<Monomial> out;
  for (int k = 0; 2 * k <= n; ++k)
    for (int i = 0; i + 2 * k <= n; ++i) out.push_back({i, n - 2 * k - i, k});
  return out;
}

/// phi(m^*) == phi(m) on every degree-4 monomial.
inline bool phi_is_self_adjoint(int N = 5) {
  for (const auto& m : monomials_of_degree(4))
    if (evaluate_phi(graded_star(GradedElement::monomial(N, m))) != phi_value(m)) return false;
  return true;
}

struct PhiReport {
  Rational delta_squared;  // phi(Delta^2)
  Rational box;            // phi(box)
  Rational z_square;       // phi(zb^* zb)
  bool self_adjoint = false;
  /// phi(R Delta^2 + box/4 - zb^* zb) for each R tried
  std::vector<std::pair<Rational, Rational>> witness;
};

inline PhiReport phi_report(int N = 5, const std::vector<Rational>& Rs = {1, 10, 100, 1000}) {
  if (N < 4) throw std::invalid_argument("phi_report: need N >= 4");
  using heis::bar;
  PhiReport r;
  const auto delta = to_graded(heis::laplacian(), N);
  const auto delta_sq = graded_mul(delta, delta);
  const auto box = box_element(N);
  const auto zz = to_graded(hermitian_square(bar(HeisenbergElt::z())), N);
  r.delta_squared = evaluate_phi(delta_sq);
  r.box = evaluate_phi(box);
  r.z_square = evaluate_phi(zz);
  r.self_adjoint = phi_is_self_adjoint(N);
  for (const auto& R : Rs) {
    const auto w = R * delta_sq + make_rational(1, 4) * box - zz;
    r.witness.emplace_back(R, evaluate_phi(w));
  }
  return r;
}

struct GramReport {
  std::array<std::array<Rational, 4>, 4> matrix;
  std::array<std::array<Rational, 4>, 4> expected;
  bool matches = false;
  std::vector<double> eigenvalues;  // ascending
  bool psd = false;
};

/// The form (xi, eta) -> phi(xi^* eta) on {xb xb, xb yb, yb xb, yb yb}.
inline GramReport gram_matrix_check(int N = 5) {
  if (N < 4) throw std::invalid_argument("gram_matrix_check: need N >= 4");
  const std::array<GradedElement, 4> basis{graded_word(N, "xx"), graded_word(N, "xy"), graded_word(N, "yx"),
                                           graded_word(N, "yy")};
  GramReport g;
  RealMatrix m(4, 4);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      g.matrix[a][b] = evaluate_phi(graded_mul(graded_star(basis[a]), basis[b]));
      g.expected[a][b] = (a == b) ? 1 : 0;
      m(static_cast<Index>(a), static_cast<Index>(b)) = to_double(g.matrix[a][b]);
    }
  g.expected[0][3] = g.expected[3][0] = -1;
  g.matches = g.matrix == g.expected;
  const auto ev = eigenvalues(RealOperator(m));
  for (Index k = 0; k < ev.size(); ++k) g.eigenvalues.push_back(ev(k));
  g.psd = !g.eigenvalues.empty() && g.eigenvalues.front() >= -1e-12;
  return g;
}

/// One printed step of the degree-four rewriting chain, re-derived.
struct ChainStep {
  std::string lhs;
  std::string rhs;
  GradedElement difference;  // lhs - rhs in degree 4
  bool holds() const { return difference.is_zero(); }
};

/// Each side is a sum of (coefficient, word) pairs.
using WordSum = std::vector<std::pair<std::int64_t, std::string>>;

inline GradedElement evaluate_word_sum(int N, const WordSum& s) {
  GradedElement out(N);
  for (const auto& [c, w] : s) out += Rational(c) * graded_word(N, w);
  return out;
}

inline std::string word_sum_str(const WordSum& s) {
  std::string out;
  for (const auto& [c, w] : s) {
    out += out.empty() ? "" : " + ";
    if (c != 1) out += std::to_string(c);
    out += w;
  }
  return out;
}

/// The chain
///   (xxyy)^* = yyxx = yxyx + yxz = xyxy + 3xyz + 2zz = xxyy + 4xyz + 2zz
/// in I^4/I^5, checked link by link.
inline std::vector<ChainStep> intermediate_chain() {
  const int N = 4;
  const std::vector<WordSum> lines{
      {{1, "yyxx"}},
      {{1, "yxyx"}, {1, "yxz"}},
      {{1, "xyxy"}, {3, "xyz"}, {2, "zz"}},
      {{1, "xxyy"}, {4, "xyz"}, {2, "zz"}},
  };
  std::vector<ChainStep> out;
  // The first link is the star itself.
  {
    const auto lhs = graded_star(graded_word(N, "xxyy")).component(4);
    const auto rhs = evaluate_word_sum(N, lines[0]).component(4);
    out.push_back({"(xxyy)^*", word_sum_str(lines[0]), lhs - rhs});
  }
  for (std::size_t t = 0; t + 1 < lines.size(); ++t) {
    const auto lhs = evaluate_word_sum(N, lines[t]).component(4);
    const auto rhs = evaluate_word_sum(N, lines[t + 1]).component(4);
    out.push_back({word_sum_str(lines[t]), word_sum_str(lines[t + 1]), lhs - rhs});
  }
  return out;
}

}  // namespace elsos
