#pragma once

// Formal degree-two calculus over the symbols E_{i,j}(label): the
// Sq/Adj/Op split of the squared Laplacian, Sym(n) orbit sums, and the
// arithmetic that lifts an inequality at size m to every large n.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "elsos/group_algebra.hpp"
#include "elsos/groups.hpp"
#include "elsos/parallel.hpp"
#include "elsos/rational.hpp"

namespace elsos {

/// E_{i,j}(label) with label t_r (s == 0) or t_r t_s (r <= s).
struct EdgeSymbol {
  std::uint8_t i = 0;
  std::uint8_t j = 0;
  std::uint8_t r = 0;
  std::uint8_t s = 0;

  static EdgeSymbol make(int i, int j, int r, int s = 0) {
    if (i == j) throw std::invalid_argument("EdgeSymbol: need i != j");
    if (s != 0 && s < r) std::swap(r, s);
    return {static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j), static_cast<std::uint8_t>(r),
            static_cast<std::uint8_t>(s)};
  }
  std::string str() const {
    std::string label = "t" + std::to_string(r) + (s ? "t" + std::to_string(s) : "");
    return "E" + std::to_string(i) + std::to_string(j) + "(" + label + ")";
  }
  friend auto operator<=>(const EdgeSymbol&, const EdgeSymbol&) = default;
};

/// A word of length 1 or 2 in the E-symbols.
struct Word {
  EdgeSymbol first;
  EdgeSymbol second;
  std::uint8_t length = 1;

  std::string str() const { return length == 1 ? first.str() : first.str() + "*" + second.str(); }
  friend auto operator<=>(const Word&, const Word&) = default;
};

/// Exact integer combination of words. Products of two linear elements give
/// length-2 words; nothing is ever reduced through group relations.
class FormalQuadratic {
 public:
  using Terms = std::map<Word, BigInt>;

  static FormalQuadratic letter(const EdgeSymbol& e, const BigInt& coef = 1) {
    FormalQuadratic out;
    out.add({e, {}, 1}, coef);
    return out;
  }

  void add(const Word& w, const BigInt& coef) {
    if (coef == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, coef);
    if (!inserted) {
      it->second += coef;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  FormalQuadratic& operator+=(const FormalQuadratic& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  FormalQuadratic& operator-=(const FormalQuadratic& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  friend FormalQuadratic operator+(FormalQuadratic a, const FormalQuadratic& b) { return a += b; }
  friend FormalQuadratic operator-(FormalQuadratic a, const FormalQuadratic& b) { return a -= b; }
  friend FormalQuadratic operator*(const BigInt& k, const FormalQuadratic& a) {
    FormalQuadratic out;
    if (k == 0) return out;
    for (const auto& [w, c] : a.terms_) out.terms_.emplace(w, k * c);
    return out;
  }

  /// Product of two linear elements.
  friend FormalQuadratic operator*(const FormalQuadratic& a, const FormalQuadratic& b) {
    FormalQuadratic out;
    for (const auto& [u, c] : a.terms_)
      for (const auto& [v, d] : b.terms_) {
        if (u.length != 1 || v.length != 1) throw std::invalid_argument("FormalQuadratic: degree exceeds 2");
        out.add({u.first, v.first, 2}, c * d);
      }
    return out;
  }

  friend bool operator==(const FormalQuadratic&, const FormalQuadratic&) = default;

  /// sigma acts by i -> perm[i-1] on every index.
  FormalQuadratic permuted(const std::vector<int>& perm) const {
    auto move = [&](EdgeSymbol e) {
      e.i = static_cast<std::uint8_t>(perm.at(e.i - 1u));
      e.j = static_cast<std::uint8_t>(perm.at(e.j - 1u));
      return e;
    };
    FormalQuadratic out;
    for (const auto& [w, c] : terms_) out.add({move(w.first), w.length == 2 ? move(w.second) : EdgeSymbol{}, w.length}, c);
    return out;
  }

  int max_index() const {
    int top = 0;
    for (const auto& [w, c] : terms_) {
      top = std::max({top, int(w.first.i), int(w.first.j)});
      if (w.length == 2) top = std::max({top, int(w.second.i), int(w.second.j)});
    }
    return top;
  }

 private:
  Terms terms_;
};

/// If a == k * b for an integer k, returns k. Zero is a multiple of anything.
inline std::optional<BigInt> scalar_multiple(const FormalQuadratic& a, const FormalQuadratic& b) {
  if (a.is_zero()) return BigInt(0);
  if (b.is_zero() || a.size() != b.size()) return std::nullopt;
  const auto& [w0, c0] = *b.terms().begin();
  auto it = a.terms().find(w0);
  if (it == a.terms().end() || it->second % c0 != 0) return std::nullopt;
  const BigInt k = it->second / c0;
  return k * b == a ? std::optional<BigInt>(k) : std::nullopt;
}

// ---------------------------------------------------------------------------
// The Laplacian pieces.

struct Edge {
  int lo = 0;
  int hi = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::vector<Edge> edges(int m) {
  std::vector<Edge> out;
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b) out.push_back({a, b});
  return out;
}

inline int shared_vertices(const Edge& e, const Edge& f) {
  return int(e.lo == f.lo) + int(e.lo == f.hi) + int(e.hi == f.lo) + int(e.hi == f.hi);
}

/// Delta_{i,j} = sum_r E_{i,j}(t_r) + E_{j,i}(t_r)
inline FormalQuadratic edge_laplacian(const Edge& e, int d) {
  FormalQuadratic out;
  for (int r = 1; r <= d; ++r) {
    out += FormalQuadratic::letter(EdgeSymbol::make(e.lo, e.hi, r));
    out += FormalQuadratic::letter(EdgeSymbol::make(e.hi, e.lo, r));
  }
  return out;
}

struct LaplacianParts {
  int m = 0;
  int d = 0;
  FormalQuadratic delta;     // Delta_m
  FormalQuadratic delta_sq;  // Delta_m^2, expanded letter by letter
  FormalQuadratic sq;
  FormalQuadratic adj;
  FormalQuadratic op;
  FormalQuadratic delta2;  // Delta_m^{(2)}
};

inline FormalQuadratic laplacian_formal(int m, int d) {
  FormalQuadratic out;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      if (i != j)
        for (int r = 1; r <= d; ++r) out += FormalQuadratic::letter(EdgeSymbol::make(i, j, r));
  return out;
}

/// sum_{i != j} sum_{r,s} E_{i,j}(t_r t_s)
inline FormalQuadratic laplacian2_formal(int m, int d) {
  FormalQuadratic out;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      if (i != j)
        for (int r = 1; r <= d; ++r)
          for (int s = 1; s <= d; ++s) out += FormalQuadratic::letter(EdgeSymbol::make(i, j, r, s));
  return out;
}

inline LaplacianParts build_parts(int m, int d) {
  if (m < 2 || m > 12) throw std::invalid_argument("build_parts: need 2 <= m <= 12");
  if (d < 0 || d > 9) throw std::invalid_argument("build_parts: need 0 <= d <= 9");
  LaplacianParts p;
  p.m = m;
  p.d = d;
  p.delta = laplacian_formal(m, d);
  p.delta_sq = p.delta * p.delta;
  p.delta2 = laplacian2_formal(m, d);
  const auto E = edges(m);
  for (const auto& e : E)
    for (const auto& f : E) {
      const auto prod = edge_laplacian(e, d) * edge_laplacian(f, d);
      switch (shared_vertices(e, f)) {
        case 2: p.sq += prod; break;
        case 1: p.adj += prod; break;
        default: p.op += prod; break;
      }
    }
  return p;
}

/// The four-term block
///   E_ij(r)E_jk(s) + E_jk(s)E_ij(r) + E_ij(r)E_il(s) + E_jk(s)E_lk(r).
inline FormalQuadratic four_term_block(int i, int j, int k, int l, int r, int s) {
  auto L = [](int a, int b, int t) { return FormalQuadratic::letter(EdgeSymbol::make(a, b, t)); };
  return L(i, j, r) * L(j, k, s) + L(j, k, s) * L(i, j, r) + L(i, j, r) * L(i, l, s) + L(j, k, s) * L(l, k, r);
}

/// sum_{r,s} sum_{i,j,k distinct}
///   E_ij(r)E_jk(s) + E_jk(s)E_ij(r) + E_ij(r)E_ik(s) + E_jk(s)E_ik(r)
inline FormalQuadratic adj_four_term(int m, int d) {
  auto L = [](int a, int b, int t) { return FormalQuadratic::letter(EdgeSymbol::make(a, b, t)); };
  FormalQuadratic out;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      for (int k = 1; k <= m; ++k) {
        if (i == j || j == k || i == k) continue;
        for (int r = 1; r <= d; ++r)
          for (int s = 1; s <= d; ++s)
            out += L(i, j, r) * L(j, k, s) + L(j, k, s) * L(i, j, r) + L(i, j, r) * L(i, k, s) +
                   L(j, k, s) * L(i, k, r);
      }
  return out;
}

// ---------------------------------------------------------------------------
// Orbit sums.

inline constexpr int kMaxOrbitDegree = 8;

/// sum over sigma in Sym(n) of sigma(xi). Work is split by sigma(1) and the
/// partial sums are added in index order.
inline FormalQuadratic orbit_sum(const FormalQuadratic& xi, int n, unsigned jobs = 1) {
  if (n < 1 || n > kMaxOrbitDegree) throw std::invalid_argument("orbit_sum: need 1 <= n <= 8");
  if (xi.max_index() > n) throw std::invalid_argument("orbit_sum: element uses an index above n");
  const auto partial = parallel_map(static_cast<std::size_t>(n), jobs, [&](std::size_t head) {
    std::vector<int> rest;
    for (int v = 1; v <= n; ++v)
      if (v != static_cast<int>(head) + 1) rest.push_back(v);
    FormalQuadratic acc;
    std::vector<int> perm(static_cast<std::size_t>(n));
    do {
      perm[0] = static_cast<int>(head) + 1;
      std::copy(rest.begin(), rest.end(), perm.begin() + 1);
      acc += xi.permuted(perm);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return acc;
  });
  FormalQuadratic out;
  for (const auto& p : partial) out += p;
  return out;
}

struct IdentityCheck {
  std::string identity;
  int m = 0;
  int n = 0;
  int d = 0;
  std::size_t lhs_terms = 0;
  std::size_t rhs_terms = 0;
  bool match = false;
  BigInt scalar = 0;           // the coefficient that was found (or 0)
  BigInt expected_scalar = 0;  // the closed form being tested
};

/// The three orbit-sum identities for the pair (m, n).
inline std::vector<IdentityCheck> orbit_identities(int m, int n, int d, unsigned jobs = 1) {
  if (m < 4 || n < m) throw std::invalid_argument("orbit_identities: need 4 <= m <= n");
  const auto small = build_parts(m, d);
  const auto big = build_parts(n, d);
  const BigInt mm = m;
  struct Case {
    const char* name;
    const FormalQuadratic* lhs;
    const FormalQuadratic* rhs;
    BigInt expected;
  };
  const Case cases[] = {
      {"delta2", &small.delta2, &big.delta2, mm * (mm - 1) * factorial(n - 2)},
      {"adj", &small.adj, &big.adj, mm * (mm - 1) * (mm - 2) * factorial(n - 3)},
      {"op", &small.op, &big.op, mm * (mm - 1) * (mm - 2) * (mm - 3) * factorial(n - 4)},
  };
  std::vector<IdentityCheck> out;
  for (const auto& c : cases) {
    const auto sum = orbit_sum(*c.lhs, n, jobs);
    IdentityCheck r{c.name, m, n, d, sum.size(), c.rhs->size()};
    r.expected_scalar = c.expected;
    r.match = (sum == c.expected * *c.rhs);
    if (auto k = scalar_multiple(sum, *c.rhs)) r.scalar = *k;
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Edge-pair census.

struct CountComparison {
  std::string name;
  std::int64_t ordered = 0;
  std::int64_t unordered = 0;
  Rational stated;  // the printed closed form at this m
  std::string matches;  // "ordered", "unordered", "both" or "neither"
};

struct EdgeCensus {
  int m = 0;
  std::int64_t edge_count = 0;
  Rational edge_formula;
  CountComparison adjacent;
  CountComparison disjoint;
};

inline EdgeCensus edge_pair_census(int m) {
  if (m < 2) throw std::invalid_argument("edge_pair_census: need m >= 2");
  const auto E = edges(m);
  EdgeCensus c;
  c.m = m;
  c.edge_count = static_cast<std::int64_t>(E.size());
  c.edge_formula = make_rational(m * (m - 1), 2);
  std::int64_t adj = 0, dis = 0;
  for (const auto& e : E)
    for (const auto& f : E) {
      if (shared_vertices(e, f) == 1) ++adj;
      if (shared_vertices(e, f) == 0) ++dis;
    }
  auto verdict = [](CountComparison& x) {
    const bool o = x.stated == x.ordered;
    const bool u = x.stated == x.unordered;
    x.matches = o && u ? "both" : o ? "ordered" : u ? "unordered" : "neither";
  };
  const std::int64_t M = m;
  c.adjacent = {"adjacent", adj, adj / 2, make_rational(M * (M - 1) * (M - 2), 6), ""};
  c.disjoint = {"disjoint", dis, dis / 2, make_rational(M * (M - 1) * (M - 2) * (M - 3), 4), ""};
  verdict(c.adjacent);
  verdict(c.disjoint);
  return c;
}

// ---------------------------------------------------------------------------
// From the four-term inequality to the Adj/Op/Delta2 inequality.

struct SpadeToHeart {
  int m = 0;
  int d = 0;
  bool adj_match = false;      // orbit sum of the block is a multiple of Adj_m
  BigInt adj_multiplicity = 0;
  bool delta2_match = false;   // orbit sum of E_{1,3}(t_r t_s) is a multiple of Delta2_m
  BigInt delta2_multiplicity = 0;
  BigInt op_multiplicity = 0;  // R Op_m is Sym(m)-invariant and repeated for every (r, s)
  /// The inequality becomes Adj + R' Op >= eps' Delta2 with
  /// R' = R * op_multiplicity / adj_multiplicity and
  /// eps' = eps * delta2_multiplicity / adj_multiplicity.
  Rational r_factor;
  Rational eps_factor;
};

inline SpadeToHeart spade_to_heart(int m, int d, unsigned jobs = 1) {
  if (m < 4 || m > kMaxOrbitDegree) throw std::invalid_argument("spade_to_heart: need 4 <= m <= 8");
  SpadeToHeart out;
  out.m = m;
  out.d = d;
  FormalQuadratic block, corner;
  for (int r = 1; r <= d; ++r)
    for (int s = 1; s <= d; ++s) {
      block += four_term_block(1, 2, 3, 4, r, s);
      corner += FormalQuadratic::letter(EdgeSymbol::make(1, 3, r, s));
    }
  const auto parts = build_parts(m, d);
  const auto block_sum = orbit_sum(block, m, jobs);
  const auto corner_sum = orbit_sum(corner, m, jobs);
  if (d == 0) {
    out.adj_match = block_sum.is_zero() && parts.adj.is_zero();
    out.delta2_match = corner_sum.is_zero() && parts.delta2.is_zero();
    return out;
  }
  if (auto k = scalar_multiple(block_sum, parts.adj)) {
    out.adj_match = *k > 0;
    out.adj_multiplicity = *k;
  }
  if (auto k = scalar_multiple(corner_sum, parts.delta2)) {
    out.delta2_match = *k > 0;
    out.delta2_multiplicity = *k;
  }
  out.op_multiplicity = factorial(m) * d * d;
  if (out.adj_multiplicity > 0) {
    out.r_factor = Rational(out.op_multiplicity, out.adj_multiplicity);
    out.eps_factor = Rational(out.delta2_multiplicity, out.adj_multiplicity);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lifting to large n.

struct StabilityCertificate {
  int m = 4;
  Rational R = 1;
  Rational eps = 1;
};

struct StabilityResult {
  int n = 0;
  bool applies = false;
  Rational epsilon_n;  // (n-2) eps / (m-2)
  Rational eps_prime;  // epsilon_n / n, so epsilon_n = n eps'
};

inline StabilityResult stability_threshold(const StabilityCertificate& cert, int n) {
  if (cert.m < 4) throw std::invalid_argument("stability_threshold: need m >= 4");
  if (!(cert.R > 0) || !(cert.eps > 0)) throw std::invalid_argument("stability_threshold: need R, eps > 0");
  if (n < cert.m) throw std::invalid_argument("stability_threshold: need n >= m");
  StabilityResult out;
  out.n = n;
  out.applies = Rational(cert.m - 3) * cert.R <= Rational(n - 3);
  out.epsilon_n = Rational(n - 2) * cert.eps / Rational(cert.m - 2);
  out.eps_prime = out.epsilon_n / Rational(n);
  return out;
}

/// Smallest n >= m at which the lift applies.
inline int stability_start(const StabilityCertificate& cert) {
  int n = cert.m;
  while (!stability_threshold(cert, n).applies) ++n;
  return n;
}

// ---------------------------------------------------------------------------
// The H_3 relations inside EL_5 under the substitution
//   x1 = e12(t_r), x2 = e13(t_s), x3 = e14(t_r),
//   y1 = e25(t_s), y2 = e35(t_r), y3 = e45(t_s), z = e15(t_r t_s).

struct El5Substitution {
  std::int64_t q = 0;
  std::int64_t tr = 0;
  std::int64_t ts = 0;
  std::vector<FiniteMatrixElt> x;
  std::vector<FiniteMatrixElt> y;
  FiniteMatrixElt z;
  std::vector<RelationResult> relations;
  bool pass() const {
    for (const auto& r : relations)
      if (!r.pass()) return false;
    return true;
  }
};

inline El5Substitution instantiate_el5(std::int64_t q, std::int64_t tr, std::int64_t ts) {
  if (q < 1) throw std::invalid_argument("instantiate_el5: need q >= 1");
  El5Substitution out;
  out.q = q;
  out.tr = mod(tr, q);
  out.ts = mod(ts, q);
  auto e = [&](int i, int j, std::int64_t v) { return FiniteMatrixElt::elementary(5, q, i, j, v); };
  out.x = {e(1, 2, tr), e(1, 3, ts), e(1, 4, tr)};
  out.y = {e(2, 5, ts), e(3, 5, tr), e(4, 5, ts)};
  out.z = e(1, 5, tr * ts);
  const auto id = FiniteMatrixElt::identity(5, q);

  RelationResult same{"[x_i, y_i] = z"}, cross{"[x_i, y_j] = 1 (i != j)"}, xx{"[x_i, x_j] = 1"},
      yy{"[y_i, y_j] = 1"}, central{"z central"};
  auto record = [](RelationResult& rel, bool ok, const std::string& what) {
    ++rel.checked;
    if (!ok && rel.failures++ == 0) rel.first_failure = what;
  };
  for (int i = 0; i < 3; ++i) {
    const std::string si = std::to_string(i + 1);
    record(central, commutator(out.x[i], out.z) == id && commutator(out.y[i], out.z) == id, "i=" + si);
    for (int j = 0; j < 3; ++j) {
      const std::string tag = "i=" + si + " j=" + std::to_string(j + 1);
      if (i == j) {
        record(same, commutator(out.x[i], out.y[j]) == out.z, tag);
      } else {
        record(cross, commutator(out.x[i], out.y[j]) == id, tag);
        record(xx, commutator(out.x[i], out.x[j]) == id, tag);
        record(yy, commutator(out.y[i], out.y[j]) == id, tag);
      }
    }
  }
  out.relations = {same, cross, xx, yy, central};
  return out;
}

}  // namespace elsos
