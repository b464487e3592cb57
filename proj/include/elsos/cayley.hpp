#pragma once

// Cayley graphs of SL_n(Z/qZ) with respect to the elementary matrices
// e_{i,j}(+-p), and their spectral gaps.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "elsos/groups.hpp"
#include "elsos/linalg.hpp"
#include "elsos/parallel.hpp"
#include "elsos/rational.hpp"
#include "elsos/sweep.hpp"

namespace elsos {

inline constexpr std::int64_t kDefaultGroupCap = 500000;
inline constexpr std::int64_t kDenseVertexLimit = 4000;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A d-regular multigraph given by neighbour lists; loops and repeated
/// edges are allowed.
struct RegularGraph {
  std::int64_t vertex_count = 0;
  int degree = 0;
  std::vector<std::uint32_t> neighbors;  // vertex v owns [v*degree, (v+1)*degree)

  std::uint32_t neighbor(std::int64_t v, int k) const {
    return neighbors[static_cast<std::size_t>(v * degree + k)];
  }
  bool is_symmetric() const {
    // Multiset symmetry: count(u->v) == count(v->u) for all pairs.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs, reversed;
    arcs.reserve(neighbors.size());
    for (std::int64_t v = 0; v < vertex_count; ++v)
      for (int k = 0; k < degree; ++k) {
        arcs.emplace_back(static_cast<std::uint32_t>(v), neighbor(v, k));
        reversed.emplace_back(neighbor(v, k), static_cast<std::uint32_t>(v));
      }
    std::sort(arcs.begin(), arcs.end());
    std::sort(reversed.begin(), reversed.end());
    return arcs == reversed;
  }
};

/// K_m, for self-tests.
inline RegularGraph complete_graph(int m) {
  if (m < 1) throw std::invalid_argument("complete_graph: need m >= 1");
  RegularGraph g{m, m - 1, {}};
  for (int v = 0; v < m; ++v)
    for (int u = 0; u < m; ++u)
      if (u != v) g.neighbors.push_back(static_cast<std::uint32_t>(u));
  return g;
}

/// Disjoint union of two regular graphs of the same degree.
inline RegularGraph disjoint_union(const RegularGraph& a, const RegularGraph& b) {
  if (a.degree != b.degree) throw std::invalid_argument("disjoint_union: degrees differ");
  RegularGraph g{a.vertex_count + b.vertex_count, a.degree, a.neighbors};
  for (auto v : b.neighbors) g.neighbors.push_back(static_cast<std::uint32_t>(v + a.vertex_count));
  return g;
}

struct CayleyGraph {
  int n = 0;
  std::int64_t q = 0;
  std::int64_t p = 0;
  std::vector<FiniteMatrixElt> vertices;  // BFS order (or shuffled)
  RegularGraph graph;
};

namespace detail {

inline std::uint64_t encode(const std::vector<std::int64_t>& entries, std::int64_t q) {
  std::uint64_t key = 0;
  for (auto e : entries) key = key * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(e);
  return key;
}

}  // namespace detail

/// BFS closure of the identity under right multiplication by e_{i,j}(p) and
/// e_{i,j}(-p), i != j. The generator list is a multiset of size 2n(n-1).
/// With a seed, vertex ids are shuffled afterwards.
inline CayleyGraph enumerate_group(int n, std::int64_t q, std::int64_t p, std::int64_t cap = kDefaultGroupCap,
                                   std::optional<std::uint64_t> relabel_seed = std::nullopt) {
  if (n < 2 || n > 3) throw std::invalid_argument("enumerate_group: need 2 <= n <= 3");
  if (q < 1) throw std::invalid_argument("enumerate_group: need q >= 1");
  if (std::gcd(mod(p, q), q) != 1 && q != 1)
    throw std::invalid_argument("enumerate_group: need gcd(p, q) = 1, got p=" + std::to_string(p) +
                                " q=" + std::to_string(q));

  struct Gen {
    int i, j;
    std::int64_t r;
  };
  std::vector<Gen> gens;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) {
        gens.push_back({i, j, mod(p, q)});
        gens.push_back({i, j, mod(-p, q)});
      }
  const int degree = static_cast<int>(gens.size());

  CayleyGraph out;
  out.n = n;
  out.q = q;
  out.p = p;
  std::vector<std::vector<std::int64_t>> states;
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  std::vector<std::uint32_t> nbrs;

  auto intern = [&](std::vector<std::int64_t> s) -> std::uint32_t {
    const auto key = detail::encode(s, q);
    auto [it, inserted] = index.try_emplace(key, static_cast<std::uint32_t>(states.size()));
    if (inserted) {
      if (static_cast<std::int64_t>(states.size()) >= cap)
        throw GraphError("enumerate_group: group order exceeds cap " + std::to_string(cap) + " (reached " +
                         std::to_string(states.size()) + " elements)");
      states.push_back(std::move(s));
    }
    return it->second;
  };
  intern(FiniteMatrixElt::identity(n, q).entries());
  for (std::size_t v = 0; v < states.size(); ++v) {
    for (const auto& g : gens) {
      // g * e_{i,j}(r): column j += r * column i
      auto s = states[v];
      for (int row = 0; row < n; ++row) {
        auto& cell = s[static_cast<std::size_t>(row * n + g.j)];
        cell = (cell + g.r * s[static_cast<std::size_t>(row * n + g.i)]) % q;
      }
      nbrs.push_back(intern(std::move(s)));
    }
  }

  const auto count = static_cast<std::int64_t>(states.size());
  std::vector<std::uint32_t> label(static_cast<std::size_t>(count));
  std::iota(label.begin(), label.end(), 0u);
  if (relabel_seed) {
    std::mt19937_64 rng(*relabel_seed);
    std::shuffle(label.begin(), label.end(), rng);
  }
  out.graph = RegularGraph{count, degree, std::vector<std::uint32_t>(nbrs.size())};
  out.vertices.resize(static_cast<std::size_t>(count));
  for (std::int64_t v = 0; v < count; ++v) {
    const auto lv = label[static_cast<std::size_t>(v)];
    out.vertices[lv] = FiniteMatrixElt(n, q, states[static_cast<std::size_t>(v)]);
    for (int k = 0; k < degree; ++k)
      out.graph.neighbors[static_cast<std::size_t>(lv) * degree + k] = label[nbrs[static_cast<std::size_t>(v * degree + k)]];
  }
  return out;
}

/// |SL_n(Z/qZ)| from the factorization of q:
///   prod over p^a || q of p^{(a-1)(n^2-1)} p^{n(n-1)/2} prod_{i=2..n} (p^i - 1).
inline BigInt sl_order(int n, std::int64_t q) {
  if (n < 1 || q < 1) throw std::invalid_argument("sl_order: need n >= 1, q >= 1");
  BigInt out = 1;
  auto factor = [&](std::int64_t p, int a) {
    const BigInt P = p;
    out *= pow(P, static_cast<unsigned>((a - 1) * (n * n - 1) + n * (n - 1) / 2));
    for (int i = 2; i <= n; ++i) out *= pow(P, static_cast<unsigned>(i)) - 1;
  };
  std::int64_t rest = q;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    int a = 0;
    while (rest % p == 0) {
      rest /= p;
      ++a;
    }
    if (a > 0) factor(p, a);
  }
  if (rest > 1) factor(rest, 1);
  return out;
}

struct SpectralGap {
  double lambda2 = 0.0;
  double gap = 0.0;
  std::string method;  // "dense" or "power"
  std::int64_t iterations = 0;
};

namespace detail {

inline bool is_connected(const RegularGraph& g) {
  if (g.vertex_count == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count), 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::int64_t reached = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (int k = 0; k < g.degree; ++k) {
      const auto u = g.neighbor(v, k);
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == g.vertex_count;
}

inline void remove_mean(std::vector<double>& v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  for (auto& x : v) x -= mean;
}

inline double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace detail

inline constexpr double kPowerResidual = 1e-10;
inline constexpr std::int64_t kPowerMaxIterations = 2000000;

/// gap = degree - lambda_2(adjacency). Dense eigensolve up to 4000 vertices;
/// above that, power iteration on A + dI restricted to the complement of the
/// constants, stopped when ||Mv - mu v|| <= 1e-10 d.
inline SpectralGap spectral_gap(const RegularGraph& g, std::int64_t dense_limit = kDenseVertexLimit) {
  if (g.vertex_count < 2) throw GraphError("spectral_gap: need at least 2 vertices");
  const double d = g.degree;
  SpectralGap out;
  if (g.vertex_count <= dense_limit) {
    RealMatrix a = RealMatrix::Zero(g.vertex_count, g.vertex_count);
    for (std::int64_t v = 0; v < g.vertex_count; ++v)
      for (int k = 0; k < g.degree; ++k) a(v, g.neighbor(v, k)) += 1.0;
    const auto ev = eigenvalues(RealOperator(std::move(a)));
    const auto top = ev.size() - 1;
    if (std::abs(ev(top) - d) > 1e-9 * std::max(1.0, d)) throw GraphError("spectral_gap: graph is not regular");
    out.lambda2 = ev(top - 1);
    out.method = "dense";
  } else {
    if (!detail::is_connected(g)) throw GraphError("spectral_gap: graph is disconnected");
    const auto N = static_cast<std::size_t>(g.vertex_count);
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(N), w(N);
    for (auto& x : v) x = dist(rng);
    detail::remove_mean(v);
    double nv = detail::norm2(v);
    for (auto& x : v) x /= nv;
    double mu = 0.0;
    std::int64_t it = 0;
    for (; it < kPowerMaxIterations; ++it) {
      for (std::size_t u = 0; u < N; ++u) {
        double s = d * v[u];
        const std::uint32_t* row = &g.neighbors[u * static_cast<std::size_t>(g.degree)];
        for (int k = 0; k < g.degree; ++k) s += v[row[k]];
        w[u] = s;
      }
      detail::remove_mean(w);
      mu = std::inner_product(v.begin(), v.end(), w.begin(), 0.0);
      double res = 0.0;
      for (std::size_t u = 0; u < N; ++u) res += (w[u] - mu * v[u]) * (w[u] - mu * v[u]);
      const double nw = detail::norm2(w);
      for (std::size_t u = 0; u < N; ++u) v[u] = w[u] / nw;
      if (std::sqrt(res) <= kPowerResidual * d) break;
    }
    if (it == kPowerMaxIterations) throw GraphError("spectral_gap: power iteration did not converge");
    out.lambda2 = mu - d;
    out.iterations = it + 1;
    out.method = "power";
  }
  out.gap = d - out.lambda2;
  if (out.gap <= 1e-9 * std::max(1.0, d)) throw GraphError("spectral_gap: graph is disconnected (gap 0)");
  return out;
}

// ---------------------------------------------------------------------------

struct FamilyRow {
  int n = 0;
  std::int64_t q = 0;
  std::int64_t p = 0;
  std::int64_t order = 0;
  BigInt expected_order = 0;
  int degree = 0;
  SpectralGap gap;
  double normalized_gap() const { return gap.gap / degree; }
  bool order_matches() const { return BigInt(order) == expected_order; }
};

enum class PRule { One, Coprime };

inline std::vector<std::pair<std::int64_t, std::int64_t>> family_pairs(const std::vector<std::int64_t>& qs, PRule rule) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (auto q : qs) {
    if (rule == PRule::One || q == 1) {
      out.emplace_back(q, 1);
      continue;
    }
    // p and -p generate the same graph, so p <= q/2 suffices.
    for (std::int64_t p = 1; 2 * p <= q; ++p)
      if (std::gcd(p, q) == 1) out.emplace_back(q, p);
  }
  return out;
}

inline std::vector<FamilyRow> family_report(int n, const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs,
                                            std::int64_t cap = kDefaultGroupCap, unsigned jobs = 1) {
  return parallel_map(pairs.size(), jobs, [&](std::size_t idx) {
    const auto [q, p] = pairs[idx];
    const auto g = enumerate_group(n, q, p, cap);
    FamilyRow row;
    row.n = n;
    row.q = q;
    row.p = p;
    row.order = g.graph.vertex_count;
    row.expected_order = sl_order(n, q);
    row.degree = g.graph.degree;
    row.gap = spectral_gap(g.graph);
    return row;
  });
}

inline void write_family_csv(std::ostream& os, const std::vector<FamilyRow>& rows) {
  os << "n,q,p,order,degree,lambda2,gap,normalized_gap\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.q << ',' << r.p << ',' << r.order << ',' << r.degree << ',' << format_double(r.gap.lambda2)
       << ',' << format_double(r.gap.gap) << ',' << format_double(r.normalized_gap()) << '\n';
}

}  // namespace elsos
