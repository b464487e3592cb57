#pragma once

// Command-line front end. dispatch() parses argv, runs one verification and
// returns 0 (all checks pass), 2 (a check failed) or 1 (usage error).

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "elsos/augmentation.hpp"
#include "elsos/cayley.hpp"
#include "elsos/group_algebra.hpp"
#include "elsos/inequalities.hpp"
#include "elsos/rotation_rep.hpp"
#include "elsos/symmetrization.hpp"

namespace elsos::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { kPass = 0, kUsage = 1, kFail = 2 };

struct Options {
  // shared
  double tol = kDefaultTolerance;
  unsigned jobs = default_jobs();
  std::string out;
  std::string format = "json";
  bool timing = false;
  // verify
  std::optional<std::int64_t> qmax;
  std::vector<double> lambdas{1.0, 2.0, 4.0};
  std::optional<double> R, kappa, eps, theta0;
  std::vector<double> deltas{0.1, 0.3, 0.5};
  // symmetry
  std::optional<int> m, n, d;
  std::string r_exact = "6";
  std::string eps_exact = "1";
  std::optional<std::int64_t> q;
  // graded
  int max_degree = 10;
  int truncation = 5;
  // expander
  int expander_n = 3;
  std::vector<std::int64_t> qs{2, 3, 4, 5};
  std::string p_rule = "1";
  std::int64_t cap = kDefaultGroupCap;
  double min_gap = 0.01;
};

/// Result of one command: a pass flag, a JSON report, an optional CSV table
/// and a short human summary.
struct Outcome {
  bool pass = false;
  json report;
  std::optional<std::string> csv;
  std::string summary;
  double wall_ms = 0.0;
};

/// Parses "3", "-2", "1/3" or "0.25" exactly.
inline Rational parse_rational(const std::string& text) {
  auto bad = [&] { return std::invalid_argument("not a rational number: '" + text + "'"); };
  // decimal digits only
  auto integer = [&](std::string digits) {
    bool negative = false;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
      negative = digits[0] == '-';
      digits.erase(0, 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) throw bad();
    BigInt v = 0;
    for (char ch : digits) v = v * 10 + (ch - '0');
    return negative ? BigInt(-v) : v;
  };
  if (auto slash = text.find('/'); slash != std::string::npos) {
    const BigInt den = integer(text.substr(slash + 1));
    if (den == 0) throw bad();
    return make_rational(integer(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    const std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (frac.empty() || frac[0] == '-' || frac[0] == '+') throw bad();
    const bool negative = !whole.empty() && whole[0] == '-';
    const BigInt scale = pow(BigInt(10), static_cast<unsigned>(frac.size()));
    const BigInt w = (whole.empty() || whole == "-" || whole == "+") ? BigInt(0) : integer(whole);
    const BigInt f = integer(frac);
    return make_rational(negative ? BigInt(w * scale - f) : BigInt(w * scale + f), scale);
  }
  return Rational(integer(text));
}

// ---------------------------------------------------------------------------
// verify

inline std::int64_t default_qmax(const std::string& which) {
  if (which == "xsmall") return 40;
  if (which == "smalltheta") return 24;
  if (which == "formula") return 12;
  return 60;
}

inline const std::map<std::string, std::function<SweepReport(const SweepConfig&)>>& verifiers() {
  static const std::map<std::string, std::function<SweepReport(const SweepConfig&)>> table{
      {"bz", verify_bz},           {"xyz1", verify_xyz1},     {"zzz", verify_zzz},
      {"xyz2", verify_xyz2},       {"prodnorm", verify_prodnorm}, {"xsmall", verify_xsmall},
      {"smalltheta", verify_smalltheta}, {"formula", verify_formula},
  };
  return table;
}

inline Outcome run_verify(const std::string& which, const Options& o) {
  SweepConfig c;
  c.qmax = o.qmax.value_or(default_qmax(which));
  c.tol = o.tol;
  c.lambdas = o.lambdas;
  c.R = o.R;
  c.kappa = o.kappa;
  c.eps = o.eps;
  c.theta0 = o.theta0;
  c.deltas = o.deltas;
  c.jobs = o.jobs;
  const auto report = verifiers().at(which)(c);

  Outcome out;
  out.pass = report.pass();
  out.wall_ms = report.wall_ms;
  json params{{"qmax", c.qmax}, {"tol", c.tol}};
  if (which == "bz") params["lambda"] = detail::number_list(c.lambdas);
  if (which == "xsmall") params["delta"] = detail::number_list(c.deltas);
  if (c.R) params["R"] = format_double(*c.R);
  if (c.kappa) params["kappa"] = format_double(*c.kappa);
  if (c.eps) params["eps"] = format_double(*c.eps);
  if (c.theta0) params["theta0"] = format_double(*c.theta0);

  auto witnesses = json::array();
  if (!report.margin_pass() && report.argmin)
    witnesses.push_back({{"theta", report.argmin->str()}, {"margin", format_double(report.min_margin)}});
  for (const auto& ch : report.checks)
    if (!ch.pass) witnesses.push_back({{"check", ch.name}, {"value", format_double(ch.value)}, {"detail", ch.detail}});

  auto body = to_json(report, false);
  out.report = json{{"command", "verify " + which}, {"params", params}, {"pass", out.pass}};
  for (auto it = body.begin(); it != body.end(); ++it)
    if (it.key() != "name" && it.key() != "pass") out.report[it.key()] = it.value();
  out.report["witnesses"] = witnesses;

  std::ostringstream csv;
  write_csv(csv, report);
  out.csv = csv.str();

  std::ostringstream s;
  s << "verify " << which << ": " << (out.pass ? "PASS" : "FAIL") << "  points=" << report.rows.size();
  if (!report.rows.empty())
    s << "  min_margin=" << format_double(report.min_margin) << " at theta=" << report.argmin->str();
  if (report.constants.contains("found"))
    s << "  constants: theta0=" << report.constants.value("theta0", std::string("-"))
      << " R=" << report.constants["R"].get<std::string>() << " eps=" << report.constants["eps"].get<std::string>()
      << (report.constants["found"].get<bool>() ? "" : " (no passing combination)");
  s << '\n';
  for (const auto& ch : report.checks)
    s << "  check " << ch.name << ": " << (ch.pass ? "ok" : "FAILED") << " (" << format_double(ch.value) << ")\n";
  for (const auto& w : report.warnings) s << "  warning: " << w << '\n';
  out.summary = s.str();
  return out;
}

// ---------------------------------------------------------------------------
// symmetry

inline Outcome run_symmetry_orbit(const Options& o) {
  std::vector<std::pair<int, int>> pairs{{4, 5}, {4, 6}, {5, 6}};
  if (o.m || o.n) pairs = {{o.m.value_or(4), o.n.value_or(o.m.value_or(4) + 1)}};
  const std::vector<int> ds = o.d ? std::vector<int>{*o.d} : std::vector<int>{1, 2};
  for (int d : ds)
    if (d < 1 || d > 3) throw std::invalid_argument("symmetry orbit: need 1 <= d <= 3");
  for (const auto& [m, n] : pairs)
    if (m < 4 || n < m || n > kMaxOrbitDegree) throw std::invalid_argument("symmetry orbit: need 4 <= m <= n <= 8");

  Outcome out;
  out.pass = true;
  auto rows = json::array();
  std::ostringstream csv, s;
  csv << "identity,m,n,d,lhs_terms,rhs_terms,match,scalar\n";
  auto emit = [&](const std::string& name, int m, int n, int d, std::size_t lt, std::size_t rt, bool match,
                  const std::string& scalar) {
    rows.push_back({{"identity", name}, {"m", m}, {"n", n}, {"d", d}, {"lhs_terms", lt}, {"rhs_terms", rt},
                    {"match", match}, {"scalar", scalar}});
    csv << name << ',' << m << ',' << n << ',' << d << ',' << lt << ',' << rt << ',' << (match ? "true" : "false")
        << ',' << scalar << '\n';
    s << "  " << name << " m=" << m << " n=" << n << " d=" << d << ": " << (match ? "match" : "MISMATCH")
      << (scalar.empty() ? "" : " scalar=" + scalar) << '\n';
    out.pass = out.pass && match;
  };
  for (const auto& [m, n] : pairs)
    for (int d : ds)
      for (const auto& r : orbit_identities(m, n, d, o.jobs))
        emit("orbit_" + r.identity, m, n, d, r.lhs_terms, r.rhs_terms, r.match, to_string(r.expected_scalar));
  int mtop = 5;
  for (const auto& pr : pairs) mtop = std::max(mtop, pr.first);
  for (int m = 2; m <= mtop; ++m)
    for (int d : ds) {
      const auto p = build_parts(m, d);
      const auto rhs = p.sq + p.adj + p.op;
      emit("delta_sq=sq+adj+op", m, m, d, p.delta_sq.size(), rhs.size(), p.delta_sq == rhs, "");
      const auto four = adj_four_term(m, d);
      emit("adj=four_term", m, m, d, p.adj.size(), four.size(), p.adj == four, "");
    }
  out.report = json{{"command", "symmetry orbit"}, {"pass", out.pass}, {"identities", rows}};
  out.csv = csv.str();
  out.summary = std::string("symmetry orbit: ") + (out.pass ? "PASS" : "FAIL") + '\n' + s.str();
  return out;
}

inline Outcome run_symmetry_census(const Options& o) {
  const std::vector<int> ms = o.m ? std::vector<int>{*o.m} : std::vector<int>{4, 5, 6};
  Outcome out;
  out.pass = true;  // the census reports discrepancies; it does not assert the printed counts
  auto rows = json::array();
  std::ostringstream csv, s;
  csv << "m,kind,ordered,unordered,stated,matches\n";
  for (int m : ms) {
    const auto c = edge_pair_census(m);
    const bool edges_ok = c.edge_formula == c.edge_count;
    out.pass = out.pass && edges_ok;
    json entry{{"m", m}, {"edges", c.edge_count}, {"edges_formula", c.edge_formula.str()}, {"edges_match", edges_ok}};
    csv << m << ",edges," << c.edge_count << ',' << c.edge_count << ',' << c.edge_formula.str() << ','
        << (edges_ok ? "both" : "neither") << '\n';
    s << "  m=" << m << " edges=" << c.edge_count << '\n';
    for (const auto* cc : {&c.adjacent, &c.disjoint}) {
      entry[cc->name] = {{"ordered", cc->ordered}, {"unordered", cc->unordered}, {"stated", cc->stated.str()},
                         {"matches", cc->matches}};
      csv << m << ',' << cc->name << ',' << cc->ordered << ',' << cc->unordered << ',' << cc->stated.str() << ','
          << cc->matches << '\n';
      s << "  m=" << m << ' ' << cc->name << ": ordered=" << cc->ordered << " unordered=" << cc->unordered
        << " stated=" << cc->stated.str() << " -> " << cc->matches << (cc->matches == "neither" ? "  [flag]" : "")
        << '\n';
    }
    rows.push_back(entry);
  }
  out.report = json{{"command", "symmetry census"}, {"pass", out.pass}, {"census", rows}};
  out.csv = csv.str();
  out.summary = std::string("symmetry census: ") + (out.pass ? "PASS" : "FAIL") + '\n' + s.str();
  return out;
}

inline Outcome run_symmetry_spade(const Options& o) {
  const int m = o.m.value_or(5);
  const int d = o.d.value_or(1);
  if (d < 0 || d > 3) throw std::invalid_argument("symmetry spade: need 0 <= d <= 3");
  const auto r = spade_to_heart(m, d, o.jobs);
  Outcome out;
  out.pass = r.adj_match && r.delta2_match;
  out.report = json{{"command", "symmetry spade"},
                    {"params", {{"m", m}, {"d", d}}},
                    {"pass", out.pass},
                    {"adj_match", r.adj_match},
                    {"adj_multiplicity", to_string(r.adj_multiplicity)},
                    {"delta2_match", r.delta2_match},
                    {"delta2_multiplicity", to_string(r.delta2_multiplicity)},
                    {"op_multiplicity", to_string(r.op_multiplicity)},
                    {"R_factor", r.r_factor.str()},
                    {"eps_factor", r.eps_factor.str()}};
  std::ostringstream s;
  s << "symmetry spade: " << (out.pass ? "PASS" : "FAIL") << "  m=" << m << " d=" << d
    << "  adj x" << r.adj_multiplicity << ", delta2 x" << r.delta2_multiplicity << ", op x" << r.op_multiplicity
    << "  => R' = " << r.r_factor << " R, eps' = " << r.eps_factor << " eps\n";
  out.summary = s.str();
  return out;
}

inline Outcome run_symmetry_threshold(const Options& o) {
  StabilityCertificate cert{o.m.value_or(5), parse_rational(o.r_exact), parse_rational(o.eps_exact)};
  std::vector<int> ns;
  const int start = stability_start(cert);
  if (o.n) {
    ns = {*o.n};
  } else {
    for (int n = cert.m; n <= std::max(start + 5, cert.m + 10); ++n) ns.push_back(n);
  }
  Outcome out;
  out.pass = true;
  auto rows = json::array();
  std::ostringstream csv, s;
  csv << "n,applies,epsilon_n,eps_prime\n";
  for (int n : ns) {
    const auto r = stability_threshold(cert, n);
    rows.push_back({{"n", n}, {"applies", r.applies}, {"epsilon_n", r.epsilon_n.str()}, {"eps_prime", r.eps_prime.str()}});
    csv << n << ',' << (r.applies ? "true" : "false") << ',' << r.epsilon_n.str() << ',' << r.eps_prime.str() << '\n';
  }
  out.report = json{{"command", "symmetry threshold"},
                    {"params", {{"m", cert.m}, {"R", cert.R.str()}, {"eps", cert.eps.str()}}},
                    {"pass", true},
                    {"first_n", start},
                    {"rows", rows}};
  out.csv = csv.str();
  s << "symmetry threshold: m=" << cert.m << " R=" << cert.R << " eps=" << cert.eps << "  applies from n=" << start
    << "  epsilon_n = (n-2) eps/(m-2)\n";
  out.summary = s.str();
  return out;
}

inline Outcome run_symmetry_el5(const Options& o) {
  std::vector<std::int64_t> qs;
  if (o.q) {
    if (*o.q < 2 || *o.q > 7) throw std::invalid_argument("symmetry el5: need 2 <= q <= 7");
    qs = {*o.q};
  } else {
    qs = {2, 3, 4, 5, 6, 7};
  }
  Outcome out;
  out.pass = true;
  auto rows = json::array();
  std::ostringstream s;
  for (auto q : qs) {
    std::int64_t cases = 0, failures = 0;
    std::string first;
    for (std::int64_t tr = 0; tr < q; ++tr)
      for (std::int64_t ts = 0; ts < q; ++ts) {
        const auto sub = instantiate_el5(q, tr, ts);
        for (const auto& rel : sub.relations) {
          cases += rel.checked;
          failures += rel.failures;
          if (rel.failures && first.empty())
            first = rel.name + " at t_r=" + std::to_string(tr) + " t_s=" + std::to_string(ts) + " " + rel.first_failure;
        }
      }
    rows.push_back({{"q", q}, {"checked", cases}, {"failures", failures}, {"first_failure", first}});
    s << "  q=" << q << ": " << cases << " relation instances, " << failures << " failures\n";
    out.pass = out.pass && failures == 0;
  }
  out.report = json{{"command", "symmetry el5"}, {"pass", out.pass}, {"results", rows}};
  out.summary = std::string("symmetry el5: ") + (out.pass ? "PASS" : "FAIL") + '\n' + s.str();
  return out;
}

// ---------------------------------------------------------------------------
// graded

inline Outcome run_graded_dims(const Options& o) {
  if (o.max_degree < 0 || o.max_degree > 40) throw std::invalid_argument("graded dims: need 0 <= max <= 40");
  Outcome out;
  out.pass = true;
  auto rows = json::array();
  std::ostringstream csv;
  csv << "n,formula,enumerated\n";
  for (int n = 0; n <= o.max_degree; ++n) {
    const auto f = graded_dimension_formula(n);
    const auto e = graded_dimension(n);
    out.pass = out.pass && f == e;
    rows.push_back({{"n", n}, {"formula", f}, {"enumerated", e}});
    csv << n << ',' << f << ',' << e << '\n';
  }
  out.report = json{{"command", "graded dims"}, {"params", {{"max", o.max_degree}}}, {"pass", out.pass}, {"rows", rows}};
  out.csv = csv.str();
  out.summary = std::string("graded dims: ") + (out.pass ? "PASS" : "FAIL") + "  n=0.." + std::to_string(o.max_degree) + '\n';
  return out;
}

inline Outcome run_graded_phi(const Options& o) {
  const auto r = phi_report(o.truncation);
  const auto chain = intermediate_chain();
  Outcome out;
  bool witness_ok = true;
  auto witness = json::array();
  for (const auto& [R, v] : r.witness) {
    witness.push_back({{"R", R.str()}, {"value", v.str()}});
    witness_ok = witness_ok && v == -1;
  }
  bool chain_ok = true;
  auto steps = json::array();
  for (const auto& st : chain) {
    steps.push_back({{"lhs", st.lhs}, {"rhs", st.rhs}, {"holds", st.holds()}, {"difference", st.difference.str()}});
    chain_ok = chain_ok && st.holds();
  }
  out.pass = r.delta_squared == 0 && r.box == 4 && r.z_square == 2 && r.self_adjoint && witness_ok && chain_ok;
  out.report = json{{"command", "graded phi"},
                    {"params", {{"N", o.truncation}}},
                    {"pass", out.pass},
                    {"phi_delta_squared", r.delta_squared.str()},
                    {"phi_box", r.box.str()},
                    {"phi_zbar_star_zbar", r.z_square.str()},
                    {"self_adjoint", r.self_adjoint},
                    {"witness", witness},
                    {"chain", steps}};
  std::ostringstream s;
  s << "graded phi: " << (out.pass ? "PASS" : "FAIL") << "  phi(Delta^2)=" << r.delta_squared << " phi(box)=" << r.box
    << " phi(zb*zb)=" << r.z_square << " phi(R Delta^2 + box/4 - zb*zb)=" << (r.witness.empty() ? Rational(0) : r.witness[0].second)
    << '\n';
  for (const auto& st : chain)
    s << "  " << st.lhs << " = " << st.rhs << " : " << (st.holds() ? "ok" : "MISMATCH " + st.difference.str()) << '\n';
  out.summary = s.str();
  return out;
}

inline Outcome run_graded_gram(const Options& o) {
  const auto g = gram_matrix_check(o.truncation);
  const double expected[4] = {0, 1, 1, 2};
  bool spectrum_ok = g.eigenvalues.size() == 4;
  for (std::size_t k = 0; spectrum_ok && k < 4; ++k) spectrum_ok = std::abs(g.eigenvalues[k] - expected[k]) <= 1e-12;
  Outcome out;
  out.pass = g.matches && g.psd && spectrum_ok;
  auto matrix = json::array();
  std::ostringstream csv;
  for (const auto& row : g.matrix) {
    auto r = json::array();
    for (std::size_t k = 0; k < row.size(); ++k) {
      r.push_back(row[k].str());
      csv << (k ? "," : "") << row[k].str();
    }
    csv << '\n';
    matrix.push_back(r);
  }
  auto ev = json::array();
  for (double e : g.eigenvalues) ev.push_back(format_double(e));
  out.report = json{{"command", "graded gram"}, {"pass", out.pass}, {"basis", {"xb xb", "xb yb", "yb xb", "yb yb"}},
                    {"matrix", matrix}, {"matches_display", g.matches}, {"eigenvalues", ev}, {"psd", g.psd}};
  out.csv = csv.str();
  std::ostringstream s;
  s << "graded gram: " << (out.pass ? "PASS" : "FAIL") << "  eigenvalues:";
  for (double e : g.eigenvalues) s << ' ' << format_double(e);
  s << '\n';
  out.summary = s.str();
  return out;
}

inline Outcome run_graded_sos(const Options& o) {
  const auto id = heis::sos_identity();
  const bool exact = id.lhs == id.rhs;
  auto points = json::array();
  double worst = 0.0;
  auto grid = farey_grid(5, GridRange::Full);
  for (const auto& a : grid) {
    const double err = (evaluate(a, id.lhs) - evaluate(a, id.rhs)).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
    points.push_back({{"theta", a.str()}, {"max_entry_error", format_double(err)}});
  }
  Outcome out;
  out.pass = exact && worst <= 1e-12;
  out.report = json{{"command", "graded sos-identity"}, {"pass", out.pass}, {"exact_match", exact},
                    {"lhs_terms", id.lhs.size()}, {"rhs_terms", id.rhs.size()},
                    {"numeric_points", points}, {"numeric_max_error", format_double(worst)}};
  (void)o;
  std::ostringstream s;
  s << "graded sos-identity: " << (out.pass ? "PASS" : "FAIL") << "  exact=" << (exact ? "yes" : "no")
    << " terms=" << id.lhs.size() << "  max error over " << grid.size() << " angles=" << format_double(worst) << '\n';
  out.summary = s.str();
  return out;
}

// ---------------------------------------------------------------------------
// expander

inline Outcome run_expander(const Options& o) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  if (o.p_rule == "1") {
    pairs = family_pairs(o.qs, PRule::One);
  } else if (o.p_rule == "coprime") {
    pairs = family_pairs(o.qs, PRule::Coprime);
  } else {
    std::int64_t p = 0;
    try {
      p = std::stoll(o.p_rule);
    } catch (const std::exception&) {
      throw std::invalid_argument("expander: --p must be 1, coprime or an integer");
    }
    for (auto q : o.qs) {
      if (q > 1 && std::gcd(mod(p, q), q) != 1)
        throw std::invalid_argument("expander: gcd(p, q) != 1 for p=" + std::to_string(p) + " q=" + std::to_string(q));
      pairs.emplace_back(q, p);
    }
  }
  const auto rows = family_report(o.expander_n, pairs, o.cap, o.jobs);
  Outcome out;
  out.pass = true;
  auto arr = json::array();
  std::ostringstream s;
  for (const auto& r : rows) {
    const bool ok = r.order_matches() && r.normalized_gap() > o.min_gap;
    out.pass = out.pass && ok;
    arr.push_back({{"n", r.n}, {"q", r.q}, {"p", r.p}, {"order", r.order}, {"expected_order", to_string(r.expected_order)},
                   {"degree", r.degree}, {"lambda2", format_double(r.gap.lambda2)}, {"gap", format_double(r.gap.gap)},
                   {"normalized_gap", format_double(r.normalized_gap())}, {"method", r.gap.method}, {"pass", ok}});
    s << "  n=" << r.n << " q=" << r.q << " p=" << r.p << " order=" << r.order
      << (r.order_matches() ? "" : " (expected " + to_string(r.expected_order) + ")") << " gap/degree="
      << format_double(r.normalized_gap()) << '\n';
  }
  out.report = json{{"command", "expander run"},
                    {"params", {{"n", o.expander_n}, {"q", o.qs}, {"p", o.p_rule}, {"cap", o.cap}, {"min_gap", o.min_gap}}},
                    {"pass", out.pass},
                    {"rows", arr}};
  std::ostringstream csv;
  write_family_csv(csv, rows);
  out.csv = csv.str();
  out.summary = std::string("expander run: ") + (out.pass ? "PASS" : "FAIL") + '\n' + s.str();
  return out;
}

// ---------------------------------------------------------------------------

inline Outcome run_all(const Options& base) {
  std::vector<std::pair<std::string, std::function<Outcome(const Options&)>>> steps;
  for (const auto& [name, fn] : verifiers()) {
    (void)fn;
    const std::string which = name;
    steps.emplace_back("verify " + which, [which](const Options& o) { return run_verify(which, o); });
  }
  steps.emplace_back("symmetry orbit", run_symmetry_orbit);
  steps.emplace_back("symmetry census", run_symmetry_census);
  steps.emplace_back("symmetry spade", run_symmetry_spade);
  steps.emplace_back("symmetry threshold", run_symmetry_threshold);
  steps.emplace_back("symmetry el5", run_symmetry_el5);
  steps.emplace_back("graded dims", run_graded_dims);
  steps.emplace_back("graded phi", run_graded_phi);
  steps.emplace_back("graded gram", run_graded_gram);
  steps.emplace_back("graded sos-identity", run_graded_sos);
  steps.emplace_back("expander run", run_expander);

  Options o;
  o.jobs = base.jobs;
  o.tol = base.tol;
  Outcome out;
  out.pass = true;
  auto results = json::array();
  std::ostringstream csv, s;
  csv << "command,pass\n";
  for (const auto& [name, fn] : steps) {
    const auto r = fn(o);
    out.pass = out.pass && r.pass;
    out.wall_ms += r.wall_ms;
    results.push_back({{"command", name}, {"pass", r.pass}, {"report", r.report}});
    csv << name << ',' << (r.pass ? "true" : "false") << '\n';
    s << r.summary;
  }
  out.report = json{{"command", "all"}, {"pass", out.pass}, {"results", results}};
  out.csv = csv.str();
  out.summary = s.str() + "all: " + (out.pass ? "PASS" : "FAIL") + '\n';
  return out;
}

// ---------------------------------------------------------------------------

inline int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite-dimensional checks for sums of squares in elementary groups"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto shared = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol, "tolerance for >= 0 checks")->check(CLI::NonNegativeNumber);
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "write the machine report to FILE");
    sub->add_option("--format", o.format, "report format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--timing", o.timing, "include runtime_ms in reports");
  };

  std::string chosen;
  std::function<Outcome()> action;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<Outcome()> fn) {
    auto* sub = parent->add_subcommand(name, help);
    shared(sub);
    sub->callback([&, name, fn, parent] {
      chosen = (parent == &app ? "" : parent->get_name() + " ") + name;
      action = fn;
    });
    return sub;
  };

  auto* verify = app.add_subcommand("verify", "angle sweeps of the operator inequalities");
  verify->require_subcommand(1);
  for (const auto& [name, fn] : verifiers()) {
    (void)fn;
    const std::string which = name;
    auto* sub = leaf(verify, which, "sweep " + which, [&, which] { return run_verify(which, o); });
    sub->add_option("--qmax", o.qmax, "grid order Q (all reduced p/q with q <= Q)");
    if (which == "bz") sub->add_option("--lambda", o.lambdas, "coupling constants")->delimiter(',');
    if (which == "zzz") {
      sub->add_option("--R", o.R, "R >= 1");
      sub->add_option("--kappa", o.kappa, "0 < kappa < 1");
    }
    if (which == "xsmall") sub->add_option("--delta", o.deltas, "spectral cut levels")->delimiter(',');
    if (which == "smalltheta" || which == "formula") {
      sub->add_option("--R", o.R, "fix R instead of scanning");
      sub->add_option("--eps", o.eps, "fix eps instead of scanning");
    }
    if (which == "smalltheta") sub->add_option("--theta0", o.theta0, "fix theta0 instead of scanning");
  }

  auto* symmetry = app.add_subcommand("symmetry", "exact symmetrization identities");
  symmetry->require_subcommand(1);
  {
    auto* s = leaf(symmetry, "orbit", "Sym(n) orbit-sum identities", [&] { return run_symmetry_orbit(o); });
    s->add_option("--m", o.m);
    s->add_option("--n", o.n);
    s->add_option("--d", o.d);
    s = leaf(symmetry, "census", "edge-pair counts", [&] { return run_symmetry_census(o); });
    s->add_option("--m", o.m)->check(CLI::Range(2, 40));
    s = leaf(symmetry, "spade", "orbit sums of the four-term block", [&] { return run_symmetry_spade(o); });
    s->add_option("--m", o.m)->check(CLI::Range(4, 8));
    s->add_option("--d", o.d);
    s = leaf(symmetry, "threshold", "lift from m to n", [&] { return run_symmetry_threshold(o); });
    s->add_option("--m", o.m)->check(CLI::Range(4, 1000));
    s->add_option("--n", o.n);
    s->add_option("--R", o.r_exact, "R as an exact rational");
    s->add_option("--eps", o.eps_exact, "eps as an exact rational");
    s = leaf(symmetry, "el5", "H_3 relations inside SL_5(Z/q)", [&] { return run_symmetry_el5(o); });
    s->add_option("--q", o.q);
  }

  auto* graded = app.add_subcommand("graded", "augmentation-ideal computations");
  graded->require_subcommand(1);
  {
    auto* s = leaf(graded, "dims", "graded dimensions", [&] { return run_graded_dims(o); });
    s->add_option("--max,-N,--N", o.max_degree, "largest degree");
    s = leaf(graded, "phi", "the degree-four functional", [&] { return run_graded_phi(o); });
    s->add_option("--N", o.truncation, "truncation degree")->check(CLI::Range(4, kMaxTruncation));
    s = leaf(graded, "gram", "Gram matrix of the functional", [&] { return run_graded_gram(o); });
    s->add_option("--N", o.truncation, "truncation degree")->check(CLI::Range(4, kMaxTruncation));
    leaf(graded, "sos-identity", "exact sum-of-squares identity", [&] { return run_graded_sos(o); });
  }

  auto* expander = app.add_subcommand("expander", "Cayley graph spectral gaps");
  expander->require_subcommand(1);
  {
    auto* s = leaf(expander, "run", "family report", [&] { return run_expander(o); });
    s->add_option("--n", o.expander_n)->check(CLI::Range(2, 3));
    s->add_option("--q", o.qs, "moduli")->delimiter(',');
    s->add_option("--p", o.p_rule, "1, coprime, or a fixed integer");
    s->add_option("--cap", o.cap, "largest group order to enumerate")->check(CLI::PositiveNumber);
    s->add_option("--min-gap", o.min_gap, "required normalized gap");
  }

  leaf(&app, "all", "run every check with defaults", [&] { return run_all(o); });

  std::vector<const char*> cargv;
  std::string prog = "elsos";
  cargv.push_back(prog.c_str());
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (!action) {
    err << "error: no command given\n";
    return kUsage;
  }

  Outcome result;
  try {
    result = action();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (o.timing) result.report["runtime_ms"] = result.wall_ms;

  out << result.summary;
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      err << "error: cannot open " << o.out << '\n';
      return kUsage;
    }
    if (o.format == "csv") {
      if (!result.csv) {
        err << "error: " << chosen << " has no CSV form; use --format json\n";
        return kUsage;
      }
      f << *result.csv;
    } else {
      f << result.report.dump(2) << '\n';
    }
  }
  return result.pass ? kPass : kFail;
}

}  // namespace elsos::cli
