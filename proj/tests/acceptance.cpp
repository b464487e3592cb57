// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if all
// pass.

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "elsos/augmentation.hpp"
#include "elsos/cayley.hpp"
#include "elsos/inequalities.hpp"
#include "elsos/symmetrization.hpp"

using namespace elsos;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

bool checks_pass(const SweepReport& r) {
  for (const auto& c : r.checks)
    if (!c.pass) return false;
  return true;
}

std::string margin_detail(const SweepReport& r) {
  std::string s = "points=" + std::to_string(r.rows.size()) + " min_margin=" + format_double(r.min_margin);
  if (r.argmin) s += " at " + r.argmin->str();
  for (const auto& c : r.checks) s += "; " + c.name + "=" + format_double(c.value) + (c.pass ? "" : " (failed)");
  return s;
}

SweepConfig config(std::int64_t qmax) {
  SweepConfig c;
  c.qmax = qmax;
  c.tol = 1e-9;
  return c;
}

Verdict bz() {
  auto c = config(60);
  c.lambdas = {1, 2, 4};
  const auto r = verify_bz(c);
  const bool fast = r.wall_ms < 30000;
  return {r.pass() && fast, margin_detail(r) + "; " + format_double(r.wall_ms / 1000) + " s"};
}

Verdict xyz1() {
  const auto r = verify_xyz1(config(60));
  return {r.pass() && checks_pass(r), margin_detail(r)};
}

Verdict zzz() {
  Verdict v{true, ""};
  for (auto [R, kappa] : {std::pair{1.0, 0.5}, std::pair{4.0, 0.5}, std::pair{16.0, 0.25}}) {
    auto c = config(60);
    c.R = R;
    c.kappa = kappa;
    const auto r = verify_zzz(c);
    const bool ok = r.pass() && !r.rows.empty();
    v.pass = v.pass && ok;
    v.detail += (v.detail.empty() ? "" : "; ") + ("(R,kappa)=(" + format_double(R) + "," + format_double(kappa) +
                                                   ") theta0=" + format_double(zzz_theta0(R, kappa)) + " points=" +
                                                   std::to_string(r.rows.size()) + " min=" + format_double(r.min_margin));
  }
  return v;
}

Verdict xyz2() {
  const auto r = verify_xyz2(config(60));
  return {r.pass() && checks_pass(r), margin_detail(r)};
}

Verdict prodnorm() {
  const auto r = verify_prodnorm(config(60));
  return {r.pass() && checks_pass(r), margin_detail(r)};
}

Verdict xsmall() {
  auto c = config(40);
  c.deltas = {0.1, 0.3, 0.5};
  const auto r = verify_xsmall(c);
  return {r.pass() && checks_pass(r) && !r.rows.empty(), margin_detail(r)};
}

Verdict smalltheta() {
  const auto found = verify_smalltheta(config(24));
  auto c = config(24);
  c.theta0 = 0.5;
  const auto at_half = verify_smalltheta(c);
  const bool ok = found.pass() && found.constants.value("found", false) && at_half.min_margin < 0 &&
                  !at_half.pass() && found.wall_ms + at_half.wall_ms < 300000;
  return {ok, "found theta0=" + found.constants.value("theta0", std::string("-")) +
                  " R=" + found.constants.value("R", std::string("-")) +
                  " eps=" + found.constants.value("eps", std::string("-")) +
                  "; theta0=1/2 best margin " + format_double(at_half.min_margin) +
                  (at_half.argmin ? " at " + at_half.argmin->str() : "")};
}

Verdict formula() {
  const auto r = verify_formula(config(12));
  const bool ok = r.pass() && r.constants.value("found", false) && r.constants.contains("R") &&
                  r.constants.contains("eps") && r.wall_ms < 1800000;
  return {ok, "R=" + r.constants.value("R", std::string("-")) + " eps=" + r.constants.value("eps", std::string("-")) +
                  " min_margin=" + format_double(r.min_margin) + "; " + format_double(r.wall_ms / 1000) + " s"};
}

Verdict symmetrization() {
  const unsigned jobs = default_jobs();
  int total = 0, matched = 0;
  for (auto [m, n] : {std::pair{4, 5}, std::pair{4, 6}, std::pair{5, 6}})
    for (int d : {1, 2})
      for (const auto& c : orbit_identities(m, n, d, jobs)) {
        ++total;
        matched += c.match;
      }
  for (int m = 2; m <= 5; ++m)
    for (int d : {1, 2}) {
      const auto p = build_parts(m, d);
      ++total;
      matched += p.delta_sq == p.sq + p.adj + p.op;
    }
  return {matched == total, std::to_string(matched) + "/" + std::to_string(total) + " exact identities"};
}

Verdict stability() {
  const StabilityCertificate cert{5, 6, 1};
  bool ok = stability_start(cert) == 15;
  for (int n = 5; n <= 100; ++n) {
    const auto r = stability_threshold(cert, n);
    ok = ok && r.applies == (n >= 15) && r.epsilon_n == make_rational(n - 2, 3);
  }
  return {ok, "applies from n=" + std::to_string(stability_start(cert)) + ", epsilon_n=(n-2)/3 for n<=100"};
}

Verdict augmentation() {
  bool dims = true;
  for (int n = 0; n <= 10; ++n) dims = dims && graded_dimension(n) == graded_dimension_formula(n);
  const auto phi = phi_report();
  const bool phi_ok = phi.delta_squared == 0 && phi.box == 4 && phi.z_square == 2;
  const auto gram = gram_matrix_check();
  const double expect[] = {0, 1, 1, 2};
  bool spectrum = gram.eigenvalues.size() == 4;
  for (std::size_t k = 0; spectrum && k < 4; ++k) spectrum = std::abs(gram.eigenvalues[k] - expect[k]) <= 1e-12;
  const auto id = heis::sos_identity();
  const bool exact = id.lhs == id.rhs;
  double worst = 0;
  const auto grid = farey_grid(5, GridRange::Full);
  for (const auto& a : grid) worst = std::max(worst, (evaluate(a, id.lhs) - evaluate(a, id.rhs)).cwiseAbs().maxCoeff());
  const bool numeric = grid.size() == 10 && worst <= 1e-12;
  return {dims && phi_ok && gram.matches && spectrum && exact && numeric,
          std::string("dims ") + (dims ? "ok" : "bad") + ", phi " + phi.delta_squared.str() + "/" + phi.box.str() + "/" +
              phi.z_square.str() + ", gram " + (gram.matches && spectrum ? "ok" : "bad") + ", sos exact " +
              (exact ? "yes" : "no") + " numeric " + format_double(worst)};
}

Verdict cayley() {
  const auto rows = family_report(3, family_pairs({2, 3, 4, 5}, PRule::Coprime), kDefaultGroupCap, default_jobs());
  bool ok = rows.size() == 5;
  std::string detail;
  for (const auto& r : rows) {
    ok = ok && r.order_matches() && r.normalized_gap() > 0.01;
    detail += (detail.empty() ? "" : " ") + ("q=" + std::to_string(r.q) + ",p=" + std::to_string(r.p) + ":" +
                                             std::to_string(r.order) + "/" + format_double(r.normalized_gap()));
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"almost Mathieu norm bound, q<=60, lambda in {1,2,4}", bz},
      {"X+Y >= sin(pi theta), q<=60, closed form at 1/2", xyz1},
      {"R X + Y inequality below theta0(R,kappa)", zzz},
      {"two-term operator and 2x2 blocks nonnegative, b identity", xyz2},
      {"||pi((1-x)(1-y))|| <= 4 cos(pi theta/2), equality at 1/2", prodnorm},
      {"spectral projection product bound, q<=40", xsmall},
      {"two-site constant search at Q=24, failure at theta0=1/2", smalltheta},
      {"three-site constant search at Q=12", formula},
      {"symmetrization orbit identities and Laplacian square split", symmetrization},
      {"stability threshold for (m,R,eps)=(5,6,1)", stability},
      {"graded dimensions, functional, Gram matrix, SOS identity", augmentation},
      {"Cayley graphs of SL_3(Z/q), q=2..5: orders and gaps", cayley},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("[%s] %2zu %s -- %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
