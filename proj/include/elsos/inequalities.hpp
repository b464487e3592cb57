#pragma once

// Angle sweeps for the single-, two- and three-site operator inequalities in
// the rotation algebras, and the constant searches for the two-site and
// three-site inequalities.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "elsos/angle.hpp"
#include "elsos/linalg.hpp"
#include "elsos/parallel.hpp"
#include "elsos/rotation_rep.hpp"
#include "elsos/sweep.hpp"

namespace elsos {

using std::numbers::pi;

// ---------------------------------------------------------------------------
// Per-angle quantities.

/// (lambda+2) - (2 lambda/(lambda+2)) sin(pi theta) - ||H_{theta,lambda}||
inline double bz_slack(const RationalAngle& angle, double lambda) {
  const double bound = lambda + 2.0 - (2.0 * lambda / (lambda + 2.0)) * angle.s();
  return bound - operator_norm(almost_mathieu(angle, lambda));
}

/// lambda_min(X + Y) - sin(pi theta)
inline double xyz1_margin(const RationalAngle& angle) {
  return min_eigenvalue(x_theta(angle) + y_theta(angle)) - angle.s();
}

/// min{1/4, arcsin(kappa sqrt((1-kappa)/R)) / pi}
inline double zzz_theta0(double R, double kappa) {
  if (!(R >= 1.0)) throw std::invalid_argument("zzz: need R >= 1");
  if (!(kappa > 0.0 && kappa < 1.0)) throw std::invalid_argument("zzz: need 0 < kappa < 1");
  return std::min(0.25, std::asin(kappa * std::sqrt((1.0 - kappa) / R)) / pi);
}

inline double zzz_lhs_min(const RationalAngle& angle, double R) {
  return min_eigenvalue(R * x_theta(angle) + y_theta(angle));
}

/// lambda_min(R X + Y) - (sqrt((1-kappa) R)/2) * 2 sin(pi theta)
inline double zzz_margin(const RationalAngle& angle, double R, double kappa) {
  return zzz_lhs_min(angle, R) - std::sqrt((1.0 - kappa) * R) * angle.s();
}

/// (X+Y) 2s + (XY+YX)/2
inline RealOperator xyz2_operator(const RationalAngle& angle) {
  const RealMatrix X = x_theta(angle).matrix();
  const RealMatrix Y = y_theta(angle).matrix();
  const RealMatrix m = 2.0 * angle.s() * (X + Y) + 0.5 * (X * Y + Y * X);
  return RealOperator(m, 1e-10);
}

using Block2 = std::array<std::array<double, 2>, 2>;

/// The 2x2 block of the two-term operator on span{delta_{m-1}, delta_m}.
inline Block2 xyz2_block(const RationalAngle& angle, std::int64_t m) {
  const double s = angle.s();
  const double b0 = angle.b_m(m - 1);
  const double b1 = angle.b_m(m);
  const double off = -(2.0 * s + b0 + b1);
  return {{{2.0 * (s + 1.0) * b0 + 2.0 * s, off}, {off, 2.0 * (s + 1.0) * b1 + 2.0 * s}}};
}

inline double block_det(const Block2& t) { return t[0][0] * t[1][1] - t[0][1] * t[1][0]; }
inline double block_trace(const Block2& t) { return t[0][0] + t[1][1]; }

/// sin((2m-1) pi theta) with the argument reduced exactly mod 2 pi.
inline double odd_sine(const RationalAngle& angle, std::int64_t m) {
  const std::int64_t q2 = 2 * angle.q();
  const std::int64_t k = mod(mod(2 * m - 1, q2) * angle.p(), q2);
  return std::sin(pi * static_cast<double>(k) / static_cast<double>(angle.q()));
}

/// |(b_{m-1} - b_m) - (-2 sin(pi theta) sin((2m-1) pi theta))|
inline double b_identity_error(const RationalAngle& angle, std::int64_t m) {
  const double lhs = angle.b_m(m - 1) - angle.b_m(m);
  const double rhs = -2.0 * angle.s() * odd_sine(angle, m);
  return std::abs(lhs - rhs);
}

/// 4 cos(pi theta / 2) - ||pi((1-x)(1-y))||
inline double prodnorm_slack(const RationalAngle& angle) {
  using heis::bar;
  const auto xi = bar(HeisenbergElt::x()) * bar(HeisenbergElt::y());
  return 4.0 * std::cos(pi * angle.theta() / 2.0) - spectral_norm(evaluate(angle, xi));
}

/// delta is admissible at theta when 0 < delta < 2(1 - cos(pi theta)).
inline bool xsmall_admissible(const RationalAngle& angle, double delta) {
  return delta > 0.0 && delta < 2.0 * (1.0 - std::cos(pi * angle.theta()));
}

struct XsmallPoint {
  double norm = 0.0;   // ||P_{Y<=delta} P_{X<=delta}||
  double bound = 0.0;  // sqrt(2/(4-delta))
  double identity_error = 0.0;  // max of the two compression identities
};

inline XsmallPoint xsmall_point(const RationalAngle& angle, double delta) {
  const auto X = x_theta(angle);
  const auto Y = y_theta(angle);
  const auto px = spectral_projection(X, delta, CutMode::AtMost).matrix.matrix();
  const auto py = spectral_projection(Y, delta, CutMode::AtMost).matrix.matrix();
  XsmallPoint out;
  out.norm = spectral_norm<double>(py * px);
  out.bound = std::sqrt(2.0 / (4.0 - delta));
  const RealMatrix ex = px * Y.matrix() * px - 2.0 * px;
  const RealMatrix ey = py * X.matrix() * py - 2.0 * py;
  out.identity_error = std::max(ex.cwiseAbs().maxCoeff(), ey.cwiseAbs().maxCoeff());
  return out;
}

/// The R-part and the fixed part of the two-site operator:
///   R (X(x)Y + Y(x)X) + X(x)X + Y(x)Y + (XY+YX)(x)1.
struct SplitOperator {
  RealOperator r_part;
  RealOperator fixed;
  RealOperator at(double R) const { return R * r_part + fixed; }
};

inline SplitOperator smalltheta_operator(const RationalAngle& angle) {
  using L = SiteLetter;
  SplitOperator out;
  out.r_part = tensor_operator(angle, 2, {term(1, {{L::X}, {L::Y}}), term(1, {{L::Y}, {L::X}})});
  out.fixed = tensor_operator(angle, 2,
                              {term(1, {{L::X}, {L::X}}), term(1, {{L::Y}, {L::Y}}),
                               term(1, {{L::X, L::Y}, {L::I}}), term(1, {{L::Y, L::X}, {L::I}})});
  return out;
}

/// Three-site operator
///   R (X1 Y2 + Y1 X2 + X1 Y3 + Y1 X3) + X1 X2 + Y1 Y2 + X1 Y1 + Y1 X1.
inline SplitOperator formula_operator(const RationalAngle& angle, Index cap = kDefaultKronCap) {
  using L = SiteLetter;
  SplitOperator out;
  out.r_part = tensor_operator(angle, 3,
                               {term(1, {{L::X}, {L::Y}, {L::I}}), term(1, {{L::Y}, {L::X}, {L::I}}),
                                term(1, {{L::X}, {L::I}, {L::Y}}), term(1, {{L::Y}, {L::I}, {L::X}})},
                               cap);
  out.fixed = tensor_operator(angle, 3,
                              {term(1, {{L::X}, {L::X}, {L::I}}), term(1, {{L::Y}, {L::Y}, {L::I}}),
                               term(1, {{L::X, L::Y}, {L::I}, {L::I}}), term(1, {{L::Y, L::X}, {L::I}, {L::I}})},
                              cap);
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps.

namespace detail {

inline SweepReport single_site_sweep(const std::string& name, const SweepConfig& config,
                                     const std::vector<RationalAngle>& grid,
                                     const std::function<double(const RationalAngle&)>& margin) {
  config.validate();
  Stopwatch clock;
  SweepReport report;
  report.name = name;
  report.grid_order = config.qmax;
  report.tol = config.tol;
  const auto values = parallel_map(grid.size(), config.jobs, [&](std::size_t i) { return margin(grid[i]); });
  for (std::size_t i = 0; i < grid.size(); ++i) report.rows.push_back({grid[i], values[i]});
  report.finalize();
  report.wall_ms = clock.elapsed_ms();
  return report;
}

inline std::string range_name(GridRange r) { return r == GridRange::Half ? "[0,1/2]" : "[0,1)"; }

inline nlohmann::ordered_json number_list(const std::vector<double>& v) {
  auto out = nlohmann::ordered_json::array();
  for (double x : v) out.push_back(format_double(x));
  return out;
}

}  // namespace detail

inline SweepReport verify_bz(const SweepConfig& config) {
  if (config.lambdas.empty()) throw std::invalid_argument("bz: lambda list is empty");
  for (double l : config.lambdas)
    if (!(l > 0)) throw std::invalid_argument("bz: lambda must be positive");
  const auto grid = farey_grid(config.qmax, GridRange::Full);
  auto report = detail::single_site_sweep("bz", config, grid, [&](const RationalAngle& a) {
    double m = std::numeric_limits<double>::infinity();
    for (double l : config.lambdas) m = std::min(m, bz_slack(a, l));
    return m;
  });
  report.constants["range"] = detail::range_name(GridRange::Full);
  report.constants["lambda"] = detail::number_list(config.lambdas);
  return report;
}

inline SweepReport verify_xyz1(const SweepConfig& config) {
  const auto grid = farey_grid(config.qmax, GridRange::Full);
  auto report = detail::single_site_sweep("xyz1", config, grid, xyz1_margin);
  report.constants["range"] = detail::range_name(GridRange::Full);
  if (config.qmax >= 2) {
    const double got = xyz1_margin(RationalAngle(1, 2));
    const double err = std::abs(got - (3.0 - 2.0 * std::sqrt(2.0)));
    report.checks.push_back({"closed form at 1/2 is 3-2sqrt2", err, err <= 1e-12, "abs error"});
  }
  return report;
}

inline SweepReport verify_zzz(const SweepConfig& config) {
  const double R = config.R.value_or(4.0);
  const double kappa = config.kappa.value_or(0.5);
  const double theta0 = zzz_theta0(R, kappa);
  const auto grid = farey_grid_below(config.qmax, theta0);
  auto report = detail::single_site_sweep("zzz", config, grid,
                                          [&](const RationalAngle& a) { return zzz_margin(a, R, kappa); });
  report.constants["R"] = format_double(R);
  report.constants["kappa"] = format_double(kappa);
  report.constants["theta0"] = format_double(theta0);
  if (std::none_of(grid.begin(), grid.end(), [](const RationalAngle& a) { return a.p() > 0; }))
    report.warnings.push_back("empty sweep: no grid angle in (0, theta0]; raise --qmax");
  return report;
}

inline SweepReport verify_xyz2(const SweepConfig& config) {
  const auto grid = farey_grid(config.qmax, GridRange::Full);
  struct Point {
    double op_margin = 0.0;
    double block_margin = 0.0;
    double identity_error = 0.0;
    std::int64_t worst_m = 0;
  };
  config.validate();
  Stopwatch clock;
  const auto points = parallel_map(grid.size(), config.jobs, [&](std::size_t i) {
    const auto& a = grid[i];
    Point pt;
    pt.op_margin = min_eigenvalue(xyz2_operator(a));
    pt.block_margin = std::numeric_limits<double>::infinity();
    for (std::int64_t m = 0; m < a.q(); ++m) {
      const auto t = xyz2_block(a, m);
      const double bm = std::min(block_det(t), block_trace(t));
      if (bm < pt.block_margin) {
        pt.block_margin = bm;
        pt.worst_m = m;
      }
      pt.identity_error = std::max(pt.identity_error, b_identity_error(a, m));
    }
    return pt;
  });

  SweepReport report;
  report.name = "xyz2";
  report.grid_order = config.qmax;
  report.tol = config.tol;
  double block_min = std::numeric_limits<double>::infinity();
  double id_max = 0.0;
  std::string block_where, id_where;
  std::int64_t sign_disagreements = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& pt = points[i];
    report.rows.push_back({grid[i], pt.op_margin});
    if (pt.block_margin < block_min) {
      block_min = pt.block_margin;
      block_where = "theta=" + grid[i].str() + " m=" + std::to_string(pt.worst_m);
    }
    if (pt.identity_error > id_max) {
      id_max = pt.identity_error;
      id_where = "theta=" + grid[i].str();
    }
    if (pt.block_margin >= -config.tol && pt.op_margin < -config.tol) ++sign_disagreements;
  }
  report.finalize();
  report.checks.push_back({"block det/trace", block_min, block_min >= -config.tol, block_where});
  report.checks.push_back({"b identity", id_max, id_max <= 1e-12, id_where});
  report.checks.push_back({"block/operator sign agreement", static_cast<double>(sign_disagreements),
                           sign_disagreements == 0, "angles with PSD blocks but negative operator margin"});
  report.constants["range"] = detail::range_name(GridRange::Full);
  report.wall_ms = clock.elapsed_ms();
  return report;
}

inline SweepReport verify_prodnorm(const SweepConfig& config) {
  const auto grid = farey_grid(config.qmax, GridRange::Half);
  auto report = detail::single_site_sweep("prodnorm", config, grid, prodnorm_slack);
  report.constants["range"] = detail::range_name(GridRange::Half);
  if (config.qmax >= 2) {
    const double err = std::abs(prodnorm_slack(RationalAngle(1, 2)));
    report.checks.push_back({"equality at 1/2", err, err <= 1e-9, "abs slack"});
  }
  return report;
}

inline SweepReport verify_xsmall(const SweepConfig& config) {
  config.validate();
  if (config.deltas.empty()) throw std::invalid_argument("xsmall: delta list is empty");
  for (double d : config.deltas)
    if (!(d > 0 && d < 4)) throw std::invalid_argument("xsmall: delta must lie in (0, 4)");
  Stopwatch clock;
  std::vector<RationalAngle> grid;
  for (const auto& a : farey_grid(config.qmax, GridRange::Half))
    if (std::any_of(config.deltas.begin(), config.deltas.end(), [&](double d) { return xsmall_admissible(a, d); }))
      grid.push_back(a);

  struct Point {
    double margin = std::numeric_limits<double>::infinity();
    double identity_error = 0.0;
    std::vector<std::string> skipped;
  };
  const auto points = parallel_map(grid.size(), config.jobs, [&](std::size_t i) {
    Point pt;
    for (double d : config.deltas) {
      if (!xsmall_admissible(grid[i], d)) continue;
      try {
        const auto r = xsmall_point(grid[i], d);
        pt.margin = std::min(pt.margin, r.bound - r.norm);
        pt.identity_error = std::max(pt.identity_error, r.identity_error);
      } catch (const LinalgError&) {
        pt.skipped.push_back("theta=" + grid[i].str() + " delta=" + format_double(d) + ": ambiguous cut");
      }
    }
    return pt;
  });

  SweepReport report;
  report.name = "xsmall";
  report.grid_order = config.qmax;
  report.tol = config.tol;
  double id_max = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::isfinite(points[i].margin)) report.rows.push_back({grid[i], points[i].margin});
    id_max = std::max(id_max, points[i].identity_error);
    for (const auto& w : points[i].skipped) report.warnings.push_back(w);
  }
  report.finalize();
  report.checks.push_back({"compression identity P Y P = 2P", id_max, id_max <= 1e-9, "max entry error"});
  report.constants["range"] = "(0,1/2], admissible delta only";
  report.constants["delta"] = detail::number_list(config.deltas);
  if (report.rows.empty()) report.warnings.push_back("empty sweep: no admissible (theta, delta) pair");
  report.wall_ms = clock.elapsed_ms();
  return report;
}

// ---------------------------------------------------------------------------
// Constant searches.

inline const std::vector<double> kSearchR{2, 4, 8, 16, 32};
inline const std::vector<double> kSearchEps{0.25, 0.125, 0.0625};
inline const std::vector<double> kSearchTheta0{0.125, 0.0625, 0.03125};

namespace detail {

/// lambda_min of the split operator at every R, per angle, and whether that
/// sequence is nondecreasing in R.
struct SearchPoint {
  RationalAngle angle;
  std::vector<double> lmin;  // aligned with the R list
  double z = 0.0;
};

inline SweepReport constant_search(const std::string& name, const SweepConfig& config,
                                   const std::vector<RationalAngle>& grid, std::vector<double> theta0s,
                                   std::vector<double> Rs, std::vector<double> epss,
                                   const std::function<SplitOperator(const RationalAngle&)>& build) {
  config.validate();
  Stopwatch clock;
  std::sort(Rs.begin(), Rs.end());
  std::sort(epss.begin(), epss.end(), std::greater<>());
  std::sort(theta0s.begin(), theta0s.end(), std::greater<>());

  const auto points = parallel_map(grid.size(), config.jobs, [&](std::size_t i) {
    SearchPoint pt;
    pt.angle = grid[i];
    pt.z = z_theta(grid[i]);
    const auto op = build(grid[i]);
    for (double R : Rs) pt.lmin.push_back(min_eigenvalue(op.at(R)));
    return pt;
  });

  SweepReport report;
  report.name = name;
  report.grid_order = config.qmax;
  report.tol = config.tol;

  double worst_drop = 0.0;
  std::string drop_where;
  for (const auto& pt : points)
    for (std::size_t r = 1; r < pt.lmin.size(); ++r) {
      const double drop = pt.lmin[r - 1] - pt.lmin[r];
      if (drop > worst_drop) {
        worst_drop = drop;
        drop_where = "theta=" + pt.angle.str() + " R=" + format_double(Rs[r]);
      }
    }

  std::optional<std::size_t> found;
  for (double theta0 : theta0s)
    for (std::size_t r = 0; r < Rs.size(); ++r)
      for (double eps : epss) {
        ScanEntry e;
        e.theta0 = theta0;
        e.R = Rs[r];
        e.eps = eps;
        e.min_margin = std::numeric_limits<double>::infinity();
        for (const auto& pt : points) {
          if (pt.angle.theta() > theta0) continue;
          const double m = pt.lmin[r] - eps * pt.z;
          if (m < e.min_margin) {
            e.min_margin = m;
            e.argmin = pt.angle;
          }
        }
        e.pass = std::isfinite(e.min_margin) && e.min_margin >= -config.tol;
        report.scan.push_back(e);
        if (e.pass && !found) found = report.scan.size() - 1;
      }
  if (report.scan.empty() || !std::isfinite(report.scan.front().min_margin))
    report.warnings.push_back("empty sweep: no grid angle below theta0");

  // Rows follow the first passing combination, or the least-bad one.
  std::size_t chosen = 0;
  if (found) {
    chosen = *found;
  } else {
    for (std::size_t i = 1; i < report.scan.size(); ++i)
      if (report.scan[i].min_margin > report.scan[chosen].min_margin) chosen = i;
  }
  if (!report.scan.empty()) {
    const auto& c = report.scan[chosen];
    const auto r = static_cast<std::size_t>(std::find(Rs.begin(), Rs.end(), c.R) - Rs.begin());
    for (const auto& pt : points)
      if (pt.angle.theta() <= c.theta0) report.rows.push_back({pt.angle, pt.lmin[r] - c.eps * pt.z});
    report.constants["found"] = found.has_value();
    report.constants["theta0"] = format_double(c.theta0);
    report.constants["R"] = format_double(c.R);
    report.constants["eps"] = format_double(c.eps);
  }
  report.finalize();
  report.checks.push_back({"nondecreasing in R", worst_drop, worst_drop <= config.tol, drop_where});
  report.wall_ms = clock.elapsed_ms();
  return report;
}

}  // namespace detail

/// Two-site inequality on theta <= theta0. With R, eps and theta0 all given
/// this checks one candidate; any missing constant is scanned.
inline SweepReport verify_smalltheta(const SweepConfig& config) {
  if (config.theta0 && !(*config.theta0 > 0 && *config.theta0 <= 0.5))
    throw std::invalid_argument("smalltheta: theta0 must lie in (0, 1/2]");
  if (config.R && !(*config.R > 0)) throw std::invalid_argument("smalltheta: R must be positive");
  if (config.eps && !(*config.eps > 0)) throw std::invalid_argument("smalltheta: eps must be positive");
  const auto theta0s = config.theta0 ? std::vector<double>{*config.theta0} : kSearchTheta0;
  const auto Rs = config.R ? std::vector<double>{*config.R} : kSearchR;
  const auto epss = config.eps ? std::vector<double>{*config.eps} : kSearchEps;
  const double top = *std::max_element(theta0s.begin(), theta0s.end());
  const auto grid = farey_grid_below(config.qmax, top);
  return detail::constant_search("smalltheta", config, grid, theta0s, Rs, epss, smalltheta_operator);
}

/// Three-site inequality on the full grid over [0, 1/2].
inline SweepReport verify_formula(const SweepConfig& config) {
  if (config.R && !(*config.R > 0)) throw std::invalid_argument("formula: R must be positive");
  if (config.eps && !(*config.eps > 0)) throw std::invalid_argument("formula: eps must be positive");
  const auto Rs = config.R ? std::vector<double>{*config.R} : kSearchR;
  const auto epss = config.eps ? std::vector<double>{*config.eps} : kSearchEps;
  const auto grid = farey_grid(config.qmax, GridRange::Half);
  auto report = detail::constant_search("formula", config, grid, {0.5}, Rs, epss,
                                        [](const RationalAngle& a) { return formula_operator(a); });
  report.constants.erase("theta0");
  return report;
}

}  // namespace elsos
