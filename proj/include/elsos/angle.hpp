#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace elsos {

/// theta = p/q in lowest terms with 0 <= p < q.
class RationalAngle {
 public:
  RationalAngle() = default;
  RationalAngle(std::int64_t p, std::int64_t q) : p_(p), q_(q) {
    if (q < 1 || p < 0 || p >= q) throw std::invalid_argument("RationalAngle: need 0 <= p < q");
    if (std::gcd(p, q) != 1) throw std::invalid_argument("RationalAngle: p/q must be reduced");
  }
  /// Reduces p/q (mod 1) before constructing.
  static RationalAngle reduced(std::int64_t p, std::int64_t q) {
    if (q < 1) throw std::invalid_argument("RationalAngle: need q >= 1");
    p %= q;
    if (p < 0) p += q;
    const std::int64_t g = std::gcd(p, q);
    return {p / g, q / g};
  }

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  double theta() const { return static_cast<double>(p_) / static_cast<double>(q_); }
  std::string str() const { return std::to_string(p_) + "/" + std::to_string(q_); }

  /// Angle 2*pi*m*p/q reduced mod 2*pi using exact residues.
  double phase(std::int64_t m) const {
    std::int64_t r = (m % q_) * p_ % q_;
    if (r < 0) r += q_;
    return 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q_);
  }

  /// s = sin(pi theta)
  double s() const { return std::sin(std::numbers::pi * theta()); }
  double s_m(std::int64_t m) const { return std::sin(phase(m)); }
  double c_m(std::int64_t m) const { return std::cos(phase(m)); }
  /// b_m = 1 - cos(2 m pi theta) = 2 sin^2(m pi theta)
  double b_m(std::int64_t m) const {
    const double h = std::sin(0.5 * phase(m));
    return 2.0 * h * h;
  }
  /// Z_theta = 4 sin^2(pi theta)
  double z_scalar() const { return 4.0 * s() * s(); }

  friend bool operator==(const RationalAngle&, const RationalAngle&) = default;
  /// Grid order: by denominator, then numerator.
  friend bool operator<(const RationalAngle& a, const RationalAngle& b) {
    return a.q_ != b.q_ ? a.q_ < b.q_ : a.p_ < b.p_;
  }

 private:
  std::int64_t p_ = 0;
  std::int64_t q_ = 1;
};

enum class GridRange {
  Half,  // theta in [0, 1/2]
  Full,  // theta in [0, 1)
};

/// All reduced p/q with q <= order in the requested range, sorted by (q, p).
inline std::vector<RationalAngle> farey_grid(std::int64_t order, GridRange range = GridRange::Half) {
  if (order < 1) throw std::invalid_argument("farey_grid: order must be >= 1");
  std::vector<RationalAngle> out;
  for (std::int64_t q = 1; q <= order; ++q)
    for (std::int64_t p = 0; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      if (range == GridRange::Half && 2 * p > q) continue;
      out.emplace_back(p, q);
    }
  return out;
}

/// Grid restricted to theta <= bound.
inline std::vector<RationalAngle> farey_grid_below(std::int64_t order, double bound) {
  std::vector<RationalAngle> out;
  for (const auto& a : farey_grid(order, GridRange::Full))
    if (a.theta() <= bound) out.push_back(a);
  return out;
}

}  // namespace elsos
