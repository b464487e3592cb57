// Norms of the almost Mathieu operator at a few rational angles, next to the
// closed-form upper bound.

#include <cstdio>

#include "elsos/angle.hpp"
#include "elsos/inequalities.hpp"

int main() {
  using namespace elsos;
  std::printf("%-8s %-6s %-12s %-12s %s\n", "theta", "lambda", "norm", "bound", "slack");
  for (const auto& angle : farey_grid(6, GridRange::Half)) {
    for (double lambda : {1.0, 2.0}) {
      const double norm = operator_norm(almost_mathieu(angle, lambda));
      const double bound = lambda + 2.0 - (2.0 * lambda / (lambda + 2.0)) * angle.s();
      std::printf("%-8s %-6.1f %-12.8f %-12.8f %.3e\n", angle.str().c_str(), lambda, norm, bound, bound - norm);
    }
  }
}
