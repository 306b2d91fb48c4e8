#include "af/mesh.hpp"

#include <cmath>
#include <sstream>

namespace af {

Grid build_grid(double x0, double x1, double y0, double y1, int n1, int n2) {
  if (n1 < 1 || n2 < 1) {
    std::ostringstream os;
    os << "cell counts must be positive, got " << n1 << " x " << n2;
    throw ConfigError(os.str());
  }
  if (!(x1 > x0) || !(y1 > y0) || !std::isfinite(x1 - x0) || !std::isfinite(y1 - y0)) {
    throw ConfigError("domain extents must be positive and finite");
  }
  Grid g;
  g.x0 = x0;
  g.x1 = x1;
  g.y0 = y0;
  g.y1 = y1;
  g.n1 = n1;
  g.n2 = n2;
  g.dx = (x1 - x0) / n1;
  g.dy = (y1 - y0) / n2;
  g.ghost = 2;
  return g;
}

}  // namespace af
