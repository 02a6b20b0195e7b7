#include "run_config.hpp"

#include <cmath>
#include <sstream>

namespace giantscope::cli {

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

std::vector<double> GridSpec::points() const {
  const double span = (hi - lo) / step;
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> xs(count);
  for (std::size_t k = 0; k < count; ++k) xs[k] = lo + step * static_cast<double>(k);
  if (std::fabs(xs.back() - hi) <= 1e-9 * step) xs.back() = hi;
  return xs;
}

std::string GridSpec::str() const {
  return format_number(lo) + ":" + format_number(hi) + ":" + format_number(step);
}

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  std::istringstream is(text);
  char c1 = 0, c2 = 0;
  if (!(is >> g.lo >> c1 >> g.hi >> c2 >> g.step) || c1 != ':' || c2 != ':' || !is.eof()) {
    throw ValidationError("grid must look like lo:hi:step, got '" + text + "'");
  }
  require(std::isfinite(g.lo) && std::isfinite(g.hi) && std::isfinite(g.step),
          "grid bounds must be finite");
  require(g.step > 0.0, "grid step must be positive");
  require(g.hi >= g.lo, "grid needs lo <= hi");
  require((g.hi - g.lo) / g.step < static_cast<double>(kMaxGridPoints), "grid has too many points");
  return g;
}

}  // namespace giantscope::cli
