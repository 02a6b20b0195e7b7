#include "giantscope/skorohod.hpp"

#include <algorithm>
#include <stdexcept>

namespace giantscope {

Reflection skorohod(std::span<const double> path) {
  if (path.empty()) throw std::invalid_argument("skorohod: empty path");
  Reflection out;
  out.reflected.resize(path.size());
  out.regulator.resize(path.size());
  double running_min = 0.0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    running_min = std::min(running_min, path[k]);
    out.regulator[k] = -running_min;
    out.reflected[k] = path[k] - running_min;
  }
  return out;
}

ReflectedTrajectory skorohod(const Trajectory& path) {
  if (path.empty()) throw std::invalid_argument("skorohod: empty path");
  Reflection r = skorohod(path.values());
  return {path.with_values(std::move(r.reflected)), path.with_values(std::move(r.regulator))};
}

}  // namespace giantscope
