#pragma once

#include <span>
#include <vector>

#include "giantscope/trajectory.hpp"

namespace giantscope {

/// One-dimensional Skorohod reflection at zero on a grid:
///   reflected_k = x_k - min(0, min_{j<=k} x_j),  regulator_k = -min(0, min_{j<=k} x_j).
struct Reflection {
  std::vector<double> reflected;
  std::vector<double> regulator;
};

/// Throws std::invalid_argument on an empty path.
Reflection skorohod(std::span<const double> path);

struct ReflectedTrajectory {
  Trajectory reflected;
  Trajectory regulator;
};

ReflectedTrajectory skorohod(const Trajectory& path);

}  // namespace giantscope
