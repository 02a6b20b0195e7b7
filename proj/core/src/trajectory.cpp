#include "giantscope/trajectory.hpp"

#include <cmath>

#include "giantscope/numerics.hpp"

namespace giantscope {

Trajectory::Trajectory(double t0, double t1, std::vector<double> values)
    : t0_(t0), t1_(t1), values_(std::move(values)) {
  if (values_.size() < 2) {
    throw std::invalid_argument("Trajectory: need at least two grid points");
  }
  if (!(t1_ > t0_)) throw std::invalid_argument("Trajectory: grid must be increasing");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Trajectory: non-finite value");
  }
}

double Trajectory::integral() const noexcept {
  numerics::CompensatedSum sum;
  for (std::size_t k = 0; k + 1 < values_.size(); ++k) sum += values_[k] + values_[k + 1];
  return 0.5 * step() * sum.value();
}

}  // namespace giantscope
