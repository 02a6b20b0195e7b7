#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace giantscope {

/// A real path sampled on the uniform grid t0 = s_0 < s_1 < ... < s_N = t1.
/// Values are stored at the N+1 grid points; the derivative on cell k is the
/// forward difference (values[k+1] - values[k]) / step().
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(double t0, double t1, std::vector<double> values);

  /// Samples f on N cells of [t0, t1].
  template <class F>
  static Trajectory sample(double t0, double t1, std::size_t cells, F&& f) {
    if (cells == 0) throw std::invalid_argument("Trajectory: need at least one cell");
    std::vector<double> v(cells + 1);
    const double h = (t1 - t0) / static_cast<double>(cells);
    for (std::size_t k = 0; k <= cells; ++k) {
      v[k] = f(k == cells ? t1 : t0 + h * static_cast<double>(k));
    }
    return Trajectory(t0, t1, std::move(v));
  }

  double t0() const noexcept { return t0_; }
  double t1() const noexcept { return t1_; }
  std::size_t cells() const noexcept { return values_.empty() ? 0 : values_.size() - 1; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double step() const noexcept { return (t1_ - t0_) / static_cast<double>(cells()); }
  double time(std::size_t k) const noexcept {
    return k == cells() ? t1_ : t0_ + step() * static_cast<double>(k);
  }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  double slope(std::size_t cell) const noexcept {
    return (values_[cell + 1] - values_[cell]) / step();
  }
  std::span<const double> values() const noexcept { return values_; }

  /// Same grid, new values.
  Trajectory with_values(std::vector<double> values) const {
    return Trajectory(t0_, t1_, std::move(values));
  }

  /// Trapezoidal integral of the piecewise-linear interpolant.
  double integral() const noexcept;

 private:
  double t0_ = 0.0;
  double t1_ = 0.0;
  std::vector<double> values_;
};

}  // namespace giantscope
