#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "output.hpp"

namespace giantscope::cli {

/// Bad parameters or output location; exit status 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical self-check disagreed; exit status 1.
class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inclusive arithmetic grid lo, lo + step, ..., hi.
struct GridSpec {
  double lo = 0.0;
  double hi = 1.0;
  double step = 0.001;

  std::vector<double> points() const;
  std::string str() const;
};

/// Parses "lo:hi:step". Throws ValidationError.
GridSpec parse_grid(const std::string& text);

inline constexpr std::size_t kMaxGridPoints = 10'000'000;

/// Everything a subcommand may read. Options a subcommand does not declare
/// keep their defaults and are rejected at parse time if given.
struct RunConfig {
  std::string command;

  std::optional<std::int64_t> n;
  std::optional<double> c;
  std::vector<double> c_list;
  std::optional<double> p;
  std::optional<double> theta;
  std::optional<double> a;
  std::optional<double> tau;
  std::optional<double> s;
  std::optional<double> t;
  std::optional<double> w;
  std::vector<double> u;
  std::vector<double> r;
  std::string grid;
  std::string regions;
  std::uint64_t reps = 1000;
  std::uint64_t seed = 1;
  std::string out = ".";
  bool svg = false;
  bool seedless = false;
  bool rows = false;
  bool trace = false;
  std::optional<double> tol;
  std::string fn;
  std::string method = "explore";
  std::string compare;
  std::optional<double> dt;
  std::optional<double> horizon;
  std::size_t cells = 100000;
  std::size_t points = 1001;

  ParamEcho echo;

  Meta meta() const { return {command, echo}; }
};

void require(bool ok, const std::string& message);

}  // namespace giantscope::cli
