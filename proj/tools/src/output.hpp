#pragma once

// File emitters for the command-line tool. Every file starts with a metadata
// block (tool version, subcommand, full parameter echo).

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace giantscope::cli {

using ParamEcho = std::vector<std::pair<std::string, std::string>>;

struct Meta {
  std::string command;
  ParamEcho params;
};

/// Shortest round-trip decimal; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double x);

/// Output directory, created and probed for writability on construction.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path dir);
  std::filesystem::path path(const std::string& name) const { return dir_ / name; }
  std::ofstream open(const std::string& name) const;

 private:
  std::filesystem::path dir_;
};

void write_meta_comment(std::ostream& os, const Meta& meta, const char* prefix = "# ");
nlohmann::json meta_json(const Meta& meta);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

void write_csv(const OutputDir& out, const std::string& name, const Meta& meta, const Table& table);
void write_json(const OutputDir& out, const std::string& name, const Meta& meta,
                nlohmann::json body);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Marker {
  double x;
  std::string label;
};

struct Plot {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<Series> series;
  std::vector<Marker> markers;  ///< dashed vertical lines
};

/// Static polyline plot. Non-finite points break the line.
void write_svg(const OutputDir& out, const std::string& name, const Meta& meta, const Plot& plot);

}  // namespace giantscope::cli
