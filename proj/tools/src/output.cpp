#include "output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <system_error>

#include "giantscope/version.hpp"
#include "run_config.hpp"

namespace giantscope::cli {

namespace fs = std::filesystem;

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

OutputDir::OutputDir(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) {
    throw ValidationError("cannot create output directory " + dir_.string());
  }
  const fs::path probe = dir_ / ".giantscope-probe";
  {
    std::ofstream os(probe);
    if (!os) throw ValidationError("output directory is not writable: " + dir_.string());
  }
  fs::remove(probe, ec);
}

std::ofstream OutputDir::open(const std::string& name) const {
  std::ofstream os(path(name));
  if (!os) throw ValidationError("cannot write " + path(name).string());
  os.precision(std::numeric_limits<double>::max_digits10);
  return os;
}

void write_meta_comment(std::ostream& os, const Meta& meta, const char* prefix) {
  os << prefix << "giantscope " << kVersion << '\n';
  os << prefix << "command " << meta.command << '\n';
  for (const auto& [k, v] : meta.params) os << prefix << k << '=' << v << '\n';
}

nlohmann::json meta_json(const Meta& meta) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : meta.params) params[k] = v;
  return {{"tool", "giantscope"}, {"version", kVersion}, {"command", meta.command},
          {"params", params}};
}

void write_csv(const OutputDir& out, const std::string& name, const Meta& meta,
               const Table& table) {
  auto os = out.open(name);
  write_meta_comment(os, meta);
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    os << (j ? "," : "") << table.header[j];
  }
  os << '\n';
  const std::size_t rows = table.columns.empty() ? 0 : table.columns.front().size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
      os << (j ? "," : "") << format_number(table.columns[j][i]);
    }
    os << '\n';
  }
}

void write_json(const OutputDir& out, const std::string& name, const Meta& meta,
                nlohmann::json body) {
  body["meta"] = meta_json(meta);
  auto os = out.open(name);
  os << body.dump(2) << '\n';
}

namespace {

std::string escape_xml(const std::string& s) {
  std::string r;
  for (char ch : s) {
    switch (ch) {
      case '<': r += "&lt;"; break;
      case '>': r += "&gt;"; break;
      case '&': r += "&amp;"; break;
      case '"': r += "&quot;"; break;
      default: r += ch;
    }
  }
  return r;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

}  // namespace

void write_svg(const OutputDir& out, const std::string& name, const Meta& meta,
               const Plot& plot) {
  constexpr double W = 720, H = 480, L = 70, R = 160, T = 40, B = 55;
  Range xr, yr;
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      xr.add(s.x[i]);
      yr.add(s.y[i]);
    }
  }
  xr.settle();
  yr.settle();
  const auto px = [&](double x) { return L + (x - xr.lo) / (xr.hi - xr.lo) * (W - L - R); };
  const auto py = [&](double y) { return H - B - (y - yr.lo) / (yr.hi - yr.lo) * (H - T - B); };

  auto os = out.open(name);
  os.precision(6);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!--\n";
  write_meta_comment(os, meta, "  ");
  os << "-->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
     << escape_xml(plot.title) << "</text>\n";
  os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\""
     << H - T - B << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = xr.lo + (xr.hi - xr.lo) * k / 5.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * k / 5.0;
    os << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">"
       << format_number(std::round(xv * 1e4) / 1e4) << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
       << format_number(std::round(yv * 1e4) / 1e4) << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
     << escape_xml(plot.xlabel) << "</text>\n";
  os << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << (T + H - B) / 2 << ")\">" << escape_xml(plot.ylabel) << "</text>\n";
  for (const auto& m : plot.markers) {
    if (m.x < xr.lo || m.x > xr.hi) continue;
    os << "<line x1=\"" << px(m.x) << "\" y1=\"" << T << "\" x2=\"" << px(m.x) << "\" y2=\""
       << H - B << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    os << "<text x=\"" << px(m.x) + 3 << "\" y=\"" << T + 12 << "\" fill=\"gray\">"
       << escape_xml(m.label) << "</text>\n";
  }
  for (std::size_t s = 0; s < plot.series.size(); ++s) {
    const auto& series = plot.series[s];
    const char* colour = kPalette[s % std::size(kPalette)];
    std::ostringstream pts;
    pts.precision(6);
    auto flush = [&] {
      if (pts.str().empty()) return;
      os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\""
         << pts.str() << "\"/>\n";
      pts.str("");
    };
    for (std::size_t i = 0; i < series.x.size(); ++i) {
      if (!std::isfinite(series.y[i]) || !std::isfinite(series.x[i])) {
        flush();
        continue;
      }
      pts << px(series.x[i]) << ',' << py(series.y[i]) << ' ';
    }
    flush();
    const double ly = T + 16 + 18 * static_cast<double>(s);
    os << "<line x1=\"" << W - R + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 34 << "\" y2=\""
       << ly << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << W - R + 40 << "\" y=\"" << ly + 4 << "\">" << escape_xml(series.label)
       << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace giantscope::cli
