#include "kgs/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "kgs/config.hpp"

namespace kgs {

using nlohmann::json;

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& s, std::size_t line) {
  if (s == "nan") return std::nan("");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw Error("csv line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

std::string format_csv(const std::vector<ErrorRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows) {
    out += r.scheme + "," + num(r.c) + "," + num(r.tau) + "," + num(r.err_u) + "," + num(r.err_psi) + "," +
           num(r.runtime_ms) + "," + (r.diverged ? "1" : "0") + "\n";
  }
  return out;
}

std::vector<ErrorRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw Error("csv: missing or unexpected header");
  std::vector<ErrorRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) throw Error("csv line " + std::to_string(lineno) + ": expected 7 columns");
    ErrorRow r;
    r.scheme = cells[0];
    r.c = parse_double(cells[1], lineno);
    r.tau = parse_double(cells[2], lineno);
    r.err_u = parse_double(cells[3], lineno);
    r.err_psi = parse_double(cells[4], lineno);
    r.runtime_ms = parse_double(cells[5], lineno);
    if (cells[6] != "0" && cells[6] != "1") throw Error("csv line " + std::to_string(lineno) + ": bad diverged flag");
    r.diverged = cells[6] == "1";
    rows.push_back(r);
  }
  return rows;
}

void emit_csv(const ConvergenceReport& report, const std::filesystem::path& path) {
  write_file_atomic(path, format_csv(report.rows));
}

std::vector<ErrorRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

std::string format_svg(const ConvergenceReport& report) {
  constexpr double width = 720, height = 480, left = 80, right = 160, top = 30, bottom = 60;
  const double pw = width - left - right, ph = height - top - bottom;

  std::vector<double> cs = report.config.c_list;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& r : report.rows) {
    const double x = std::log10(r.tau);
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    if (!r.diverged && r.err_sum() > 0 && std::isfinite(r.err_sum())) {
      const double y = std::log10(r.err_sum());
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmin > xmax) xmin = -3, xmax = 0;
  if (ymin > ymax) ymin = -10, ymax = 0;
  if (xmax - xmin < 1e-12) xmin -= 0.5, xmax += 0.5;
  if (ymax - ymin < 1e-12) ymin -= 0.5, ymax += 0.5;
  ymin = std::floor(ymin);
  ymax = std::ceil(ymax);
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  s << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int e = static_cast<int>(ymin); e <= static_cast<int>(ymax); ++e) {
    s << "<text x=\"" << left - 8 << "\" y=\"" << py(e) + 4 << "\" font-size=\"11\" text-anchor=\"end\">1e" << e
      << "</text>\n";
  }
  for (const auto& r : report.rows) {
    if (r.c != cs.front()) continue;
    s << "<text x=\"" << px(std::log10(r.tau)) << "\" y=\"" << top + ph + 16
      << "\" font-size=\"10\" text-anchor=\"middle\">" << num(r.tau) << "</text>\n";
  }
  s << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15 << "\" font-size=\"12\" text-anchor=\"middle\">tau</text>\n";
  s << "<text x=\"20\" y=\"" << top + ph / 2 << "\" font-size=\"12\" transform=\"rotate(-90 20 " << top + ph / 2
    << ")\" text-anchor=\"middle\">H^" << num(report.config.norm_r) << " error (u + psi)</text>\n";

  // guide lines through the centre of the plot
  const double xc = 0.5 * (xmin + xmax), yc = 0.5 * (ymin + ymax);
  for (int order : {1, 2}) {
    const double x0 = xmin, x1 = xmax;
    const double y0 = yc + order * (x0 - xc), y1 = yc + order * (x1 - xc);
    s << "<line class=\"guide\" data-order=\"" << order << "\" x1=\"" << px(x0) << "\" y1=\"" << py(y0) << "\" x2=\""
      << px(x1) << "\" y2=\"" << py(y1) << "\" stroke=\"gray\" stroke-dasharray=\"" << (order == 1 ? "6,4" : "2,3")
      << "\" clip-path=\"url(#plot)\"/>\n";
  }
  s << "<clipPath id=\"plot\"><rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
    << "\"/></clipPath>\n";

  for (std::size_t i = 0; i < cs.size(); ++i) {
    const char* color = colors[i % (sizeof colors / sizeof *colors)];
    std::ostringstream pts;
    pts.setf(std::ios::fixed);
    pts.precision(2);
    for (const auto& r : report.rows) {
      if (r.c != cs[i] || r.diverged || !(r.err_sum() > 0)) continue;
      pts << px(std::log10(r.tau)) << "," << py(std::log10(r.err_sum())) << " ";
    }
    s << "<polyline class=\"series\" data-c=\"" << num(cs[i]) << "\" points=\"" << pts.str()
      << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    s << "<text x=\"" << left + pw + 12 << "\" y=\"" << top + 16 + 16 * i << "\" font-size=\"12\" fill=\"" << color
      << "\">c = " << num(cs[i]) << "</text>\n";
  }
  s << "<text x=\"" << left + pw + 12 << "\" y=\"" << top + 24 + 16 * cs.size()
    << "\" font-size=\"11\" fill=\"gray\">dashed: slope 1, 2</text>\n";
  s << "</svg>\n";
  return s.str();
}

void emit_svg(const ConvergenceReport& report, const std::filesystem::path& path) {
  write_file_atomic(path, format_svg(report));
}

std::string report_json(const ConvergenceReport& report) {
  json j;
  j["kind"] = "convergence";
  j["build_id"] = report.build_id;
  j["config"] = json::parse(config_json(report.config));
  j["reference"] = report.reference_description;
  j["grid"] = report.config.grid()->describe();
  j["rows"] = json::array();
  for (const auto& r : report.rows) {
    j["rows"].push_back({{"scheme", r.scheme}, {"c", r.c}, {"tau", r.tau}, {"err_u", number_or_null(r.err_u)},
                         {"err_psi", number_or_null(r.err_psi)}, {"err_sum", number_or_null(r.err_sum())},
                         {"runtime_ms", r.runtime_ms}, {"diverged", r.diverged}});
  }
  j["fits"] = json::array();
  for (const auto& f : report.fits)
    j["fits"].push_back({{"c", f.c}, {"slope", number_or_null(f.slope)}, {"intercept", number_or_null(f.intercept)},
                         {"points", f.points}});
  j["references"] = json::array();
  for (const auto& r : report.references) {
    json e{{"c", r.c}, {"tau_ref", r.tau_ref}, {"floor", r.floor}};
    e["certification"] = r.certification ? json(*r.certification) : json(nullptr);
    j["references"].push_back(e);
  }
  return j.dump(2) + "\n";
}

std::string report_json(const ConsistencyReport& report) {
  json j;
  j["kind"] = "consistency";
  j["build_id"] = report.build_id;
  j["config"] = json::parse(config_json(report.config));
  j["rows"] = json::array();
  for (const auto& r : report.rows)
    j["rows"].push_back({{"scheme", r.scheme}, {"c", r.c}, {"tau", r.tau}, {"dev_u", r.dev_u}, {"dev_psi", r.dev_psi}});
  j["fits"] = json::array();
  for (const auto& f : report.fits)
    j["fits"].push_back({{"scheme", f.scheme}, {"component", f.component}, {"slope", number_or_null(f.slope)}});
  j["h4_ratio"] = report.h4_ratio;
  return j.dump(2) + "\n";
}

std::string report_json(const OracleReport& report) {
  json j;
  j["kind"] = "oracle-check";
  j["build_id"] = report.build_id;
  j["config"] = json::parse(config_json(report.config));
  j["gates"] = json::array();
  for (const auto& g : report.gates) {
    json errs = json::array();
    for (double e : g.errors) errs.push_back(number_or_null(e));
    j["gates"].push_back({{"gate", g.gate}, {"c", g.c}, {"slope", number_or_null(g.slope)}, {"lo", g.lo},
                          {"hi", g.hi}, {"pass", g.pass()}, {"errors", errs}});
  }
  j["all_pass"] = report.all_pass();
  return j.dump(2) + "\n";
}

std::string format_consistency_csv(const ConsistencyReport& report) {
  std::string out = "scheme,c,tau,dev_u,dev_psi\n";
  for (const auto& r : report.rows)
    out += r.scheme + "," + num(r.c) + "," + num(r.tau) + "," + num(r.dev_u) + "," + num(r.dev_psi) + "\n";
  return out;
}

std::string format_oracle_csv(const OracleReport& report) {
  std::string out = "gate,c,slope,lo,hi,pass\n";
  for (const auto& g : report.gates)
    out += g.gate + "," + num(g.c) + "," + num(g.slope) + "," + num(g.lo) + "," + num(g.hi) + "," +
           (g.pass() ? "1" : "0") + "\n";
  return out;
}

}  // namespace kgs
