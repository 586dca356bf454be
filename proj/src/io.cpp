#include "travwave/io.hpp"

#include "travwave/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace travwave::io {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(line);
  while (std::getline(ss, item, sep)) {
    if (!item.empty() && item.back() == '\r') item.pop_back();
    out.push_back(item);
  }
  return out;
}

double to_double(const std::string& s, const fs::path& path, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw IoError(path.string() + ":" + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

std::string profile_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "point_%05zu.csv", index);
  return buf;
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json fit_json(const FitReport& f) {
  return {
    {"nu1", number(f.nu1)}, {"nu2", number(f.nu2)}, {"n", number(f.n)},
    {"mu1", number(f.mu1)}, {"mu2", number(f.mu2)}, {"mu3", number(f.mu3)}, {"m", number(f.m)},
    {"residual_l2_exp", number(f.residual_l2_exp)}, {"residual_l2_poly", number(f.residual_l2_poly)},
    {"aic_exp", number(f.aic_exp)}, {"aic_poly", number(f.aic_poly)},
    {"observations", f.observations},
    {"winner", f.winner == FitReport::Model::exponential ? "exponential" : "polynomial"},
  };
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// One axes box with a polyline, placed at (ox, oy).
void panel(std::ostringstream& svg, double ox, double oy, const std::vector<double>& x, const std::vector<double>& y,
           const std::string& xlabel, const std::string& ylabel) {
  const double w = 400.0, h = 300.0, pad = 50.0;
  const double pw = w - 2.0 * pad, ph = h - 2.0 * pad;
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  if (!x.empty()) {
    auto [xa, xb] = std::minmax_element(x.begin(), x.end());
    auto [ya, yb] = std::minmax_element(y.begin(), y.end());
    x0 = *xa; x1 = *xb; y0 = *ya; y1 = *yb;
  }
  if (x1 - x0 <= 0.0) { x0 -= 0.5; x1 += 0.5; }
  if (y1 - y0 <= 0.0) { y0 -= 0.5; y1 += 0.5; }
  auto px = [&](double v) { return ox + pad + (v - x0) / (x1 - x0) * pw; };
  auto py = [&](double v) { return oy + pad + ph - (v - y0) / (y1 - y0) * ph; };

  svg << "<rect x=\"" << fixed(ox + pad) << "\" y=\"" << fixed(oy + pad) << "\" width=\"" << fixed(pw) << "\" height=\""
      << fixed(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << fixed(ox + pad) << "\" y=\"" << fixed(oy + h - 15) << "\" font-size=\"11\">" << fmt(x0) << "</text>\n";
  svg << "<text x=\"" << fixed(ox + w - pad) << "\" y=\"" << fixed(oy + h - 15)
      << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(x1) << "</text>\n";
  svg << "<text x=\"" << fixed(ox + w / 2) << "\" y=\"" << fixed(oy + h - 15) << "\" font-size=\"12\" text-anchor=\"middle\">"
      << xlabel << "</text>\n";
  svg << "<text x=\"" << fixed(ox + pad - 4) << "\" y=\"" << fixed(oy + pad + ph)
      << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(y0) << "</text>\n";
  svg << "<text x=\"" << fixed(ox + pad - 4) << "\" y=\"" << fixed(oy + pad + 10)
      << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(y1) << "</text>\n";
  svg << "<text x=\"" << fixed(ox + w / 2) << "\" y=\"" << fixed(oy + pad - 10) << "\" font-size=\"12\" text-anchor=\"middle\">"
      << ylabel << "</text>\n";
  svg << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < x.size(); ++i) svg << (i ? " " : "") << fixed(px(x[i])) << "," << fixed(py(y[i]));
  svg << "\"/>\n";
}

} // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) ensure_directory(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_profile(const fs::path& path, const Wave& wave) {
  std::ostringstream out;
  out << "x,phi\n";
  const auto x = wave.grid().nodes();
  const auto phi = wave.samples();
  for (std::size_t i = 0; i < phi.size(); ++i) out << format_double(x[i]) << ',' << format_double(phi[i]) << '\n';
  write_text(path, out.str());
}

Wave read_profile(const fs::path& path, double length) {
  std::stringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line) || split(line) != std::vector<std::string>{"x", "phi"})
    throw IoError(path.string() + ": expected header 'x,phi'");
  std::vector<double> x, phi;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line);
    if (cells.size() != 2) throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected 2 columns");
    x.push_back(to_double(cells[0], path, line_no));
    phi.push_back(to_double(cells[1], path, line_no));
  }
  if (phi.empty()) throw IoError(path.string() + ": no samples");
  Grid grid(length, phi.size());
  const auto nodes = grid.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (std::abs(nodes[i] - x[i]) > 1e-9 * length)
      throw IoError(path.string() + ": abscissae do not match a " + std::to_string(phi.size()) + "-point grid of period " +
                    format_double(length));
  }
  return {grid, std::move(phi)};
}

void write_branch(const fs::path& dir, const Branch& branch) {
  ensure_directory(dir / "profiles");
  std::ostringstream out;
  out << "index,c,a,B,theta,l2_norm,residual_norm,newton_iters,grid_N\n";
  for (std::size_t i = 0; i < branch.points.size(); ++i) {
    const auto& p = branch.points[i];
    out << i << ',' << format_double(p.speed) << ',' << format_double(p.height) << ',' << format_double(p.b) << ','
        << format_double(p.theta) << ',' << format_double(l2_norm(p.wave)) << ',' << format_double(p.residual_norm) << ','
        << p.newton_iters << ',' << p.wave.size() << '\n';
    write_profile(dir / "profiles" / profile_name(i), p.wave);
  }
  write_text(dir / "branch.csv", out.str());
}

Branch read_branch(const fs::path& dir, const Equation& equation, const BoundaryCondition& bc) {
  const fs::path path = dir / "branch.csv";
  std::stringstream in(read_text(path));
  std::string line;
  const std::vector<std::string> header{"index", "c", "a", "B", "theta", "l2_norm", "residual_norm", "newton_iters", "grid_N"};
  if (!std::getline(in, line) || split(line) != header) throw IoError(path.string() + ": unexpected header");
  Branch branch;
  branch.equation = equation.name();
  branch.bc = bc;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected 9 columns");
    const auto index = static_cast<std::size_t>(to_double(cells[0], path, line_no));
    if (index != branch.points.size()) throw IoError(path.string() + ":" + std::to_string(line_no) + ": index out of order");
    Wave wave = read_profile(dir / "profiles" / profile_name(index), equation.length());
    const auto grid_n = static_cast<std::size_t>(to_double(cells[8], path, line_no));
    if (wave.size() != grid_n) throw IoError(path.string() + ":" + std::to_string(line_no) + ": grid_N disagrees with profile");
    SolutionPoint p{std::move(wave)};
    p.speed = to_double(cells[1], path, line_no);
    p.height = to_double(cells[2], path, line_no);
    p.b = to_double(cells[3], path, line_no);
    p.theta = to_double(cells[4], path, line_no);
    p.residual_norm = to_double(cells[6], path, line_no);
    p.newton_iters = static_cast<int>(to_double(cells[7], path, line_no));
    branch.grid_size = grid_n;
    branch.points.push_back(std::move(p));
    branch.steps.push_back(0.0);
  }
  if (branch.points.empty()) throw IoError(path.string() + ": branch has no points");
  return branch;
}

std::string branch_report_json(const Branch& branch, const BranchReport& report) {
  json doc;
  doc["equation"] = branch.equation;
  doc["boundary"] = branch.bc.name();
  doc["grid_N"] = branch.grid_size;
  json points = json::array();
  for (std::size_t i = 0; i < branch.points.size(); ++i) {
    const auto& p = branch.points[i];
    json item = {
      {"index", i}, {"c", number(p.speed)}, {"a", number(p.height)}, {"B", number(p.b)},
      {"l2", number(report.l2[i])}, {"V", number(report.functionals[i].v)}, {"E", number(report.functionals[i].e)},
      {"d", number(report.functionals[i].d)}, {"crests", report.crests[i]},
      {"interpolant_crests", report.interpolant_crests[i]}, {"cusp_ratio", number(report.cusp_ratios[i])},
    };
    item["fit"] = report.fits[i] ? fit_json(*report.fits[i]) : json(nullptr);
    if (report.stability) {
      item["d2"] = number(report.stability->d2[i]);
      item["stability_sign"] = report.stability->sign[i];
    }
    points.push_back(std::move(item));
  }
  doc["points"] = std::move(points);
  doc["turning_index"] = report.turning_index;
  doc["turning_interior"] = report.turning_interior;
  doc["max_l2_index"] = report.max_l2_index;
  doc["terminal_index"] = report.terminal_index;
  doc["terminal_cusp_ratio"] = number(report.terminal_cusp_ratio);
  doc["first_split_index"] = report.first_split_index ? json(*report.first_split_index) : json(nullptr);
  doc["stability_inversion_index"] = report.stability ? json(report.stability->inversion_index) : json(nullptr);
  json dprime = json::array();
  for (const auto& e : report.dprime) {
    dprime.push_back({{"index", e.index}, {"skipped", e.skipped}, {"dprime", number(e.dprime)}, {"V", number(e.v)},
                      {"mismatch", number(e.mismatch)}});
  }
  doc["dprime_check"] = std::move(dprime);
  return doc.dump(2) + "\n";
}

std::string summary_csv(const Branch& branch, const BranchReport& report) {
  std::ostringstream out;
  out << "index,c,a,l2,V,E,d,stability_sign,crests,cusp_ratio,decay_winner\n";
  for (std::size_t i = 0; i < branch.points.size(); ++i) {
    const auto& p = branch.points[i];
    const auto& f = report.functionals[i];
    const int sign = report.stability ? report.stability->sign[i] : 0;
    std::string winner;
    if (report.fits[i]) winner = report.fits[i]->winner == FitReport::Model::exponential ? "exponential" : "polynomial";
    out << i << ',' << format_double(p.speed) << ',' << format_double(p.height) << ',' << format_double(report.l2[i]) << ','
        << format_double(f.v) << ',' << format_double(f.e) << ',' << format_double(f.d) << ',' << sign << ','
        << report.crests[i] << ',' << format_double(report.cusp_ratios[i]) << ',' << winner << '\n';
  }
  return out.str();
}

std::string branch_svg(const Branch& branch, const BranchReport& report) {
  std::vector<double> c, a;
  for (const auto& p : branch.points) {
    c.push_back(p.speed);
    a.push_back(p.height);
  }
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"300\" font-family=\"sans-serif\">\n";
  svg << "<rect width=\"800\" height=\"300\" fill=\"white\"/>\n";
  panel(svg, 0.0, 0.0, c, a, "c", "waveheight a");
  panel(svg, 400.0, 0.0, c, report.l2, "c", "L2 norm");
  svg << "</svg>\n";
  return svg.str();
}

void write_trajectory(const fs::path& dir, const Trajectory& trajectory) {
  ensure_directory(dir / "snapshots");
  std::ostringstream index;
  index << "t,file,mass,momentum,max_u\n";
  for (std::size_t s = 0; s < trajectory.size(); ++s) {
    const auto& snap = trajectory[s];
    char name[32];
    std::snprintf(name, sizeof name, "snap_%05zu.csv", s);
    std::ostringstream out;
    out << "x,u\n";
    const auto x = snap.field.nodes();
    const auto u = snap.field.samples();
    for (std::size_t i = 0; i < u.size(); ++i) out << format_double(x[i]) << ',' << format_double(u[i]) << '\n';
    write_text(dir / "snapshots" / name, out.str());
    const auto inv = conserved(snap.field);
    index << format_double(snap.t) << ",snapshots/" << name << ',' << format_double(inv.mass) << ','
          << format_double(inv.momentum) << ',' << format_double(snap.field.max_abs()) << '\n';
  }
  write_text(dir / "index.csv", index.str());
}

} // namespace travwave::io
