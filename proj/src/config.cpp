#include "travwave/config.hpp"

#include "travwave/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace travwave {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return s;
}

double parse_factor(const std::string& token, std::string_view whole) {
  const std::string t = lower(trim(token));
  if (t == "pi") return std::numbers::pi;
  double value = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (t.empty() || ec != std::errc() || ptr != last)
    throw ConfigError("cannot parse '" + std::string(whole) + "' as a number");
  return value;
}

long long parse_integer(std::string_view text) {
  const std::string t = trim(text);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError("cannot parse '" + std::string(text) + "' as an integer");
  return value;
}

bool parse_bool(std::string_view text) {
  const std::string t = lower(trim(text));
  if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
  if (t == "false" || t == "no" || t == "off" || t == "0") return false;
  throw ConfigError("cannot parse '" + std::string(text) + "' as a boolean");
}

double nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) throw ConfigError(std::string(what) + " must be nonnegative");
  return v;
}

double positive(double v, const char* what) {
  if (!(v > 0.0)) throw ConfigError(std::string(what) + " must be positive");
  return v;
}

std::size_t positive_size(std::string_view text, const char* what) {
  const long long v = parse_integer(text);
  if (v <= 0) throw ConfigError(std::string(what) + " must be a positive integer");
  return static_cast<std::size_t>(v);
}

int positive_int(std::string_view text, const char* what) {
  const long long v = parse_integer(text);
  if (v <= 0 || v > 1'000'000'000) throw ConfigError(std::string(what) + " must be a positive integer");
  return static_cast<int>(v);
}

int nonnegative_int(std::string_view text, const char* what) {
  const long long v = parse_integer(text);
  if (v < 0 || v > 1'000'000'000) throw ConfigError(std::string(what) + " must be a nonnegative integer");
  return static_cast<int>(v);
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& schema() {
  static const std::map<std::string, Setter> table = {
    {"equation.name", [](RunConfig& c, const std::string& v) { c.equation = v; }},
    {"equation.L", [](RunConfig& c, const std::string& v) { c.length = positive(parse_real(v), "L"); }},
    {"equation.tau", [](RunConfig& c, const std::string& v) { c.tau = parse_real(v); }},
    {"equation.exponent", [](RunConfig& c, const std::string& v) { c.exponent = positive_int(v, "exponent"); }},

    {"discretization.N", [](RunConfig& c, const std::string& v) { c.grid_size = positive_size(v, "N"); }},
    {"discretization.doubling", [](RunConfig& c, const std::string& v) { c.doubling = nonnegative_int(v, "doubling"); }},

    {"boundary.condition", [](RunConfig& c, const std::string& v) { c.boundary = v; }},
    {"boundary.level", [](RunConfig& c, const std::string& v) { c.level = parse_real(v); }},

    {"navigation.step", [](RunConfig& c, const std::string& v) { c.navigation.step = positive(parse_real(v), "step"); }},
    {"navigation.n_iter", [](RunConfig& c, const std::string& v) { c.n_iter = positive_int(v, "n_iter"); }},
    {"navigation.max_halvings",
     [](RunConfig& c, const std::string& v) { c.navigation.max_halvings = nonnegative_int(v, "max_halvings"); }},
    {"navigation.easy_iters", [](RunConfig& c, const std::string& v) { c.navigation.easy_iters = positive_int(v, "easy_iters"); }},
    {"navigation.easy_streak",
     [](RunConfig& c, const std::string& v) { c.navigation.easy_streak = positive_int(v, "easy_streak"); }},
    {"navigation.a0", [](RunConfig& c, const std::string& v) { c.navigation.initial_height = positive(parse_real(v), "a0"); }},
    {"navigation.max_height", [](RunConfig& c, const std::string& v) { c.max_height = positive(parse_real(v), "max_height"); }},
    {"navigation.guess", [](RunConfig& c, const std::string& v) { c.navigation.guess = parse_guess(v); }},
    {"navigation.stop_on_crest_split",
     [](RunConfig& c, const std::string& v) { c.navigation.stop_on_crest_split = parse_bool(v); }},

    {"newton.newton_tol", [](RunConfig& c, const std::string& v) { c.navigation.newton.tol = positive(parse_real(v), "newton_tol"); }},
    {"newton.newton_max_iters",
     [](RunConfig& c, const std::string& v) { c.navigation.newton.max_iters = positive_int(v, "newton_max_iters"); }},

    {"newton.min_rcond", [](RunConfig& c, const std::string& v) { c.navigation.newton.min_rcond = positive(parse_real(v), "min_rcond"); }},

    {"evolution.profile", [](RunConfig& c, const std::string& v) { c.profile = v; }},
    {"evolution.profile2", [](RunConfig& c, const std::string& v) { c.profile2 = v; }},
    {"evolution.separation", [](RunConfig& c, const std::string& v) { c.separation = positive(parse_real(v), "separation"); }},
    {"evolution.M", [](RunConfig& c, const std::string& v) { c.evolution_size = positive_size(v, "M"); }},
    {"evolution.dt", [](RunConfig& c, const std::string& v) { c.evolution.dt = positive(parse_real(v), "dt"); }},
    {"evolution.t_end", [](RunConfig& c, const std::string& v) { c.evolution.t_end = positive(parse_real(v), "t_end"); }},
    {"evolution.cfl", [](RunConfig& c, const std::string& v) { c.evolution.cfl = nonnegative(parse_real(v), "cfl"); }},
    {"evolution.dealias", [](RunConfig& c, const std::string& v) { c.evolution.dealias = parse_bool(v); }},
    {"evolution.snapshot_stride",
     [](RunConfig& c, const std::string& v) { c.evolution.snapshot_stride = positive_int(v, "snapshot_stride"); }},

    {"convergence.a", [](RunConfig& c, const std::string& v) { c.exact_height = positive(parse_real(v), "a"); }},
    {"convergence.base_N", [](RunConfig& c, const std::string& v) { c.convergence_base = positive_size(v, "base_N"); }},
    {"convergence.n_list",
     [](RunConfig& c, const std::string& v) {
       std::vector<std::size_t> sizes;
       std::stringstream ss(v);
       std::string item;
       while (std::getline(ss, item, ',')) sizes.push_back(positive_size(item, "n_list entry"));
       if (sizes.empty()) throw ConfigError("n_list must not be empty");
       c.convergence_sizes = std::move(sizes);
     }},

    {"input.branch_dir", [](RunConfig& c, const std::string& v) { c.branch_dir = v; }},
    {"input.fits", [](RunConfig& c, const std::string& v) { c.fits = parse_bool(v); }},

    {"output.dir", [](RunConfig& c, const std::string& v) { c.output_dir = v; }},
  };
  return table;
}

bool known_section(const std::string& section) {
  const std::string prefix = section + ".";
  const auto& table = schema();
  auto it = table.lower_bound(prefix);
  return it != table.end() && it->first.compare(0, prefix.size(), prefix) == 0;
}

void assign(RunConfig& cfg, const std::string& qualified, const std::string& value, const std::string& where) {
  const auto& table = schema();
  auto it = table.find(qualified);
  if (it == table.end()) throw ConfigError(where + "unknown key '" + qualified + "'");
  try {
    it->second(cfg, value);
  } catch (const ConfigError& e) {
    throw ConfigError(where + "key '" + qualified + "': " + e.what());
  }
}

} // namespace

double parse_real(std::string_view text) {
  // Product/quotient chain: a*b/c with a, b, c numbers or pi.
  const std::string s = trim(text);
  if (s.empty()) throw ConfigError("empty number");
  double value = 1.0;
  char op = '*';
  std::string token;
  auto apply = [&] {
    const double f = parse_factor(token, s);
    if (op == '*') value *= f;
    else if (f == 0.0) throw ConfigError("division by zero in '" + s + "'");
    else value /= f;
    token.clear();
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = s[i];
    // Exponent signs such as 1e-3 belong to the token.
    if (ch == '*' || ch == '/') {
      apply();
      op = ch;
    } else {
      token.push_back(ch);
    }
  }
  apply();
  return value;
}

GuessKind parse_guess(std::string_view text) {
  std::string t = lower(trim(text));
  if (t.rfind("stokes:", 0) == 0) t = t.substr(7);
  if (t == "first" || t == "first_order" || t == "first-order") return GuessKind::first_order;
  if (t == "corrected") return GuessKind::corrected;
  throw ConfigError("unknown guess '" + std::string(text) + "' (expected stokes:first or stokes:corrected)");
}

Equation RunConfig::make_equation() const {
  try {
    return Equation::from_name(equation, length, {tau, exponent});
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("key 'equation.name': ") + e.what());
  }
}

BoundaryCondition RunConfig::make_boundary() const {
  try {
    return BoundaryCondition::from_name(boundary, level);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("key 'boundary.condition': ") + e.what());
  }
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  RunConfig cfg = std::move(base);
  std::string section;
  std::size_t line_no = 0;
  std::stringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    std::string line = raw;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "malformed section header '" + line + "'");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!known_section(section)) throw ConfigError(where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value', got '" + line + "'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "missing key");
    if (section.empty()) throw ConfigError(where + "key '" + key + "' outside of any section");
    assign(cfg, section + "." + key, value, where);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void apply_override(RunConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  const std::string where = "--set: ";
  if (key.find('.') != std::string::npos) {
    assign(cfg, key, value, where);
    return;
  }
  // Bare keys must be unique across sections.
  std::string match;
  for (const auto& [qualified, setter] : schema()) {
    const auto dot = qualified.find('.');
    if (qualified.compare(dot + 1, std::string::npos, key) != 0) continue;
    if (!match.empty()) throw ConfigError(where + "ambiguous key '" + key + "'; qualify it with a section");
    match = qualified;
  }
  if (match.empty()) throw ConfigError(where + "unknown key '" + key + "'");
  assign(cfg, match, value, where);
}

} // namespace travwave
