#include "heatctl/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "heatctl/catalog.hpp"
#include "heatctl/errors.hpp"

namespace heatctl {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::string unquote(std::string_view v, std::string_view key) {
  v = trim(v);
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return std::string(v.substr(1, v.size() - 2));
  if (v.find('"') != std::string_view::npos) {
    throw ValidationError("malformed string for key '" + std::string(key) + "'");
  }
  return std::string(v);
}

double to_double(std::string_view v, std::string_view key) {
  const std::string s = unquote(v, key);
  double out = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(out)) {
    throw ValidationError("key '" + std::string(key) + "' expects a number, got '" + s + "'");
  }
  return out;
}

std::uint64_t to_unsigned(std::string_view v, std::string_view key) {
  const std::string s = unquote(v, key);
  std::uint64_t out = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ValidationError("key '" + std::string(key) + "' expects a non-negative integer, got '" +
                          s + "'");
  }
  return out;
}

std::vector<std::string> to_list(std::string_view v, std::string_view key) {
  v = trim(v);
  std::vector<std::string> items;
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') throw ValidationError("unterminated list for key '" + std::string(key) + "'");
    v = v.substr(1, v.size() - 2);
    while (!trim(v).empty()) {
      const auto comma = v.find(',');
      items.push_back(unquote(v.substr(0, comma), key));
      if (comma == std::string_view::npos) break;
      v = v.substr(comma + 1);
    }
  } else {
    // Also accept a comma-separated string: "left,bottom".
    std::string s = unquote(v, key);
    std::string_view rest = s;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      items.emplace_back(trim(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  return items;
}

}  // namespace

std::vector<double> default_alpha_schedule() {
  return {1.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6};
}

std::vector<double> parse_alpha_schedule(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos || text.size() <= c2 + 1 || text[c2 + 1] != 'x') {
    throw ValidationError("alpha schedule must look like start:end:xfactor, got '" +
                          std::string(text) + "'");
  }
  const double start = to_double(text.substr(0, c1), "alphas");
  const double end = to_double(text.substr(c1 + 1, c2 - c1 - 1), "alphas");
  const double factor = to_double(text.substr(c2 + 2), "alphas");
  if (!(start > 0.0) || !(end >= start) || !(factor > 1.0)) {
    throw ValidationError("alpha schedule needs 0 < start <= end and factor > 1");
  }
  std::vector<double> out;
  // Multiply an integer power so 1:1e6:x10 lands exactly on powers of ten.
  for (int k = 0;; ++k) {
    const double a = start * std::pow(factor, k);
    if (a > end * (1.0 + 1e-12)) break;
    out.push_back(a);
  }
  return out;
}

ProblemSpec ExperimentConfig::problem_spec(Index default_n) const {
  ProblemSpec s;
  s.n = n.value_or(default_n);
  s.gamma1_sides = gamma1_sides;
  s.bc = bc;
  s.alpha = alpha;
  s.M1 = M1;
  s.M2 = M2;
  s.b = make_scalar_field(b);
  if (z_d == "u00") {
    s.target_is_uncontrolled_state = true;
  } else {
    s.z_d = make_scalar_field(z_d);
  }
  s.pde_tol = pde_tol;
  s.ocp_tol = ocp_tol;
  s.validate();
  return s;
}

std::vector<double> ExperimentConfig::alpha_schedule() const {
  return alphas.empty() ? default_alpha_schedule() : alphas;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(strip_comment(raw));
    if (line.empty() || line.front() == '[') continue;  // blank, comment or table header
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    try {
      if (key == "n") {
        cfg.n = static_cast<Index>(to_unsigned(value, key));
      } else if (key == "gamma1_sides") {
        cfg.gamma1_sides.clear();
        for (const auto& name : to_list(value, key)) {
          const auto side = parse_side(name);
          if (!side) throw ValidationError("unknown side '" + name + "'");
          cfg.gamma1_sides.push_back(*side);
        }
      } else if (key == "bc") {
        const std::string v = unquote(value, key);
        if (v == "dirichlet") {
          cfg.bc = BcKind::Dirichlet;
        } else if (v == "robin") {
          cfg.bc = BcKind::Robin;
        } else {
          throw ValidationError("bc must be \"dirichlet\" or \"robin\"");
        }
      } else if (key == "alpha") {
        cfg.alpha = to_double(value, key);
      } else if (key == "M1") {
        cfg.M1 = to_double(value, key);
      } else if (key == "M2") {
        cfg.M2 = to_double(value, key);
      } else if (key == "b") {
        cfg.b = unquote(value, key);
        make_scalar_field(cfg.b);
      } else if (key == "z_d") {
        cfg.z_d = unquote(value, key);
        if (cfg.z_d != "u00") make_scalar_field(cfg.z_d);
      } else if (key == "g") {
        cfg.g = unquote(value, key);
        make_scalar_field(cfg.g);
      } else if (key == "q") {
        cfg.q = unquote(value, key);
        make_boundary_field(cfg.q);
      } else if (key == "pde_tol") {
        cfg.pde_tol = to_double(value, key);
      } else if (key == "ocp_tol") {
        cfg.ocp_tol = to_double(value, key);
      } else if (key == "mode") {
        const std::string v = unquote(value, key);
        if (v == "fixed") {
          cfg.mode = SweepMode::FixedControl;
        } else if (v == "optimal") {
          cfg.mode = SweepMode::OptimalControl;
        } else {
          throw ValidationError("mode must be \"fixed\" or \"optimal\"");
        }
      } else if (key == "alphas") {
        cfg.alphas = parse_alpha_schedule(unquote(value, key));
      } else if (key == "seed") {
        cfg.seed = to_unsigned(value, key);
      } else if (key == "seeds") {
        cfg.seeds = static_cast<Index>(to_unsigned(value, key));
      } else {
        throw ValidationError("unknown key '" + key + "'");
      }
    } catch (const ValidationError& e) {
      throw ValidationError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace heatctl
