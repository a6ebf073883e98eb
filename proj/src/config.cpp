#include "enaqt/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "enaqt/errors.hpp"
#include "enaqt/fock.hpp"

namespace enaqt {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
}

void reject_unknown(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ConfigError(join(path, key), "unknown field");
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
  return v;
}

long long get_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<long long>();
}

double number_field(const json& obj, const std::string& path, const std::string& key, double fallback) {
  return obj.contains(key) ? get_number(obj.at(key), join(path, key)) : fallback;
}

int int_field(const json& obj, const std::string& path, const std::string& key, int fallback) {
  return obj.contains(key) ? static_cast<int>(get_integer(obj.at(key), join(path, key))) : fallback;
}

std::uint64_t get_seed(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::uint64_t>(j.get<long long>());
  throw ConfigError(path, "expected a non-negative integer");
}

void check(bool ok, const std::string& path, const std::string& message) {
  if (!ok) throw ConfigError(path, message);
}

struct ParsedChain {
  ChainSpec spec;
  json resolved;
};

ParsedChain parse_chain(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path,
                 {"L", "eps0", "t", "W_over_t", "hopping", "t0", "U_over_t", "barrier", "gamma_inj",
                  "gamma_ext", "gamma_deph", "i_inj", "i_ext", "n_max"});
  ChainSpec c;
  c.L = int_field(j, path, "L", c.L);
  check(c.L >= 1 && c.L <= 63, join(path, "L"), "must be in [1, 63]");
  c.n_max = int_field(j, path, "n_max", c.n_max);
  check(c.n_max == 1 || c.n_max == 2, join(path, "n_max"), "must be 1 or 2");
  c.eps0 = number_field(j, path, "eps0", c.eps0);
  c.t = number_field(j, path, "t", c.t);
  check(c.t >= 0, join(path, "t"), "must be >= 0");
  const double w_over_t = number_field(j, path, "W_over_t", 0.0);
  check(w_over_t >= 0, join(path, "W_over_t"), "must be >= 0");
  c.W = w_over_t * c.t;
  const double u_over_t = number_field(j, path, "U_over_t", 0.0);
  c.U = u_over_t * c.t;

  std::string hopping = "nearest_neighbor";
  if (j.contains("hopping")) {
    check(j.at("hopping").is_string(), join(path, "hopping"), "expected a string");
    hopping = j.at("hopping").get<std::string>();
  }
  if (hopping == "nearest_neighbor")
    c.hopping = HoppingKind::NearestNeighbor;
  else if (hopping == "long_range")
    c.hopping = HoppingKind::LongRange;
  else
    throw ConfigError(join(path, "hopping"), "must be \"nearest_neighbor\" or \"long_range\"");
  if (j.contains("t0")) {
    check(c.hopping == HoppingKind::LongRange, join(path, "t0"), "only valid with long_range hopping");
    c.t0 = get_number(j.at("t0"), join(path, "t0"));
    check(*c.t0 >= 0, join(path, "t0"), "must be >= 0");
  }

  const std::pair<const char*, double*> rates[] = {
      {"gamma_inj", &c.gamma_inj}, {"gamma_ext", &c.gamma_ext}, {"gamma_deph", &c.gamma_deph}};
  for (const auto& [key, rate] : rates) {
    *rate = number_field(j, path, key, *rate);
    check(*rate >= 0, join(path, key), "must be >= 0");
  }
  c.i_inj = int_field(j, path, "i_inj", c.i_inj);
  check(c.i_inj >= 1 && c.i_inj <= c.L, join(path, "i_inj"), "must be in [1, L]");
  c.i_ext = int_field(j, path, "i_ext", c.i_ext);
  check(c.i_ext >= 1 && c.i_ext <= c.L, join(path, "i_ext"), "must be in [1, L]");

  json resolved = {{"L", c.L},
                   {"n_max", c.n_max},
                   {"eps0", c.eps0},
                   {"t", c.t},
                   {"W_over_t", w_over_t},
                   {"hopping", hopping},
                   {"U_over_t", u_over_t},
                   {"gamma_inj", c.gamma_inj},
                   {"gamma_ext", c.gamma_ext},
                   {"gamma_deph", c.gamma_deph},
                   {"i_inj", c.i_inj},
                   {"i_ext", c.i_ext}};
  if (c.t0) resolved["t0"] = *c.t0;

  if (j.contains("barrier")) {
    const std::string bpath = join(path, "barrier");
    const json& b = j.at("barrier");
    require_object(b, bpath);
    reject_unknown(b, bpath, {"site", "height_over_t"});
    Barrier barrier;
    barrier.site = int_field(b, bpath, "site", barrier.site);
    check(barrier.site >= 1 && barrier.site <= c.L, join(bpath, "site"), "must be in [1, L]");
    const double h = number_field(b, bpath, "height_over_t", 0.0);
    barrier.height = h * c.t;
    c.barrier = barrier;
    resolved["barrier"] = {{"site", barrier.site}, {"height_over_t", h}};
  }

  const FockBasis probe(c.L, c.n_max);
  check(probe.dim() <= kMaxFockDim, path,
        "Fock dimension " + std::to_string(probe.dim()) + " exceeds " + std::to_string(kMaxFockDim));
  return {c, resolved};
}

std::vector<double> parse_grid(const json& g, const std::string& path, bool logarithmic) {
  require_object(g, path);
  reject_unknown(g, path, {"min", "max", "points"});
  for (const char* key : {"min", "max", "points"})
    if (!g.contains(key)) throw ConfigError(join(path, key), "missing");
  const double lo = get_number(g.at("min"), join(path, "min"));
  const double hi = get_number(g.at("max"), join(path, "max"));
  const long long n = get_integer(g.at("points"), join(path, "points"));
  check(n >= 2 && n <= 100000, join(path, "points"), "must be in [2, 100000]");
  check(hi > lo, join(path, "max"), "must exceed min");
  if (logarithmic) {
    check(lo > 0, join(path, "min"), "must be > 0 on a log grid");
    return log_grid(lo, hi, static_cast<int>(n));
  }
  return linear_grid(lo, hi, static_cast<int>(n));
}

SweepAxis parse_axis(const json& j, const std::string& path, const ChainSpec& base) {
  require_object(j, path);
  reject_unknown(j, path, {"parameter", "values", "log", "linear"});
  if (!j.contains("parameter")) throw ConfigError(join(path, "parameter"), "missing");
  check(j.at("parameter").is_string(), join(path, "parameter"), "expected a string");
  const auto param = parse_sweep_parameter(j.at("parameter").get<std::string>());
  if (!param) throw ConfigError(join(path, "parameter"), "unknown sweep parameter");

  SweepAxis axis{*param, {}};
  const int grids = int(j.contains("values")) + int(j.contains("log")) + int(j.contains("linear"));
  check(grids <= 1, path, "give only one of values, log, linear");
  if (j.contains("values")) {
    const std::string vpath = join(path, "values");
    check(j.at("values").is_array(), vpath, "expected an array");
    for (std::size_t k = 0; k < j.at("values").size(); ++k)
      axis.values.push_back(get_number(j.at("values")[k], index(vpath, k)));
  } else if (j.contains("log")) {
    axis.values = parse_grid(j.at("log"), join(path, "log"), true);
  } else if (j.contains("linear")) {
    axis.values = parse_grid(j.at("linear"), join(path, "linear"), false);
  } else if (*param == SweepParameter::GammaDeph) {
    axis.values = log_grid(1e-2, 1e3, 31);
  } else if (*param == SweepParameter::WOverT) {
    axis.values = log_grid(0.05, 20.0, 25);
  } else {
    throw ConfigError(path, "a grid (values, log or linear) is required for this parameter");
  }

  check(!axis.values.empty(), path, "grid is empty");
  bool up = true, down = true;
  for (std::size_t k = 1; k < axis.values.size(); ++k) {
    up = up && axis.values[k] > axis.values[k - 1];
    down = down && axis.values[k] < axis.values[k - 1];
  }
  check(up || down, path, "grid must be strictly monotone");
  for (std::size_t k = 0; k < axis.values.size(); ++k) {
    const double v = axis.values[k];
    const std::string vpath = index(join(path, "values"), k);
    switch (axis.parameter) {
      case SweepParameter::GammaDeph:
      case SweepParameter::GammaInj:
      case SweepParameter::GammaExt:
      case SweepParameter::WOverT:
        check(v >= 0, vpath, "must be >= 0");
        break;
      case SweepParameter::IExt:
        check(v == std::round(v) && v >= 1 && v <= base.L, vpath, "must be an integer site in [1, L]");
        break;
      case SweepParameter::BarrierHeightOverT:
        check(base.barrier.has_value(), path, "chain has no barrier");
        break;
      case SweepParameter::UOverT:
        break;
    }
  }
  return axis;
}

json axis_json(const SweepAxis& axis) {
  return {{"parameter", to_string(axis.parameter)}, {"values", axis.values}};
}

SweepConfig parse_sweep(const json& j, const std::string& path, std::optional<std::uint64_t> inherited_seed,
                        const ConfigOverrides& overrides) {
  require_object(j, path);
  reject_unknown(j, path, {"name", "chain", "axis1", "axis2", "realizations", "master_seed"});
  SweepConfig out;
  SweepSpec& s = out.spec;

  if (j.contains("name")) {
    check(j.at("name").is_string(), join(path, "name"), "expected a string");
    s.name = j.at("name").get<std::string>();
    check(!s.name.empty() && s.name.find_first_of("/\\") == std::string::npos, join(path, "name"),
          "must be a non-empty file-name-safe string");
  }
  ParsedChain chain = parse_chain(j.value("chain", json::object()), join(path, "chain"));
  s.base = chain.spec;
  if (!j.contains("axis1")) throw ConfigError(join(path, "axis1"), "missing");
  s.axis1 = parse_axis(j.at("axis1"), join(path, "axis1"), s.base);
  if (j.contains("axis2")) {
    s.axis2 = parse_axis(j.at("axis2"), join(path, "axis2"), s.base);
    check(s.axis2->parameter != s.axis1.parameter, join(path, "axis2.parameter"),
          "must differ from axis1.parameter");
  }

  s.realizations = int_field(j, path, "realizations", 1);
  if (overrides.realizations) s.realizations = *overrides.realizations;
  check(s.realizations >= 1, join(path, "realizations"), "must be >= 1");

  if (j.contains("master_seed")) {
    s.master_seed = get_seed(j.at("master_seed"), join(path, "master_seed"));
  } else if (inherited_seed) {
    s.master_seed = *inherited_seed;
  }
  if (overrides.master_seed) s.master_seed = *overrides.master_seed;

  try {
    s.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError(path.empty() ? "<root>" : path, e.what());
  }

  out.resolved = {{"name", s.name},
                  {"chain", chain.resolved},
                  {"axis1", axis_json(s.axis1)},
                  {"realizations", s.realizations},
                  {"master_seed", s.master_seed}};
  if (s.axis2) out.resolved["axis2"] = axis_json(*s.axis2);
  return out;
}

}  // namespace

std::vector<SweepConfig> parse_config(const json& doc, const ConfigOverrides& overrides) {
  require_object(doc, "");
  if (!doc.contains("sweeps")) return {parse_sweep(doc, "", std::nullopt, overrides)};

  reject_unknown(doc, "", {"name", "master_seed", "sweeps"});
  std::optional<std::uint64_t> seed;
  if (doc.contains("master_seed")) {
    seed = get_seed(doc.at("master_seed"), "master_seed");
  }
  const json& sweeps = doc.at("sweeps");
  check(sweeps.is_array() && !sweeps.empty(), "sweeps", "expected a non-empty array");
  std::vector<SweepConfig> out;
  std::set<std::string> names;
  for (std::size_t k = 0; k < sweeps.size(); ++k) {
    out.push_back(parse_sweep(sweeps[k], index("sweeps", k), seed, overrides));
    check(names.insert(out.back().spec.name).second, index("sweeps", k) + ".name",
          "duplicate sweep name \"" + out.back().spec.name + "\"");
  }
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace enaqt
