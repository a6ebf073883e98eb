#include "enaqt/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "enaqt/fock.hpp"

namespace enaqt {

using nlohmann::json;

std::uint64_t spec_hash(const json& resolved) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : resolved.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

namespace {

std::string hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

std::vector<std::string> axis_columns(const SweepSpec& spec) {
  std::vector<std::string> cols = {to_string(spec.axis1.parameter)};
  if (spec.axis2) cols.push_back(to_string(spec.axis2->parameter));
  return cols;
}

std::vector<json> axis_values(const SweepPoint& p) {
  std::vector<json> row = {p.axis1};
  if (p.axis2) row.push_back(*p.axis2);
  return row;
}

void push_stat(std::vector<json>& row, const Stat& s) {
  row.push_back(s.mean);
  row.push_back(s.std_error);
}

std::string csv_cell(const json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) quoted += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return quoted + "\"";
  }
  if (v.is_number_integer()) return v.dump();
  return format_number(v.get<double>());
}

}  // namespace

std::vector<Table> result_tables(const SweepResult& result) {
  const SweepSpec& spec = result.spec;
  const std::vector<std::string> axes = axis_columns(spec);
  const FockBasis basis(spec.base.L, spec.base.n_max);

  Table summary{"summary", axes, {}};
  for (const char* obs : {"J", "N_total", "delta_n", "ipr"}) {
    summary.columns.push_back(std::string(obs) + "_mean");
    summary.columns.push_back(std::string(obs) + "_stderr");
  }
  summary.columns.push_back("R");
  summary.columns.push_back("failures");

  Table pops{"populations", axes, {}};
  pops.columns.insert(pops.columns.end(), {"site", "n_mean", "n_stderr"});
  Table eig{"eigen_populations", axes, {}};
  eig.columns.insert(eig.columns.end(), {"eigenstate", "p_mean", "p_stderr"});
  Table diag{"state_diagonal", axes, {}};
  diag.columns.insert(diag.columns.end(), {"state", "label", "rho_mean", "rho_stderr"});

  for (const SweepPoint& p : result.points) {
    std::vector<json> row = axis_values(p);
    for (const Stat* s : {&p.J, &p.N_total, &p.delta_n, &p.ipr}) push_stat(row, *s);
    row.push_back(p.realizations);
    row.push_back(p.failures);
    summary.rows.push_back(std::move(row));

    for (std::size_t i = 0; i < p.populations.size(); ++i) {
      std::vector<json> r = axis_values(p);
      r.push_back(static_cast<int>(i + 1));
      push_stat(r, p.populations[i]);
      pops.rows.push_back(std::move(r));
    }
    for (std::size_t n = 0; n < p.eigen_pops.size(); ++n) {
      std::vector<json> r = axis_values(p);
      r.push_back(static_cast<int>(n + 1));
      push_stat(r, p.eigen_pops[n]);
      eig.rows.push_back(std::move(r));
    }
    for (std::size_t k = 0; k < p.state_diagonal.size(); ++k) {
      std::vector<json> r = axis_values(p);
      r.push_back(static_cast<int>(k));
      r.push_back(basis.label(k));
      push_stat(r, p.state_diagonal[k]);
      diag.rows.push_back(std::move(r));
    }
  }

  std::vector<Table> tables = {summary, pops};
  if (spec.base.n_max == 1) tables.push_back(eig);
  tables.push_back(diag);
  return tables;
}

std::string to_csv(const Table& table, const json& resolved, const SweepResult& result) {
  std::ostringstream os;
  os << "# enaqt " << kCodeVersion << "\n";
  os << "# sweep: " << result.spec.name << "\n";
  os << "# table: " << table.name << "\n";
  os << "# master_seed: " << result.spec.master_seed << "\n";
  os << "# spec_hash: " << hex(spec_hash(resolved)) << "\n";
  os << "# config: " << resolved.dump() << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_cell(row[c]);
    os << "\n";
  }
  return os.str();
}

json to_json(const std::vector<Table>& tables, const json& resolved, const SweepResult& result) {
  json out = {{"code_version", kCodeVersion},
              {"sweep", result.spec.name},
              {"master_seed", result.spec.master_seed},
              {"spec_hash", hex(spec_hash(resolved))},
              {"config", resolved},
              {"failed", result.any_failed()}};
  json t = json::object();
  for (const Table& table : tables) {
    json rows = json::array();
    for (const auto& row : table.rows) {
      json r = json::array();
      // Non-finite means (every realization failed) become strings, as in the CSV.
      for (const json& v : row)
        r.push_back(v.is_number_float() && !std::isfinite(v.get<double>()) ? json(format_number(v.get<double>())) : v);
      rows.push_back(std::move(r));
    }
    t[table.name] = {{"columns", table.columns}, {"rows", std::move(rows)}};
  }
  out["tables"] = std::move(t);
  return out;
}

std::vector<std::filesystem::path> write_outputs(const SweepResult& result, const json& resolved,
                                                 const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::vector<Table> tables = result_tables(result);
  std::vector<std::filesystem::path> written;
  auto write = [&](const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
    if (!f) throw std::runtime_error("error writing " + path.string());
    written.push_back(path);
  };
  const std::string stem = result.spec.name;
  for (const Table& table : tables) {
    const std::string file = table.name == "summary" ? stem + ".csv" : stem + "_" + table.name + ".csv";
    write(dir / file, to_csv(table, resolved, result));
  }
  write(dir / (stem + ".json"), to_json(tables, resolved, result).dump(2) + "\n");
  return written;
}

}  // namespace enaqt
