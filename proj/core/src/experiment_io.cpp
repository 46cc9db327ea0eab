#include "dce/experiment_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dce/errors.hpp"

namespace dce {

namespace {

using nlohmann::json;

std::string format_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("malformed number '" + text + "' in CSV");
  }
  return v;
}

std::optional<double> parse_optional(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_double(text);
}

template <typename T>
T parse_integer(const std::string& text) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("malformed integer '" + text + "' in CSV");
  }
  return v;
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> known,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const auto k : known) ok = ok || key == k;
    if (!ok) throw UsageError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read_if_present(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

SystemConfig system_config_from_json(const json& obj) {
  reject_unknown_keys(obj,
                      {"n_t", "n_l", "n_u", "t0", "t1", "sigma_h_sq", "sigma_g_sq",
                       "sigma_b_sq", "sigma0_sq", "p_ave", "gamma"},
                      "cfg");
  SystemConfig cfg;
  read_if_present(obj, "n_t", cfg.n_t);
  read_if_present(obj, "n_l", cfg.n_l);
  read_if_present(obj, "n_u", cfg.n_u);
  read_if_present(obj, "t0", cfg.t0);
  read_if_present(obj, "t1", cfg.t1);
  read_if_present(obj, "sigma_h_sq", cfg.sigma_h_sq);
  read_if_present(obj, "sigma_g_sq", cfg.sigma_g_sq);
  read_if_present(obj, "sigma_b_sq", cfg.sigma_b_sq);
  read_if_present(obj, "sigma0_sq", cfg.sigma0_sq);
  read_if_present(obj, "p_ave", cfg.p_ave);
  read_if_present(obj, "gamma", cfg.gamma);
  return cfg;
}

json system_config_to_json(const SystemConfig& cfg) {
  return json{{"n_t", cfg.n_t},
              {"n_l", cfg.n_l},
              {"n_u", cfg.n_u},
              {"t0", cfg.t0},
              {"t1", cfg.t1},
              {"sigma_h_sq", cfg.sigma_h_sq},
              {"sigma_g_sq", cfg.sigma_g_sq},
              {"sigma_b_sq", cfg.sigma_b_sq},
              {"sigma0_sq", cfg.sigma0_sq},
              {"p_ave", cfg.p_ave},
              {"gamma", cfg.gamma}};
}

ExperimentSpec make_spec(Scheme scheme, AttackMode attack, std::vector<double> snr_grid,
                         double gamma, long long trials, std::uint64_t seed, int workers) {
  ExperimentSpec s;
  s.scheme = scheme;
  s.attack = {attack, 1.0};
  s.snr_db_grid = std::move(snr_grid);
  s.gamma = gamma;
  s.trials = trials;
  s.master_seed = seed;
  s.workers = workers;
  s.cfg.gamma = gamma;
  return s;
}

}  // namespace

std::string format_number(double v) {
  // Fixed notation keeps the column plain decimal; shortest round-trip keeps it exact.
  char buf[512];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed);
  if (ec != std::errc()) throw NumericalError("cannot format number");
  return std::string(buf, ptr);
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    out << format_number(r.sweep_value) << ',' << to_string(r.scheme) << ','
        << to_string(r.attack_mode) << ',' << format_optional(r.p1) << ','
        << format_optional(r.sigma_a_sq) << ',' << format_optional(r.p0) << ','
        << format_optional(r.nmse_lr_emp) << ',' << format_optional(r.nmse_lr_cf) << ','
        << format_optional(r.nmse_ur_emp) << ',' << format_optional(r.nmse_ur_cf) << ','
        << r.trials << ',' << r.seed << '\n';
  }
}

void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv(rows, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<ResultRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw UsageError("CSV header does not match the result schema");
  }
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_fields(line);
    if (f.size() != 12) {
      throw UsageError("CSV row has " + std::to_string(f.size()) + " fields, expected 12");
    }
    ResultRow r;
    r.sweep_value = parse_double(f[0]);
    r.scheme = parse_scheme(f[1]);
    r.attack_mode = parse_attack_mode(f[2]);
    r.p1 = parse_optional(f[3]);
    r.sigma_a_sq = parse_optional(f[4]);
    r.p0 = parse_optional(f[5]);
    r.nmse_lr_emp = parse_optional(f[6]);
    r.nmse_lr_cf = parse_optional(f[7]);
    r.nmse_ur_emp = parse_optional(f[8]);
    r.nmse_ur_cf = parse_optional(f[9]);
    r.trials = parse_integer<long long>(f[10]);
    r.seed = parse_integer<std::uint64_t>(f[11]);
    rows.push_back(r);
  }
  return rows;
}

std::vector<ResultRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return parse_csv(in);
}

ExperimentSpec experiment_spec_from_json(std::string_view json_text) {
  json obj;
  try {
    obj = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("invalid JSON config: ") + e.what());
  }
  if (!obj.is_object()) throw UsageError("JSON config must be an object");
  reject_unknown_keys(obj,
                      {"scheme", "attack", "snr_db_grid", "gamma", "trials", "master_seed",
                       "cfg", "t1_grid", "p0_bar_grid", "workers"},
                      "experiment config");
  ExperimentSpec spec;
  try {
    if (obj.contains("cfg")) spec.cfg = system_config_from_json(obj.at("cfg"));
    spec.gamma = spec.cfg.gamma;
    if (obj.contains("scheme")) spec.scheme = parse_scheme(obj.at("scheme").get<std::string>());
    if (obj.contains("attack")) {
      const json& a = obj.at("attack");
      if (a.is_string()) {
        spec.attack.mode = parse_attack_mode(a.get<std::string>());
      } else {
        reject_unknown_keys(a, {"mode", "p0_bar"}, "attack");
        if (a.contains("mode")) spec.attack.mode = parse_attack_mode(a.at("mode").get<std::string>());
        read_if_present(a, "p0_bar", spec.attack.p0_bar);
      }
    }
    read_if_present(obj, "snr_db_grid", spec.snr_db_grid);
    read_if_present(obj, "gamma", spec.gamma);
    read_if_present(obj, "trials", spec.trials);
    read_if_present(obj, "master_seed", spec.master_seed);
    read_if_present(obj, "t1_grid", spec.t1_grid);
    read_if_present(obj, "p0_bar_grid", spec.p0_bar_grid);
    read_if_present(obj, "workers", spec.workers);
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad value in JSON config: ") + e.what());
  }
  spec.cfg.gamma = spec.gamma;
  return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return experiment_spec_from_json(text.str());
}

std::string experiment_spec_to_json(const ExperimentSpec& spec) {
  json obj{{"scheme", std::string(to_string(spec.scheme))},
           {"attack",
            {{"mode", std::string(to_string(spec.attack.mode))}, {"p0_bar", spec.attack.p0_bar}}},
           {"snr_db_grid", spec.snr_db_grid},
           {"gamma", spec.gamma},
           {"trials", spec.trials},
           {"master_seed", spec.master_seed},
           {"cfg", system_config_to_json(spec.cfg)}};
  if (!spec.t1_grid.empty()) obj["t1_grid"] = spec.t1_grid;
  if (!spec.p0_bar_grid.empty()) obj["p0_bar_grid"] = spec.p0_bar_grid;
  return obj.dump(2);
}

std::vector<std::string> figure_names() {
  return {"fig2", "fig3a", "fig3b", "fig3c", "fig4a", "fig4b", "fig4c"};
}

std::vector<FigureOutput> figure_preset(std::string_view name, long long trials,
                                        std::uint64_t seed, int workers) {
  const std::vector<double> snr_grid{5, 10, 15, 20, 25, 30};
  auto spec = [&](Scheme s, AttackMode a, std::vector<double> grid, double gamma) {
    return make_spec(s, a, std::move(grid), gamma, trials, seed, workers);
  };
  auto scheme_comparison = [&](double gamma) {
    return std::vector<ExperimentSpec>{spec(Scheme::wr, AttackMode::none, snr_grid, gamma),
                                       spec(Scheme::lmmse, AttackMode::none, snr_grid, gamma),
                                       spec(Scheme::wr_perfect_csi, AttackMode::none, snr_grid, gamma)};
  };
  auto attack_comparison = [&](double gamma) {
    return std::vector<ExperimentSpec>{spec(Scheme::lmmse, AttackMode::none, snr_grid, gamma),
                                       spec(Scheme::lmmse, AttackMode::known_pilot, snr_grid, gamma),
                                       spec(Scheme::wr, AttackMode::none, snr_grid, gamma),
                                       spec(Scheme::wr, AttackMode::guess, snr_grid, gamma)};
  };

  if (name == "fig2") {
    return {{"fig2_gamma0.03.csv", {spec(Scheme::wr, AttackMode::none, snr_grid, 0.03)}},
            {"fig2_gamma0.1.csv", {spec(Scheme::wr, AttackMode::none, snr_grid, 0.1)}}};
  }
  if (name == "fig3a") return {{"fig3a.csv", scheme_comparison(0.03)}};
  if (name == "fig3b") return {{"fig3b.csv", scheme_comparison(0.1)}};
  if (name == "fig3c") {
    // T1 grid is our choice; the sweep is taken at 25 dB.
    std::vector<ExperimentSpec> runs = scheme_comparison(0.03);
    for (ExperimentSpec& r : runs) {
      r.snr_db_grid = {25};
      r.t1_grid.clear();
      for (int t1 = 20; t1 <= 280; t1 += 20) r.t1_grid.push_back(t1);
    }
    return {{"fig3c.csv", runs}};
  }
  if (name == "fig4a") return {{"fig4a.csv", attack_comparison(0.03)}};
  if (name == "fig4b") return {{"fig4b.csv", attack_comparison(0.1)}};
  if (name == "fig4c") {
    std::vector<FigureOutput> outputs;
    for (const double snr : {15.0, 25.0, 35.0}) {
      ExperimentSpec s = spec(Scheme::wr, AttackMode::guess, {snr}, 0.03);
      for (int k = 1; k <= 10; ++k) s.p0_bar_grid.push_back(k / 10.0);
      outputs.push_back({"fig4c_snr" + std::to_string(static_cast<int>(snr)) + ".csv", {s}});
    }
    return outputs;
  }
  throw UsageError("unknown figure preset '" + std::string(name) + "'");
}

}  // namespace dce
