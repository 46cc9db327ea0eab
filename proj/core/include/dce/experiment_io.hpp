#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dce/simulation.hpp"

namespace dce {

inline constexpr std::string_view kCsvHeader =
    "sweep,scheme,attack,p1,sigma_a_sq,p0,nmse_lr_emp,nmse_lr_cf,nmse_ur_emp,nmse_ur_cf,"
    "trials,seed";

/// Shortest fixed-notation text that parses back to exactly `v`.
std::string format_number(double v);

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);
/// Writes the header and one line per row; absent fields are left empty.
/// Throws IoError carrying the path on failure.
void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path);

std::vector<ResultRow> parse_csv(std::istream& in);
std::vector<ResultRow> read_csv(const std::filesystem::path& path);

/// Loads an ExperimentSpec from a JSON object whose keys are the
/// ExperimentSpec field names; `cfg` holds SystemConfig fields and `attack`
/// is either a mode string or {"mode": ..., "p0_bar": ...}. Missing keys keep
/// their defaults, unknown keys are rejected.
ExperimentSpec experiment_spec_from_json(std::string_view json_text);
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);
std::string experiment_spec_to_json(const ExperimentSpec& spec);

/// One CSV written by a figure preset, gathering one or more runs.
struct FigureOutput {
  std::string file;
  std::vector<ExperimentSpec> runs;
};

std::vector<std::string> figure_names();
/// Experiments regenerating one figure at the desk-scale operating point.
std::vector<FigureOutput> figure_preset(std::string_view name, long long trials,
                                        std::uint64_t master_seed, int workers);

}  // namespace dce
