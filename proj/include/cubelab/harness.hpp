#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubelab {

/// The seven experiment kinds the harness can drive. The enum value doubles
/// as the seed tag, so no two kinds ever share a trial seed even under the
/// same master seed and trial index.
enum class ExperimentKind : uint32_t {
  kPhasePortrait = 1,
  kExpansion = 2,
  kCycles = 3,
  kMinors = 4,
  kGenus = 5,
  kIsoVerify = 6,
  kSprinkleCheck = 7,
};

const char* kind_name(ExperimentKind kind);
uint64_t kind_tag(ExperimentKind kind);

/// Config or CLI validation failure. `path` names the offending field in
/// dotted notation ("params.alpha"); empty when the document as a whole is
/// broken.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field_path, const std::string& message)
      : std::runtime_error(field_path.empty() ? message
                                              : field_path + ": " + message),
        path_(std::move(field_path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// A parsed and validated experiment description. Exactly one of `epsilons`
/// and `probabilities` is nonempty; trials run over the full cross product
/// dims x that axis. The kind-specific knobs keep their configured values
/// (0 usually meaning "derive a default from d at run time"); they are echoed
/// into the output verbatim.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kPhasePortrait;
  std::vector<uint32_t> dims;
  std::vector<double> epsilons;
  std::vector<double> probabilities;
  uint32_t trials = 1;
  uint64_t master_seed = 0;
  std::string out_base = "result";
  std::string format = "both";  // csv | json | both
  uint32_t threads = 1;

  // kind-specific knobs, all under "params" in the config document
  double alpha = 0.1;              // expansion: size floor fraction of n
  uint64_t ell = 0;                // expansion/minors: piece size, 0 = ceil(d^1.5)
  uint64_t budget = 0;             // expansion: moves, minors: joins; 0 = default
  uint32_t restarts = 30;          // cycles: long-cycle search restarts
  uint32_t census_max_length = 6;  // cycles: census cutoff, even, in [4, 12]
  uint32_t target_t = 0;           // minors: requested order, 0 = derived
  uint32_t face_threshold = 0;     // genus: face cutoff, 0 = default for d
  uint64_t set_size = 0;           // iso_verify: |A|, 0 = n/4
  double q1 = 0;                   // sprinkle_check: first round, 0 = p/2

  bool epsilon_given() const { return !epsilons.empty(); }
};

/// Parse one JSON config document and validate every field, including the
/// cross-field constraints (exactly one of epsilon/p, every (d, epsilon)
/// combination giving p in [0, 1], kind-specific knob ranges). Unknown keys
/// are rejected. Throws ConfigError.
ExperimentConfig parse_config(const std::string& json_text);

/// Parse a decimal uint64 from a string (full 64-bit range; leading/trailing
/// junk rejected). Used for seeds, which do not fit double-backed JSON
/// numbers or int CLI flags. Throws ConfigError with the given path.
uint64_t parse_seed_string(const std::string& text, const std::string& path);

/// One table cell: a 12-significant-digit-rounded number or verbatim text.
/// Seeds travel as text so the full 64-bit value survives both formats.
struct Cell {
  bool is_text = false;
  double num = 0;
  std::string text;
};

/// Everything run_experiment produces. `columns` is the kind-specific column
/// list (the leading record/stat CSV columns are implicit). One trial row per
/// (d, epsilon-or-p, trial) triple, in cross-product order with trials
/// innermost. Aggregates carry nine stat rows per group of trial rows that
/// share every column left of "seed"; group-key cells are filled in, text
/// cells and the seed are left blank, every other numeric column holds the
/// stat over that group's (already rounded) trial values.
struct ResultTable {
  ExperimentConfig config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> trials;

  struct AggRow {
    std::string stat;  // mean, stddev, min, max, q10, q25, q50, q75, q90
    std::vector<Cell> cells;
  };
  std::vector<AggRow> aggregates;
};

/// Run the whole cross product on a worker pool of config.threads threads.
/// Row i draws its seed from (master seed, i, kind tag), so the output is
/// identical for every thread count. The first exception thrown by any trial
/// is rethrown after the pool drains.
ResultTable run_experiment(const ExperimentConfig& config);

/// CSV text: header record,stat,<columns>, one "trial" row per trial, then
/// the "AGG" footer rows. Numbers print via the fixed 12-significant-digit
/// format; text cells must stay comma-free (enforced).
std::string render_csv(const ResultTable& table);

/// JSON text: {kind, version, config, columns, trials, aggregates}, keys in
/// insertion order, seeds as strings, trailing newline. Aggregate objects
/// carry "stat" plus the group-key and aggregated columns only.
std::string render_json(const ResultTable& table);

/// Write out_base + ".csv" / ".json" per format (csv | json | both); returns
/// the paths written. Unwritable paths throw runtime_error.
std::vector<std::string> write_report(const ResultTable& table,
                                      const std::string& out_base,
                                      const std::string& format);

/// The JSON schema the result files conform to; byte-identical to the copy
/// shipped at schemas/experiment_result.schema.json (a test pins that).
const char* result_schema_json();

}  // namespace cubelab
