#include "cubelab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "json.hpp"

#include "cubelab/branching.hpp"
#include "cubelab/components.hpp"
#include "cubelab/cycles.hpp"
#include "cubelab/expansion.hpp"
#include "cubelab/format.hpp"
#include "cubelab/genus.hpp"
#include "cubelab/rng.hpp"
#include "cubelab/sample.hpp"
#include "cubelab/stats.hpp"
#include "cubelab/tree_decomp.hpp"
#include "cubelab/version.hpp"

namespace cubelab {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

struct KindEntry {
  ExperimentKind kind;
  const char* name;
};

constexpr KindEntry kKinds[] = {
    {ExperimentKind::kPhasePortrait, "phase_portrait"},
    {ExperimentKind::kExpansion, "expansion"},
    {ExperimentKind::kCycles, "cycles"},
    {ExperimentKind::kMinors, "minors"},
    {ExperimentKind::kGenus, "genus"},
    {ExperimentKind::kIsoVerify, "iso_verify"},
    {ExperimentKind::kSprinkleCheck, "sprinkle_check"},
};

Cell num_cell(double v) {
  Cell c;
  c.num = round_g12(v);
  return c;
}

Cell text_cell(std::string s) {
  Cell c;
  c.is_text = true;
  c.text = std::move(s);
  return c;
}

Cell seed_cell(uint64_t seed) { return text_cell(std::to_string(seed)); }

// ---- config parsing -------------------------------------------------------

uint64_t get_uint(const json& j, const std::string& path, uint64_t lo,
                  uint64_t hi) {
  uint64_t v;
  if (j.is_number_unsigned()) {
    v = j.get<uint64_t>();
  } else if (j.is_number_integer()) {
    const int64_t s = j.get<int64_t>();
    if (s < 0) throw ConfigError(path, "must not be negative");
    v = uint64_t(s);
  } else {
    throw ConfigError(path, "must be an integer");
  }
  if (v < lo || v > hi)
    throw ConfigError(path, "must be in [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "], got " +
                                std::to_string(v));
  return v;
}

double get_double(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "must be a number");
  return j.get<double>();
}

// Accepts a single value or an array of values, rejecting empties and
// duplicates (a duplicate would silently merge two aggregate groups).
template <typename T, typename Parse>
std::vector<T> get_axis(const json& j, const std::string& path, Parse parse) {
  std::vector<T> out;
  if (j.is_array()) {
    if (j.empty()) throw ConfigError(path, "must not be empty");
    size_t i = 0;
    for (const auto& item : j)
      out.push_back(parse(item, path + "[" + std::to_string(i++) + "]"));
  } else {
    out.push_back(parse(j, path));
  }
  for (size_t a = 0; a < out.size(); ++a)
    for (size_t b = a + 1; b < out.size(); ++b)
      if (out[a] == out[b])
        throw ConfigError(path, "duplicate value (would merge groups)");
  return out;
}

const std::set<std::string>& params_for(ExperimentKind kind) {
  static const std::map<ExperimentKind, std::set<std::string>> table = {
      {ExperimentKind::kPhasePortrait, {}},
      {ExperimentKind::kExpansion, {"alpha", "ell", "budget"}},
      {ExperimentKind::kCycles, {"restarts", "census_max_length"}},
      {ExperimentKind::kMinors, {"ell", "target_t", "budget"}},
      {ExperimentKind::kGenus, {"face_threshold"}},
      {ExperimentKind::kIsoVerify, {"set_size"}},
      {ExperimentKind::kSprinkleCheck, {"q1"}},
  };
  return table.at(kind);
}

double resolved_p(const ExperimentConfig& c, uint32_t d, double x) {
  return c.epsilon_given() ? (1.0 + x) / double(d) : x;
}

double resolved_epsilon(const ExperimentConfig& c, uint32_t d, double x) {
  return c.epsilon_given() ? x : x * double(d) - 1.0;
}

const std::vector<double>& axis(const ExperimentConfig& c) {
  return c.epsilon_given() ? c.epsilons : c.probabilities;
}

void validate_cross_fields(const ExperimentConfig& c) {
  const std::string xpath = c.epsilon_given() ? "epsilon" : "p";
  for (uint32_t d : c.dims) {
    for (double x : axis(c)) {
      const double p = resolved_p(c, d, x);
      if (!(p >= 0.0 && p <= 1.0))
        throw ConfigError(xpath, "gives p = " + format_g12(p) + " at d = " +
                                     std::to_string(d) +
                                     ", outside [0, 1]");
    }
  }

  const double rows = double(c.dims.size()) * double(axis(c).size()) *
                      double(c.trials);
  if (rows > 1e6)
    throw ConfigError("trials",
                      "cross product has " + format_g12(rows) +
                          " rows, the cap is 1000000");

  switch (c.kind) {
    case ExperimentKind::kExpansion:
      if (!(c.alpha > 0.0 && c.alpha <= 0.5))
        throw ConfigError("params.alpha", "must be in (0, 0.5]");
      break;
    case ExperimentKind::kCycles:
      if (c.restarts < 1)
        throw ConfigError("params.restarts", "must be at least 1");
      if (c.census_max_length < 4 || c.census_max_length > 12 ||
          c.census_max_length % 2 != 0)
        throw ConfigError("params.census_max_length",
                          "must be even and in [4, 12]");
      break;
    case ExperimentKind::kGenus:
      if (c.face_threshold != 0 &&
          (c.face_threshold < 4 || c.face_threshold > 12 ||
           c.face_threshold % 2 != 0))
        throw ConfigError("params.face_threshold",
                          "must be 0 (derive) or even in [4, 12]");
      break;
    case ExperimentKind::kIsoVerify:
      for (uint32_t d : c.dims) {
        if (d > 10)
          throw ConfigError(
              "d", "iso_verify is exhaustive and needs d <= 10, got " +
                       std::to_string(d));
        const uint64_t half = uint64_t(1) << (d - 1);
        if (c.set_size > half)
          throw ConfigError("params.set_size",
                            "exceeds half the cube at d = " +
                                std::to_string(d));
      }
      break;
    case ExperimentKind::kSprinkleCheck:
      for (uint32_t d : c.dims) {
        for (double x : axis(c)) {
          const double p = resolved_p(c, d, x);
          if (!(p > 0.0 && p < 1.0))
            throw ConfigError(xpath,
                              "sprinkle_check needs p strictly inside (0, 1)");
          if (c.q1 > 0.0 && c.q1 > p)
            throw ConfigError("params.q1",
                              "exceeds the target p = " + format_g12(p) +
                                  " at d = " + std::to_string(d));
        }
      }
      if (c.q1 < 0.0 || c.q1 >= 1.0)
        throw ConfigError("params.q1", "must be in [0, 1)");
      break;
    default:
      break;
  }
}

// ---- per-kind trial runners ------------------------------------------------

struct TrialSpec {
  uint32_t d;
  double x;  // epsilon or p, per config
  uint64_t seed;
};

std::vector<std::string> columns_for(const ExperimentConfig& c) {
  switch (c.kind) {
    case ExperimentKind::kPhasePortrait:
      return {"d",           "epsilon",      "p",
              "seed",        "largest_size", "largest_frac",
              "second_size", "second_frac",  "edges",
              "small_mass_frac", "survival_binomial"};
    case ExperimentKind::kExpansion:
      return {"d",          "epsilon",       "seed",
              "alpha",      "S_size",        "edge_boundary",
              "vertex_boundary", "beta_edge", "beta_vertex",
              "probe_kind"};
    case ExperimentKind::kCycles: {
      std::vector<std::string> cols = {"d", "epsilon", "p", "seed",
                                       "best_cycle_length"};
      for (uint32_t s = 4; s <= c.census_max_length; s += 2)
        cols.push_back("x" + std::to_string(s));
      return cols;
    }
    case ExperimentKind::kMinors:
      return {"d",          "epsilon", "p",     "seed",
              "target_t",   "achieved_t", "valid", "piece_count"};
    case ExperimentKind::kGenus:
      return {"d",     "epsilon",      "seed",  "excess",
              "short_cycles", "face_bound", "kappa", "genus_lower_bound"};
    case ExperimentKind::kIsoVerify:
      return {"d",     "seed",  "set_size", "k",
              "lambda", "bound", "matching", "pass"};
    case ExperimentKind::kSprinkleCheck:
      return {"d",          "p",           "seed",     "q1",
              "q2",         "q3",          "base_edges", "union_edges",
              "marginal",   "sigma_dev",   "contained"};
  }
  throw std::logic_error("columns_for: unhandled kind");
}

std::vector<Cell> run_phase_portrait(const ExperimentConfig& c,
                                     const TrialSpec& t) {
  const Dimension dim(t.d);
  const double p = resolved_p(c, t.d, t.x);
  const double eps = resolved_epsilon(c, t.d, t.x);
  const PercolationSample s = sample(dim, p, t.seed);
  const ComponentLabeling labeling = label_components(s);

  const double n = double(dim.vertex_count());
  const ComponentInfo& big = labeling.largest();
  const double second = double(labeling.second_largest_size());
  const double small_mass = double(labeling.small_component_mass(t.d));
  const double gamma = binomial_survival(t.d, p).gamma;

  return {num_cell(t.d),
          num_cell(eps),
          num_cell(p),
          seed_cell(t.seed),
          num_cell(double(big.size)),
          num_cell(double(big.size) / n),
          num_cell(second),
          num_cell(second / n),
          num_cell(double(s.retained_count())),
          num_cell(small_mass / n),
          num_cell(gamma)};
}

std::vector<Cell> run_expansion(const ExperimentConfig& c,
                                const TrialSpec& t) {
  const Dimension dim(t.d);
  const PercolationSample s = sample(dim, resolved_p(c, t.d, t.x), t.seed);
  WorstCutOptions opt;
  opt.piece_ell = c.ell;
  opt.move_budget = c.budget;
  const ExpansionCertificate cert = worst_cut_heuristic(s, c.alpha, opt);

  return {num_cell(t.d),
          num_cell(resolved_epsilon(c, t.d, t.x)),
          seed_cell(t.seed),
          num_cell(c.alpha),
          num_cell(double(cert.set_size)),
          num_cell(double(cert.edge_boundary)),
          num_cell(double(cert.vertex_boundary)),
          num_cell(cert.beta_edge),
          num_cell(cert.beta_vertex),
          text_cell(cert.probe_inventory)};
}

std::vector<Cell> run_cycles(const ExperimentConfig& c, const TrialSpec& t) {
  const Dimension dim(t.d);
  const double p = resolved_p(c, t.d, t.x);
  const PercolationSample s = sample(dim, p, t.seed);
  const CycleCensus census = census_short_cycles(s, c.census_max_length);
  const auto best = long_cycle_search(s, c.restarts);
  const uint64_t best_len = best ? best->length() : 0;

  std::vector<Cell> row = {num_cell(t.d), num_cell(resolved_epsilon(c, t.d, t.x)),
                           num_cell(p), seed_cell(t.seed),
                           num_cell(double(best_len))};
  for (uint32_t len = 4; len <= c.census_max_length; len += 2)
    row.push_back(num_cell(double(census.counts[len])));
  return row;
}

std::vector<Cell> run_minors(const ExperimentConfig& c, const TrialSpec& t) {
  const Dimension dim(t.d);
  const double p = resolved_p(c, t.d, t.x);
  const PercolationSample s = sample(dim, p, t.seed);
  const ComponentLabeling labeling = label_components(s);

  const uint64_t ell =
      c.ell ? c.ell : uint64_t(std::ceil(std::pow(double(t.d), 1.5)));
  const uint64_t giant = labeling.largest().size;
  const auto cover = piece_cover(s, std::max(ell, giant), ell);
  uint64_t piece_count = 0;
  for (const auto& pd : cover) piece_count += pd.pieces.size();

  const uint32_t target =
      c.target_t ? c.target_t : default_minor_target(dim);
  const MinorCertificate cert = build_minor(s, cover, target, c.budget);
  const MinorValidation check = validate_minor(cert, s);

  return {num_cell(t.d),
          num_cell(resolved_epsilon(c, t.d, t.x)),
          num_cell(p),
          seed_cell(t.seed),
          num_cell(double(target)),
          num_cell(double(cert.t)),
          num_cell(check.pass ? 1.0 : 0.0),
          num_cell(double(piece_count))};
}

std::vector<Cell> run_genus(const ExperimentConfig& c, const TrialSpec& t) {
  const Dimension dim(t.d);
  const PercolationSample s = sample(dim, resolved_p(c, t.d, t.x), t.seed);
  const ComponentLabeling labeling = label_components(s);
  const uint32_t threshold =
      c.face_threshold ? c.face_threshold : default_face_threshold(dim);
  const GenusBound bound =
      genus_lower_bound(s, labeling.largest().rep, threshold);

  return {num_cell(t.d),
          num_cell(resolved_epsilon(c, t.d, t.x)),
          seed_cell(t.seed),
          num_cell(double(bound.excess)),
          num_cell(double(bound.short_cycle_count)),
          num_cell(bound.face_bound),
          num_cell(double(labeling.components().size())),
          num_cell(double(bound.lower_bound))};
}

std::vector<Cell> run_iso_verify(const ExperimentConfig& c,
                                 const TrialSpec& t) {
  const Dimension dim(t.d);
  const uint64_t n = dim.vertex_count();
  const uint64_t size = c.set_size ? c.set_size : n / 4;

  // Partial Fisher-Yates over the vertex codes; the counter stream below is
  // injective, so the draw is a pure function of the trial seed.
  std::vector<uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  uint64_t ctr = 0;
  auto next = [&] { return mix64(t.seed + 0x9e3779b97f4a7c15ULL * ++ctr); };
  for (uint64_t i = 0; i < size; ++i)
    std::swap(perm[i], perm[i + next() % (n - i)]);

  std::vector<uint32_t> set(perm.begin(), perm.begin() + size);
  std::sort(set.begin(), set.end());
  const IsoCheck check = verify_iso_matching(dim, set);

  return {num_cell(t.d),
          seed_cell(t.seed),
          num_cell(double(size)),
          num_cell(double(check.bound.k)),
          num_cell(check.bound.lambda),
          num_cell(check.bound.bound),
          num_cell(double(check.matching_size)),
          num_cell(check.pass ? 1.0 : 0.0)};
}

std::vector<Cell> run_sprinkle_check(const ExperimentConfig& c,
                                     const TrialSpec& t) {
  const Dimension dim(t.d);
  const double p = resolved_p(c, t.d, t.x);
  const double q1 = c.q1 > 0.0 ? c.q1 : p / 2.0;
  // Split the residual evenly over rounds two and three, then let the last
  // round absorb the floating-point slack so the composed marginal is p.
  const double q2 = std::max(0.0, 1.0 - std::sqrt((1.0 - p) / (1.0 - q1)));

  const PercolationSample s1 = sample(dim, q1, round_seed(t.seed, 0));
  const PercolationSample s2 = sprinkle(s1, q2, round_seed(t.seed, 1));
  const double q3 = s2.p < p ? residual_probability(p, s2.p) : 0.0;
  const PercolationSample s3 = sprinkle(s2, q3, round_seed(t.seed, 2));

  const double m = double(dim.edge_count());
  const double union_edges = double(s3.retained_count());
  const double sigma_dev =
      (union_edges - m * p) / std::sqrt(m * p * (1.0 - p));
  const bool contained =
      s3.edges.contains(s2.edges) && s2.edges.contains(s1.edges);

  return {num_cell(t.d),
          num_cell(p),
          seed_cell(t.seed),
          num_cell(q1),
          num_cell(q2),
          num_cell(q3),
          num_cell(double(s1.retained_count())),
          num_cell(union_edges),
          num_cell(union_edges / m),
          num_cell(sigma_dev),
          num_cell(contained ? 1.0 : 0.0)};
}

std::vector<Cell> run_trial(const ExperimentConfig& c, const TrialSpec& t) {
  switch (c.kind) {
    case ExperimentKind::kPhasePortrait: return run_phase_portrait(c, t);
    case ExperimentKind::kExpansion:     return run_expansion(c, t);
    case ExperimentKind::kCycles:        return run_cycles(c, t);
    case ExperimentKind::kMinors:        return run_minors(c, t);
    case ExperimentKind::kGenus:         return run_genus(c, t);
    case ExperimentKind::kIsoVerify:     return run_iso_verify(c, t);
    case ExperimentKind::kSprinkleCheck: return run_sprinkle_check(c, t);
  }
  throw std::logic_error("run_trial: unhandled kind");
}

// ---- aggregation ----------------------------------------------------------

double pick_stat(const Summary& s, const std::string& stat) {
  if (stat == "mean") return s.mean;
  if (stat == "stddev") return s.stddev;
  if (stat == "min") return s.min;
  if (stat == "max") return s.max;
  if (stat == "q10") return s.q10;
  if (stat == "q25") return s.q25;
  if (stat == "q50") return s.q50;
  if (stat == "q75") return s.q75;
  if (stat == "q90") return s.q90;
  throw std::logic_error("pick_stat: unknown stat " + stat);
}

const char* const kStats[] = {"mean", "stddev", "min", "max", "q10",
                              "q25",  "q50",    "q75", "q90"};

void aggregate(ResultTable& table) {
  const auto& cols = table.columns;
  const size_t seed_idx =
      size_t(std::find(cols.begin(), cols.end(), "seed") - cols.begin());
  if (seed_idx == cols.size())
    throw std::logic_error("aggregate: no seed column");

  // Rows sharing every column left of the seed form one group; groups keep
  // first-appearance order so the footer is stable under any thread count.
  struct Group {
    std::vector<Cell> key_row;
    std::vector<std::vector<double>> values;
  };
  std::vector<Group> groups;
  std::map<std::string, size_t> by_key;
  for (const auto& row : table.trials) {
    std::string key;
    for (size_t i = 0; i < seed_idx; ++i) {
      key += format_g12(row[i].num);
      key += '\x1f';
    }
    auto [it, fresh] = by_key.try_emplace(key, groups.size());
    if (fresh)
      groups.push_back({row, std::vector<std::vector<double>>(cols.size())});
    Group& g = groups[it->second];
    for (size_t i = seed_idx + 1; i < cols.size(); ++i)
      if (!row[i].is_text) g.values[i].push_back(row[i].num);
  }

  for (const Group& g : groups) {
    std::vector<Summary> summaries(cols.size());
    std::vector<bool> numeric(cols.size(), false);
    for (size_t i = seed_idx + 1; i < cols.size(); ++i) {
      if (g.values[i].empty()) continue;
      summaries[i] = summarize(g.values[i]);
      numeric[i] = true;
    }
    for (const char* stat : kStats) {
      ResultTable::AggRow agg;
      agg.stat = stat;
      agg.cells.resize(cols.size(), text_cell(""));
      for (size_t i = 0; i < seed_idx; ++i) agg.cells[i] = g.key_row[i];
      for (size_t i = seed_idx + 1; i < cols.size(); ++i)
        if (numeric[i]) agg.cells[i] = num_cell(pick_stat(summaries[i], stat));
      table.aggregates.push_back(std::move(agg));
    }
  }
}

// Echo of the experiment-defining fields. Delivery knobs (out, format,
// threads) stay out: they cannot change a single cell, and echoing them
// would make byte-identical results look different across worker counts.
ojson config_echo(const ExperimentConfig& c) {
  ojson e;
  e["kind"] = kind_name(c.kind);
  e["d"] = c.dims;
  if (c.epsilon_given())
    e["epsilon"] = c.epsilons;
  else
    e["p"] = c.probabilities;
  e["trials"] = c.trials;
  e["seed"] = std::to_string(c.master_seed);

  ojson params = ojson::object();
  switch (c.kind) {
    case ExperimentKind::kPhasePortrait:
      break;
    case ExperimentKind::kExpansion:
      params["alpha"] = c.alpha;
      params["ell"] = c.ell;
      params["budget"] = c.budget;
      break;
    case ExperimentKind::kCycles:
      params["restarts"] = c.restarts;
      params["census_max_length"] = c.census_max_length;
      break;
    case ExperimentKind::kMinors:
      params["ell"] = c.ell;
      params["target_t"] = c.target_t;
      params["budget"] = c.budget;
      break;
    case ExperimentKind::kGenus:
      params["face_threshold"] = c.face_threshold;
      break;
    case ExperimentKind::kIsoVerify:
      params["set_size"] = c.set_size;
      break;
    case ExperimentKind::kSprinkleCheck:
      params["q1"] = c.q1;
      break;
  }
  e["params"] = std::move(params);
  return e;
}

// Integral doubles print as JSON integers, so counts stay counts; everything
// here was rounded to 12 significant digits already.
ojson cell_json(const Cell& c) {
  if (c.is_text) return ojson(c.text);
  if (c.num == std::floor(c.num) && std::fabs(c.num) <= 9.007199254740992e15)
    return ojson(int64_t(c.num));
  return ojson(c.num);
}

}  // namespace

const char* kind_name(ExperimentKind kind) {
  for (const auto& e : kKinds)
    if (e.kind == kind) return e.name;
  throw std::logic_error("kind_name: unknown kind");
}

uint64_t kind_tag(ExperimentKind kind) { return uint64_t(kind); }

uint64_t parse_seed_string(const std::string& text, const std::string& path) {
  if (text.empty() ||
      text.find_first_not_of("0123456789") != std::string::npos)
    throw ConfigError(path, "must be a decimal uint64, got \"" + text + "\"");
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (errno == ERANGE || end != text.c_str() + text.size())
    throw ConfigError(path, "out of uint64 range: \"" + text + "\"");
  return v;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");

  static const std::set<std::string> kTopKeys = {
      "kind", "d",   "epsilon", "p",       "trials",
      "seed", "out", "format",  "threads", "params"};
  for (const auto& item : doc.items())
    if (!kTopKeys.count(item.key()))
      throw ConfigError(item.key(), "unknown field");

  ExperimentConfig c;

  if (!doc.contains("kind")) throw ConfigError("kind", "required");
  if (!doc["kind"].is_string())
    throw ConfigError("kind", "must be a string");
  {
    const std::string name = doc["kind"].get<std::string>();
    const KindEntry* hit = nullptr;
    for (const auto& e : kKinds)
      if (name == e.name) hit = &e;
    if (!hit) {
      std::string known;
      for (const auto& e : kKinds) {
        if (!known.empty()) known += ", ";
        known += e.name;
      }
      throw ConfigError("kind", "unknown kind \"" + name + "\"; one of " +
                                    known);
    }
    c.kind = hit->kind;
  }

  if (!doc.contains("d")) throw ConfigError("d", "required");
  c.dims = get_axis<uint32_t>(doc["d"], "d",
                              [](const json& j, const std::string& path) {
                                return uint32_t(get_uint(j, path, 2, 30));
                              });

  const bool has_eps = doc.contains("epsilon");
  const bool has_p = doc.contains("p");
  if (has_eps == has_p)
    throw ConfigError(has_eps ? "epsilon" : "p",
                      "exactly one of epsilon and p must be given");
  auto num_parser = [](const json& j, const std::string& path) {
    return get_double(j, path);
  };
  if (has_eps)
    c.epsilons = get_axis<double>(doc["epsilon"], "epsilon", num_parser);
  else
    c.probabilities = get_axis<double>(doc["p"], "p", num_parser);

  if (doc.contains("trials"))
    c.trials = uint32_t(get_uint(doc["trials"], "trials", 1, 1000000));
  if (doc.contains("seed")) {
    const json& j = doc["seed"];
    if (j.is_string())
      c.master_seed = parse_seed_string(j.get<std::string>(), "seed");
    else
      c.master_seed = get_uint(j, "seed", 0, UINT64_MAX);
  }
  if (doc.contains("out")) {
    if (!doc["out"].is_string() || doc["out"].get<std::string>().empty())
      throw ConfigError("out", "must be a nonempty string");
    c.out_base = doc["out"].get<std::string>();
  }
  if (doc.contains("format")) {
    if (!doc["format"].is_string())
      throw ConfigError("format", "must be a string");
    const std::string f = doc["format"].get<std::string>();
    if (f != "csv" && f != "json" && f != "both")
      throw ConfigError("format", "must be csv, json or both");
    c.format = f;
  }
  if (doc.contains("threads"))
    c.threads = uint32_t(get_uint(doc["threads"], "threads", 1, 256));

  if (doc.contains("params")) {
    const json& params = doc["params"];
    if (!params.is_object())
      throw ConfigError("params", "must be an object");
    const auto& allowed = params_for(c.kind);
    for (const auto& item : params.items()) {
      const std::string path = "params." + item.key();
      if (!allowed.count(item.key()))
        throw ConfigError(path, std::string("not a parameter of kind ") +
                                    kind_name(c.kind));
      const json& v = item.value();
      if (item.key() == "alpha") c.alpha = get_double(v, path);
      else if (item.key() == "ell") c.ell = get_uint(v, path, 0, UINT64_MAX);
      else if (item.key() == "budget")
        c.budget = get_uint(v, path, 0, UINT64_MAX);
      else if (item.key() == "restarts")
        c.restarts = uint32_t(get_uint(v, path, 1, 1000000));
      else if (item.key() == "census_max_length")
        c.census_max_length = uint32_t(get_uint(v, path, 0, UINT32_MAX));
      else if (item.key() == "target_t")
        c.target_t = uint32_t(get_uint(v, path, 0, 1000000));
      else if (item.key() == "face_threshold")
        c.face_threshold = uint32_t(get_uint(v, path, 0, UINT32_MAX));
      else if (item.key() == "set_size")
        c.set_size = get_uint(v, path, 0, UINT64_MAX);
      else if (item.key() == "q1") c.q1 = get_double(v, path);
    }
  }

  validate_cross_fields(c);
  return c;
}

ResultTable run_experiment(const ExperimentConfig& config) {
  validate_cross_fields(config);

  std::vector<TrialSpec> specs;
  specs.reserve(size_t(config.dims.size()) * axis(config).size() *
                config.trials);
  uint64_t row = 0;
  for (uint32_t d : config.dims)
    for (double x : axis(config))
      for (uint32_t t = 0; t < config.trials; ++t, ++row)
        specs.push_back(
            {d, x, trial_seed(config.master_seed, row, kind_tag(config.kind))});

  ResultTable table;
  table.config = config;
  table.columns = columns_for(config);
  table.trials.resize(specs.size());

  std::atomic<uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= specs.size()) return;
      try {
        table.trials[i] = run_trial(config, specs[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  const uint32_t pool_size = uint32_t(
      std::min<uint64_t>(config.threads, std::max<size_t>(specs.size(), 1)));
  if (pool_size <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(pool_size);
    for (uint32_t i = 0; i < pool_size; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  aggregate(table);
  return table;
}

std::string render_csv(const ResultTable& table) {
  std::string out = "record,stat";
  for (const auto& col : table.columns) {
    out += ',';
    out += col;
  }
  out += '\n';

  auto emit = [&out](const std::vector<Cell>& cells) {
    for (const Cell& cell : cells) {
      out += ',';
      if (cell.is_text) {
        if (cell.text.find_first_of(",\"\n") != std::string::npos)
          throw std::logic_error("render_csv: text cell would need quoting: " +
                                 cell.text);
        out += cell.text;
      } else {
        out += format_g12(cell.num);
      }
    }
    out += '\n';
  };

  for (const auto& row : table.trials) {
    out += "trial,";
    emit(row);
  }
  for (const auto& agg : table.aggregates) {
    out += "AGG,";
    out += agg.stat;
    emit(agg.cells);
  }
  return out;
}

std::string render_json(const ResultTable& table) {
  ojson root;
  root["kind"] = kind_name(table.config.kind);
  root["version"] = kVersion;
  root["config"] = config_echo(table.config);
  root["columns"] = table.columns;

  ojson trials = ojson::array();
  for (const auto& row : table.trials) {
    ojson obj;
    for (size_t i = 0; i < table.columns.size(); ++i)
      obj[table.columns[i]] = cell_json(row[i]);
    trials.push_back(std::move(obj));
  }
  root["trials"] = std::move(trials);

  ojson aggs = ojson::array();
  for (const auto& agg : table.aggregates) {
    ojson obj;
    obj["stat"] = agg.stat;
    for (size_t i = 0; i < table.columns.size(); ++i) {
      const Cell& cell = agg.cells[i];
      if (cell.is_text && cell.text.empty()) continue;  // seed / text columns
      obj[table.columns[i]] = cell_json(cell);
    }
    aggs.push_back(std::move(obj));
  }
  root["aggregates"] = std::move(aggs);

  return root.dump(2) + "\n";
}

std::vector<std::string> write_report(const ResultTable& table,
                                      const std::string& out_base,
                                      const std::string& format) {
  if (format != "csv" && format != "json" && format != "both")
    throw ConfigError("format", "must be csv, json or both");

  std::vector<std::string> paths;
  auto write_file = [&paths](const std::string& path,
                             const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_report: cannot open " + path);
    f << text;
    f.flush();
    if (!f) throw std::runtime_error("write_report: short write to " + path);
    paths.push_back(path);
  };

  if (format != "json") write_file(out_base + ".csv", render_csv(table));
  if (format != "csv") write_file(out_base + ".json", render_json(table));
  return paths;
}

const char* result_schema_json() {
  return R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "ExperimentResult",
  "description": "One experiment run: config echo, per-trial rows, aggregate rows grouped by the parameter columns left of the seed.",
  "type": "object",
  "required": ["kind", "version", "config", "columns", "trials", "aggregates"],
  "additionalProperties": false,
  "properties": {
    "kind": {
      "type": "string",
      "enum": ["phase_portrait", "expansion", "cycles", "minors", "genus", "iso_verify", "sprinkle_check"]
    },
    "version": { "type": "string" },
    "config": {
      "type": "object",
      "required": ["kind", "d", "trials", "seed", "params"],
      "additionalProperties": false,
      "properties": {
        "kind": { "type": "string" },
        "d": {
          "type": "array",
          "minItems": 1,
          "items": { "type": "integer", "minimum": 2, "maximum": 30 }
        },
        "epsilon": { "type": "array", "minItems": 1, "items": { "type": "number" } },
        "p": {
          "type": "array",
          "minItems": 1,
          "items": { "type": "number", "minimum": 0, "maximum": 1 }
        },
        "trials": { "type": "integer", "minimum": 1 },
        "seed": { "type": "string", "pattern": "^[0-9]+$" },
        "params": { "type": "object" }
      }
    },
    "columns": { "type": "array", "minItems": 1, "items": { "type": "string" } },
    "trials": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["d", "seed"],
        "properties": {
          "d": { "type": "integer" },
          "seed": { "type": "string", "pattern": "^[0-9]+$" }
        }
      }
    },
    "aggregates": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["stat", "d"],
        "properties": {
          "stat": {
            "type": "string",
            "enum": ["mean", "stddev", "min", "max", "q10", "q25", "q50", "q75", "q90"]
          }
        }
      }
    }
  }
}
)";
}

}  // namespace cubelab
