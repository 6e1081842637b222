// Regenerates the pilot fixtures under tests/fixtures/calibration/. Each
// campaign is deterministic, so rerunning a campaign must reproduce its
// committed file byte for byte; the acceptance suite freezes its thresholds
// from these numbers. Usage: calibrate [campaign ...] with no arguments
// running everything. Timing goes to stderr, results to stdout.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "cubelab/format.hpp"
#include "pilots.hpp"

namespace {

void emit(const std::string& key, double value) {
  std::printf("%s = %s\n", key.c_str(), cubelab::format_g12(value).c_str());
}

void emit(const std::string& key, uint64_t value) {
  std::printf("%s = %llu\n", key.c_str(),
              static_cast<unsigned long long>(value));
}

void run_phase() {
  const auto r = pilots::run_phase_pilot();
  emit("phase.mean_largest_frac", r.mean_frac);
  emit("phase.survival_fixed_point", r.gamma);
  emit("phase.abs_deviation", r.abs_dev);
  emit("phase.subcritical_small_frac", r.small_ok_frac);
}

void run_second() {
  const auto r = pilots::run_second_pilot();
  emit("second.max_second_frac", r.max_second_frac);
}

void run_exact4() {
  const auto r = pilots::run_exact4_pilot();
  emit("exact4.tried", uint64_t(r.tried));
  emit("exact4.compared", uint64_t(r.compared));
  emit("exact4.equal", uint64_t(r.equal));
}

void run_beta() {
  const auto r = pilots::run_beta_pilot();
  emit("beta.min_beta_edge", r.min_beta_edge);
  emit("beta.min_chain_slack", r.min_chain_slack);
  emit("beta.mean_lemma_ratio", r.mean_lemma_ratio);
  emit("beta.max_lemma_ratio", r.max_lemma_ratio);
  emit("beta.lemma_failures", uint64_t(r.lemma_failures));
  emit("beta.chain_failures", uint64_t(r.chain_failures));
}

void run_middle() {
  const auto r = pilots::run_middle_pilot();
  emit("middle.max_ratio", r.max_ratio);
}

void run_genus() {
  const auto r = pilots::run_genus_pilot();
  emit("genus.mean_bound_frac", r.mean_bound_frac);
  emit("genus.mean_excess_frac", r.mean_excess_frac);
  emit("genus.min_excess", double(r.min_excess));
}

void run_fuzz() {
  const auto r = pilots::run_fuzz_pilot();
  emit("fuzz.samples", uint64_t(r.samples));
  emit("fuzz.cycles_found", uint64_t(r.cycles_found));
  emit("fuzz.cycle_failures", uint64_t(r.cycle_failures));
  emit("fuzz.minor_failures", uint64_t(r.minor_failures));
}

void run_growth() {
  const auto r = pilots::run_growth_pilot();
  emit("growth.mean_length_d10", r.mean_length[0]);
  emit("growth.mean_length_d12", r.mean_length[1]);
  emit("growth.mean_length_d14", r.mean_length[2]);
  emit("growth.length_ratio_12_10", r.length_ratio_12_10);
  emit("growth.length_ratio_14_12", r.length_ratio_14_12);
  emit("growth.mean_t_d10", r.mean_t[0]);
  emit("growth.mean_t_d12", r.mean_t[1]);
  emit("growth.mean_t_d14", r.mean_t[2]);
  emit("growth.minor_failures", uint64_t(r.minor_failures));
}

void run_sprinkle() {
  const auto r = pilots::run_sprinkle_pilot();
  emit("sprinkle.max_abs_sigma", r.max_abs_sigma);
  emit("sprinkle.all_contained", uint64_t(r.all_contained ? 1 : 0));
}

void run_small_sets() {
  const auto r = pilots::run_small_set_pilot();
  for (uint32_t i = 0; i < pilots::SmallSetPilot::kSizeCount; ++i) {
    const std::string base =
        "small_sets.size_" + std::to_string(r.sizes[i]);
    emit(base + ".max_ratio", r.max_ratio[i]);
    emit(base + ".failures", uint64_t(r.failures[i]));
  }
}

void run_tiny_cycle() {
  const auto r = pilots::run_tiny_cycle_pilot();
  emit("tiny_cycle.min_length", r.min_length);
  emit("tiny_cycle.misses", uint64_t(r.misses));
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<std::string, std::function<void()>> campaigns = {
      {"phase", run_phase},       {"second", run_second},
      {"exact4", run_exact4},     {"beta", run_beta},
      {"middle", run_middle},     {"genus", run_genus},
      {"fuzz", run_fuzz},         {"growth", run_growth},
      {"sprinkle", run_sprinkle}, {"small_sets", run_small_sets},
      {"tiny_cycle", run_tiny_cycle},
  };

  std::vector<std::string> picked;
  for (int i = 1; i < argc; ++i) picked.push_back(argv[i]);
  if (picked.empty())
    for (const auto& [name, fn] : campaigns) picked.push_back(name);

  for (const auto& name : picked) {
    const auto it = campaigns.find(name);
    if (it == campaigns.end()) {
      std::cerr << "unknown campaign \"" << name << "\"; known:";
      for (const auto& [known, fn] : campaigns) std::cerr << ' ' << known;
      std::cerr << '\n';
      return 2;
    }
    const auto start = std::chrono::steady_clock::now();
    it->second();
    const std::chrono::duration<double> wall =
        std::chrono::steady_clock::now() - start;
    std::fprintf(stderr, "%s: %.2fs\n", name.c_str(), wall.count());
  }
  return 0;
}
