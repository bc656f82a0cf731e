#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "swarmcongest/launchzone.hpp"
#include "swarmcongest/metrics.hpp"
#include "swarmcongest/sim.hpp"
#include "swarmcongest/stats.hpp"

namespace swarmcongest {

inline constexpr const char* kWorkersEnv = "SWARMCONGEST_WORKERS";

struct SweepConfig {
  std::filesystem::path world_path;
  std::vector<std::string> building_set;
  std::vector<double> spacings;
  std::vector<std::size_t> wave_counts;
  std::vector<Pattern> patterns{Pattern::Square};
  std::size_t trials_per_cell = 10;
  double post_wave_duration_s = 1200.0;
  std::uint64_t base_seed = 1;
  std::filesystem::path output_dir;

  // Launch-zone manifest shared by every cell.
  std::size_t uav_count = 40;
  std::size_t rows = 5;
  std::size_t cols = 8;
  Platform platform = Platform::Solo;
  std::size_t downward_every = 5;  // every 5th vehicle looks down: 4 forward + 1 downward
  double inter_wave_delay_s = kDefaultInterWaveDelay;
  double launch_jitter_s = SimConfig{}.launch_jitter_s;

  std::size_t workers = 0;  // 0: environment variable, then hardware concurrency
  bool write_trial_logs = true;

  // Throws PreconditionError describing the first invalid field.
  void validate() const;
};

SweepConfig sweep_config_from_json(const nlohmann::json& j);
nlohmann::json sweep_config_to_json(const SweepConfig& config);
SweepConfig load_sweep_config(const std::filesystem::path& path);

// 40 UAVs, 8 buildings, spacing {2, 5} x waves {1, 2} x both patterns, 10 trials.
SweepConfig desk_scale_profile(const std::filesystem::path& world_path,
                               const std::filesystem::path& output_dir);
// 4 spacings x 5 wave counts x 2 patterns x 20 trials, 60 UAVs, 12 buildings.
SweepConfig paper_scale_profile(const std::filesystem::path& world_path,
                                const std::filesystem::path& output_dir);

struct SweepCell {
  double spacing = 0.0;
  std::size_t waves = 0;
  Pattern pattern = Pattern::Square;

  std::string key() const;             // e.g. "s2_w1_square"
  std::uint64_t cell_hash() const;     // stable across runs and cell sets
};

struct TrialOutcome {
  SweepCell cell;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  CongestionSummary summary;
  std::vector<IndependentBlock> blocks;
};

struct CellSummary {
  SweepCell cell;
  std::size_t trials = 0;
  CongestionSummary total;  // summed over trials
  double median_block_count = 0.0;
  double median_block_duration_min = 0.0;
  double mean_block_count = 0.0;
  double mean_block_duration_min = 0.0;
};

struct SweepResult {
  std::filesystem::path output_dir;
  std::vector<CellSummary> cells;
  std::vector<TrialOutcome> trials;  // cell order, then trial index

  const CellSummary& cell(double spacing, std::size_t waves, Pattern pattern) const;
};

std::vector<SweepCell> sweep_cells(const SweepConfig& config);
std::uint64_t trial_seed(const SweepConfig& config, const SweepCell& cell, std::size_t trial);

// Optional hook for per-step inspection of every trial (runs on worker threads).
using TrialObserverFactory =
    std::function<StepObserver(const SweepCell& cell, std::size_t trial)>;

// Runs every (cell, trial) on a bounded worker pool and writes trial logs,
// summaries, heatmaps, histograms and manifest.json under output_dir.
SweepResult run_sweep(const SweepConfig& config, const SimConfig& sim = {},
                      const TrialObserverFactory& observers = {});

std::size_t resolve_workers(std::size_t requested);

struct ComparisonReport {
  double bucket_s = 60.0;
  std::size_t buckets = 0;
  std::size_t sim_trials = 0;
  std::vector<double> real_counts;
  std::vector<double> sim_mean_counts;
  std::vector<double> real_duration_min;
  std::vector<double> sim_mean_duration_min;
  // Independent block durations, 10 s bins.
  std::vector<double> real_block_duration_hist;
  std::vector<double> sim_mean_block_duration_hist;
  std::optional<PearsonResult> count_correlation;     // empty when a series is constant
  std::optional<PearsonResult> duration_correlation;
};

inline constexpr double kDurationBinS = 10.0;

// Per-bucket block-count and duration series of a real log against the mean of
// the simulated logs. When span_s > 0 every log must end inside it.
ComparisonReport compare_real_vs_sim(const std::filesystem::path& real_log,
                                     const std::vector<std::filesystem::path>& sim_logs,
                                     double bucket_s = 60.0, double span_s = 0.0);

void write_comparison(const ComparisonReport& report, const std::filesystem::path& dir);

}  // namespace swarmcongest
