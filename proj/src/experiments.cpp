#include "swarmcongest/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "swarmcongest/error.hpp"
#include "swarmcongest/rng.hpp"

namespace swarmcongest {

namespace {

std::string fmt_double(double v, const char* spec = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string fmt_short(double v) { return fmt_double(v, "%g"); }

}  // namespace

void SweepConfig::validate() const {
  if (trials_per_cell < 1) throw PreconditionError("trials per cell must be >= 1");
  if (spacings.empty() || wave_counts.empty() || patterns.empty()) {
    throw PreconditionError("sweep needs at least one spacing, wave count and pattern");
  }
  for (double s : spacings) {
    if (!(s > 0.0)) throw PreconditionError("spacings must be positive");
  }
  if (building_set.empty()) throw PreconditionError("building set is empty");
  for (std::size_t w : wave_counts) {
    if (w == 0 || building_set.size() % w != 0) {
      throw PreconditionError(std::to_string(w) + " waves do not divide " +
                              std::to_string(building_set.size()) + " buildings");
    }
  }
  if (rows * cols < uav_count) throw PreconditionError("rows x cols smaller than UAV count");
  if (!(launch_jitter_s >= 0.0)) throw PreconditionError("launch jitter must be >= 0");
  if (!(post_wave_duration_s >= 0.0)) throw PreconditionError("post-wave duration must be >= 0");
  if (output_dir.empty()) throw PreconditionError("output directory not set");
}

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
  try {
    SweepConfig c;
    c.world_path = j.at("world").get<std::string>();
    c.building_set = j.at("building_set").get<std::vector<std::string>>();
    c.spacings = j.at("spacings").get<std::vector<double>>();
    c.wave_counts = j.at("wave_counts").get<std::vector<std::size_t>>();
    c.patterns.clear();
    for (const auto& p : j.value("patterns", std::vector<std::string>{"square"})) {
      c.patterns.push_back(parse_pattern(p));
    }
    c.trials_per_cell = j.value("trials_per_cell", c.trials_per_cell);
    c.post_wave_duration_s = j.value("post_wave_duration_s", c.post_wave_duration_s);
    c.base_seed = j.value("base_seed", c.base_seed);
    c.output_dir = j.value("output_dir", std::string{});
    c.uav_count = j.value("uav_count", c.uav_count);
    c.rows = j.value("rows", c.rows);
    c.cols = j.value("cols", c.cols);
    c.platform = parse_platform(j.value("platform", std::string(to_string(c.platform))));
    c.downward_every = j.value("downward_every", c.downward_every);
    c.inter_wave_delay_s = j.value("inter_wave_delay_s", c.inter_wave_delay_s);
    c.launch_jitter_s = j.value("launch_jitter_s", c.launch_jitter_s);
    c.workers = j.value("workers", c.workers);
    c.write_trial_logs = j.value("write_trial_logs", c.write_trial_logs);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("sweep config: ") + e.what());
  }
}

nlohmann::json sweep_config_to_json(const SweepConfig& c) {
  nlohmann::ordered_json j;
  j["world"] = c.world_path.string();
  j["building_set"] = c.building_set;
  j["spacings"] = c.spacings;
  j["wave_counts"] = c.wave_counts;
  auto patterns = nlohmann::ordered_json::array();
  for (Pattern p : c.patterns) patterns.push_back(to_string(p));
  j["patterns"] = patterns;
  j["trials_per_cell"] = c.trials_per_cell;
  j["post_wave_duration_s"] = c.post_wave_duration_s;
  j["base_seed"] = c.base_seed;
  j["output_dir"] = c.output_dir.string();
  j["uav_count"] = c.uav_count;
  j["rows"] = c.rows;
  j["cols"] = c.cols;
  j["platform"] = to_string(c.platform);
  j["downward_every"] = c.downward_every;
  j["inter_wave_delay_s"] = c.inter_wave_delay_s;
  j["launch_jitter_s"] = c.launch_jitter_s;
  j["write_trial_logs"] = c.write_trial_logs;
  return j;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open sweep config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  auto c = sweep_config_from_json(j);
  // Relative world paths resolve against the config file's directory.
  if (c.world_path.is_relative()) c.world_path = path.parent_path() / c.world_path;
  return c;
}

SweepConfig desk_scale_profile(const std::filesystem::path& world_path,
                               const std::filesystem::path& output_dir) {
  SweepConfig c;
  c.world_path = world_path;
  c.building_set = {"12", "4c", "16", "28", "21", "34", "24", "43"};
  c.spacings = {2.0, 5.0};
  c.wave_counts = {1, 2};
  c.patterns = {Pattern::Square, Pattern::Hexagonal};
  c.trials_per_cell = 10;
  c.uav_count = 40;
  c.rows = 5;
  c.cols = 8;
  c.output_dir = output_dir;
  return c;
}

SweepConfig paper_scale_profile(const std::filesystem::path& world_path,
                                const std::filesystem::path& output_dir) {
  SweepConfig c;
  c.world_path = world_path;
  c.building_set = {"4c", "7", "9", "12", "16", "21", "24", "28", "31", "34", "37b", "43"};
  c.spacings = {2.0, 3.0, 4.0, 5.0};
  c.wave_counts = {1, 2, 3, 4, 6};
  c.patterns = {Pattern::Square, Pattern::Hexagonal};
  c.trials_per_cell = 20;
  c.uav_count = 60;
  // 6 x 10 at 5 m spans 45 m and overflows a 41 m zone; 8 x 8 fits every cell.
  c.rows = 8;
  c.cols = 8;
  c.output_dir = output_dir;
  return c;
}

std::string SweepCell::key() const {
  return "s" + fmt_short(spacing) + "_w" + std::to_string(waves) + "_" +
         std::string(to_string(pattern));
}

std::uint64_t SweepCell::cell_hash() const {
  return stable_hash("spacing=" + fmt_double(spacing) + ";waves=" + std::to_string(waves) +
                     ";pattern=" + std::string(to_string(pattern)));
}

const CellSummary& SweepResult::cell(double spacing, std::size_t waves, Pattern pattern) const {
  for (const auto& c : cells) {
    if (std::abs(c.cell.spacing - spacing) < 1e-9 && c.cell.waves == waves &&
        c.cell.pattern == pattern) {
      return c;
    }
  }
  throw PreconditionError("sweep has no such cell");
}

std::vector<SweepCell> sweep_cells(const SweepConfig& config) {
  std::vector<SweepCell> out;
  for (Pattern p : config.patterns) {
    for (std::size_t w : config.wave_counts) {
      for (double s : config.spacings) out.push_back({s, w, p});
    }
  }
  return out;
}

std::uint64_t trial_seed(const SweepConfig& config, const SweepCell& cell, std::size_t trial) {
  return config.base_seed + cell.cell_hash() + trial;
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv(kWorkersEnv)) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config, const SimConfig& sim,
                      const TrialObserverFactory& observers) {
  config.validate();
  const World world = load_world(config.world_path);
  const auto manifest = uniform_manifest(config.uav_count, config.platform, config.downward_every);
  const auto cells = sweep_cells(config);

  // Inputs per cell are built up front so workers share nothing mutable.
  struct CellInputs {
    LaunchZoneLayout layout;
    MissionPlan plan;
  };
  std::vector<CellInputs> inputs;
  for (const auto& cell : cells) {
    inputs.push_back({generate_layout(world, cell.pattern, cell.spacing, manifest, config.rows,
                                      config.cols),
                      build_mission_plan(world, config.building_set, cell.waves,
                                         config.inter_wave_delay_s)});
  }

  const auto& out = config.output_dir;
  std::filesystem::create_directories(out / "cells");
  for (const auto& cell : cells) std::filesystem::create_directories(out / "cells" / cell.key());

  SimConfig trial_sim = sim;
  trial_sim.post_wave_duration_s = config.post_wave_duration_s;
  trial_sim.launch_jitter_s = config.launch_jitter_s;

  const std::size_t total = cells.size() * config.trials_per_cell;
  std::vector<TrialOutcome> outcomes(total);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    for (std::size_t task = next++; task < total; task = next++) {
      try {
        const std::size_t c = task / config.trials_per_cell;
        const std::size_t i = task % config.trials_per_cell;
        const auto& cell = cells[c];
        TrialOutcome o;
        o.cell = cell;
        o.trial = i;
        o.seed = trial_seed(config, cell, i);
        const StepObserver observer = observers ? observers(cell, i) : StepObserver{};
        const TrialLog log =
            run_trial(world, inputs[c].layout, inputs[c].plan, o.seed, trial_sim, {}, observer);
        o.blocks = merge_blocks(raw_blocks(log.records));
        o.summary = summarize(o.blocks);
        if (config.write_trial_logs) {
          write_trial_log(out / "cells" / cell.key() / ("trial_" + std::to_string(i) + ".jsonl"),
                          log);
        }
        outcomes[task] = std::move(o);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const std::size_t n_workers = std::min(resolve_workers(config.workers), std::max<std::size_t>(1, total));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  // Aggregation is serial and in cell order.
  SweepResult result;
  result.output_dir = out;
  std::string trials_csv =
      "spacing,waves,pattern,trial,seed,total_block_count,total_block_duration_min\n";
  std::string summary_csv =
      "spacing,waves,pattern,trials,total_block_count,total_block_duration_min,"
      "mean_block_count,median_block_count,mean_block_duration_min,median_block_duration_min\n";
  nlohmann::ordered_json manifest_cells = nlohmann::ordered_json::array();

  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& cell = cells[c];
    CellSummary cs;
    cs.cell = cell;
    cs.trials = config.trials_per_cell;
    std::vector<double> counts;
    std::vector<double> durations;
    std::vector<IndependentBlock> all_blocks;
    nlohmann::ordered_json seeds = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < config.trials_per_cell; ++i) {
      const auto& o = outcomes[c * config.trials_per_cell + i];
      cs.total.total_block_count += o.summary.total_block_count;
      cs.total.total_block_duration_ms += o.summary.total_block_duration_ms;
      counts.push_back(static_cast<double>(o.summary.total_block_count));
      durations.push_back(o.summary.total_block_duration_min());
      all_blocks.insert(all_blocks.end(), o.blocks.begin(), o.blocks.end());
      seeds.push_back(o.seed);
      trials_csv += fmt_short(cell.spacing) + "," + std::to_string(cell.waves) + "," +
                    std::string(to_string(cell.pattern)) + "," + std::to_string(i) + "," +
                    std::to_string(o.seed) + "," + std::to_string(o.summary.total_block_count) +
                    "," + fmt_double(o.summary.total_block_duration_min()) + "\n";
    }
    cs.median_block_count = median(counts);
    cs.median_block_duration_min = median(durations);
    for (double v : counts) cs.mean_block_count += v / counts.size();
    for (double v : durations) cs.mean_block_duration_min += v / durations.size();
    summary_csv += fmt_short(cell.spacing) + "," + std::to_string(cell.waves) + "," +
                   std::string(to_string(cell.pattern)) + "," + std::to_string(cs.trials) + "," +
                   std::to_string(cs.total.total_block_count) + "," +
                   fmt_double(cs.total.total_block_duration_min()) + "," +
                   fmt_double(cs.mean_block_count) + "," + fmt_double(cs.median_block_count) + "," +
                   fmt_double(cs.mean_block_duration_min) + "," +
                   fmt_double(cs.median_block_duration_min) + "\n";

    const auto dir = out / "cells" / cell.key();
    const Grid count_map = heatmap(all_blocks, world.bounds(), kDefaultHeatmapCell, HeatmapWeight::Count);
    const Grid duration_map =
        heatmap(all_blocks, world.bounds(), kDefaultHeatmapCell, HeatmapWeight::Duration);
    write_heatmap_csv(count_map, dir / "heatmap_count.csv");
    write_heatmap_pgm(count_map, dir / "heatmap_count.pgm");
    write_heatmap_csv(duration_map, dir / "heatmap_duration.csv");
    write_heatmap_pgm(duration_map, dir / "heatmap_duration.pgm");
    write_histogram_csv(start_time_histogram(all_blocks, kDefaultHistogramBucket), kDefaultHistogramBucket,
                        dir / "histogram.csv");

    nlohmann::ordered_json mc;
    mc["key"] = cell.key();
    mc["spacing"] = cell.spacing;
    mc["waves"] = cell.waves;
    mc["pattern"] = to_string(cell.pattern);
    mc["cell_hash"] = cell.cell_hash();
    mc["seeds"] = seeds;
    manifest_cells.push_back(mc);
    result.cells.push_back(cs);
  }
  result.trials = std::move(outcomes);

  write_text(out / "trials.csv", trials_csv);
  write_text(out / "summary.csv", summary_csv);
  nlohmann::ordered_json manifest_json;
  manifest_json["config"] = sweep_config_to_json(config);
  manifest_json["sim"] = {{"step_ms", trial_sim.step_ms},
                          {"cruise_speed", trial_sim.cruise_speed},
                          {"vertical_speed", trial_sim.vertical_speed},
                          {"hover_multiplier", trial_sim.hover_multiplier},
                          {"rtl_threshold", trial_sim.rtl_threshold},
                          {"dwell_s", trial_sim.dwell_s},
                          {"launch_jitter_s", trial_sim.launch_jitter_s},
                          {"sample_budget", trial_sim.planner.sample_budget}};
  manifest_json["cells"] = manifest_cells;
  write_text(out / "manifest.json", manifest_json.dump(2) + "\n");
  return result;
}

namespace {

struct Series {
  std::vector<double> counts;
  std::vector<double> duration_min;
  std::vector<double> duration_hist;
};

Series series_of(const std::vector<IndependentBlock>& blocks, double bucket_s, std::size_t buckets,
                 std::size_t duration_bins) {
  Series s;
  s.counts.assign(buckets, 0.0);
  s.duration_min.assign(buckets, 0.0);
  s.duration_hist.assign(duration_bins, 0.0);
  for (const auto& b : blocks) {
    const auto i = static_cast<std::size_t>(std::floor(b.start_ms / (bucket_s * 1000.0)));
    s.counts[i] += 1.0;
    s.duration_min[i] += b.duration_ms / 60'000.0;
    const auto d = static_cast<std::size_t>(std::floor(b.duration_ms / (kDurationBinS * 1000.0)));
    s.duration_hist[std::min(d, duration_bins - 1)] += 1.0;
  }
  return s;
}

std::optional<PearsonResult> try_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  try {
    return pearson(x, y);
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
}

}  // namespace

ComparisonReport compare_real_vs_sim(const std::filesystem::path& real_log,
                                     const std::vector<std::filesystem::path>& sim_logs,
                                     double bucket_s, double span_s) {
  if (sim_logs.empty()) throw PreconditionError("comparison needs at least one simulated log");
  if (!(bucket_s > 0.0)) throw PreconditionError("bucket must be positive");

  const auto real = merge_blocks(ingest_block_log(real_log));
  std::vector<std::vector<IndependentBlock>> sims;
  for (const auto& p : sim_logs) sims.push_back(merge_blocks(ingest_block_log(p)));

  std::int64_t last_start = 0;
  std::int64_t longest = 0;
  auto scan = [&](const std::vector<IndependentBlock>& blocks, const std::filesystem::path& p) {
    for (const auto& b : blocks) {
      if (span_s > 0.0 && b.start_ms >= std::llround(span_s * 1000.0)) {
        throw PreconditionError("log " + p.string() + " runs past the " + fmt_short(span_s) +
                                " s comparison span (mismatched durations)");
      }
      last_start = std::max(last_start, b.start_ms);
      longest = std::max(longest, b.duration_ms);
    }
  };
  scan(real, real_log);
  for (std::size_t k = 0; k < sims.size(); ++k) scan(sims[k], sim_logs[k]);

  ComparisonReport r;
  r.bucket_s = bucket_s;
  r.sim_trials = sims.size();
  r.buckets = span_s > 0.0
                  ? static_cast<std::size_t>(std::ceil(span_s / bucket_s))
                  : static_cast<std::size_t>(std::floor(last_start / (bucket_s * 1000.0))) + 1;
  const std::size_t bins =
      static_cast<std::size_t>(std::floor(longest / (kDurationBinS * 1000.0))) + 1;

  const Series rs = series_of(real, bucket_s, r.buckets, bins);
  r.real_counts = rs.counts;
  r.real_duration_min = rs.duration_min;
  r.real_block_duration_hist = rs.duration_hist;
  r.sim_mean_counts.assign(r.buckets, 0.0);
  r.sim_mean_duration_min.assign(r.buckets, 0.0);
  r.sim_mean_block_duration_hist.assign(bins, 0.0);
  const double w = 1.0 / static_cast<double>(sims.size());
  for (const auto& blocks : sims) {
    const Series s = series_of(blocks, bucket_s, r.buckets, bins);
    for (std::size_t i = 0; i < r.buckets; ++i) {
      r.sim_mean_counts[i] += w * s.counts[i];
      r.sim_mean_duration_min[i] += w * s.duration_min[i];
    }
    for (std::size_t i = 0; i < bins; ++i) r.sim_mean_block_duration_hist[i] += w * s.duration_hist[i];
  }
  r.count_correlation = try_pearson(r.real_counts, r.sim_mean_counts);
  r.duration_correlation = try_pearson(r.real_duration_min, r.sim_mean_duration_min);
  return r;
}

void write_comparison(const ComparisonReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::string csv = "bucket_start_s,real_count,sim_mean_count,real_duration_min,sim_mean_duration_min\n";
  for (std::size_t i = 0; i < report.buckets; ++i) {
    csv += fmt_short(i * report.bucket_s) + "," + fmt_double(report.real_counts[i]) + "," +
           fmt_double(report.sim_mean_counts[i]) + "," + fmt_double(report.real_duration_min[i]) +
           "," + fmt_double(report.sim_mean_duration_min[i]) + "\n";
  }
  write_text(dir / "comparison.csv", csv);

  std::string hist = "duration_bin_start_s,real_blocks,sim_mean_blocks\n";
  for (std::size_t i = 0; i < report.real_block_duration_hist.size(); ++i) {
    hist += fmt_short(i * kDurationBinS) + "," + fmt_double(report.real_block_duration_hist[i]) +
            "," + fmt_double(report.sim_mean_block_duration_hist[i]) + "\n";
  }
  write_text(dir / "duration_histogram.csv", hist);

  auto corr = [](const std::optional<PearsonResult>& p) -> nlohmann::ordered_json {
    if (!p) return nullptr;
    return {{"r", p->r}, {"n", p->n}, {"p", p->p}};
  };
  nlohmann::ordered_json j;
  j["bucket_s"] = report.bucket_s;
  j["buckets"] = report.buckets;
  j["sim_trials"] = report.sim_trials;
  j["count_correlation"] = corr(report.count_correlation);
  j["duration_correlation"] = corr(report.duration_correlation);
  write_text(dir / "report.json", j.dump(2) + "\n");
}

}  // namespace swarmcongest
