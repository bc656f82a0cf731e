// swarmcongest: launch-zone layout, mission planning, congestion simulation
// and analysis from the command line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swarmcongest/error.hpp"
#include "swarmcongest/experiments.hpp"
#include "swarmcongest/launchzone.hpp"
#include "swarmcongest/metrics.hpp"
#include "swarmcongest/mission.hpp"
#include "swarmcongest/sim.hpp"
#include "swarmcongest/stats.hpp"
#include "swarmcongest/world.hpp"

using namespace swarmcongest;

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw ParseError("no column '" + name + "'");
  }
};

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    out.push_back(cell);
  }
  return out;
}

Table read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file");
  t.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto row = split(line);
    if (row.size() != t.header.size()) throw ParseError(path + ": ragged row: " + line);
    t.rows.push_back(std::move(row));
  }
  return t;
}

double to_number(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError("not a number: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("not a number: " + s);
  }
}

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

Rect parse_zone(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) throw ParseError("zone must look like 37x41");
  const double w = to_number(s.substr(0, x));
  const double h = to_number(s.substr(x + 1));
  return Rect{{0.0, 0.0}, {w, h}};
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Launch-zone congestion simulator for UAV swarms"};
  app.require_subcommand(1);

  // capacity
  auto* capacity = app.add_subcommand("capacity", "Maximum vehicles a rectangular zone holds");
  std::string cap_zone = "37x41";
  std::string cap_world;
  std::size_t cap_ugvs = 0;
  std::size_t cap_uavs = std::numeric_limits<std::size_t>::max();
  std::size_t cap_max_columns = std::numeric_limits<std::size_t>::max();
  std::size_t cap_ugv_columns = std::numeric_limits<std::size_t>::max();
  std::string cap_grouping = "row-mixed";
  std::string cap_pattern = "square";
  capacity->add_option("--zone", cap_zone, "Zone size WxH in metres");
  capacity->add_option("--world", cap_world, "Use the world's launch-zone bounding box");
  capacity->add_option("--ugvs", cap_ugvs, "UGVs wanted");
  capacity->add_option("--uavs", cap_uavs, "Upper bound on UAVs");
  capacity->add_option("--max-columns", cap_max_columns, "UAVs per row");
  capacity->add_option("--ugv-columns", cap_ugv_columns, "UGVs per block row");
  capacity->add_option("--grouping", cap_grouping, "row-mixed or separate")
      ->check(CLI::IsMember({"row-mixed", "separate"}));
  capacity->add_option("--pattern", cap_pattern, "square or hexagonal");

  // layout
  auto* layout_cmd = app.add_subcommand("layout", "Generate and validate a launch-zone layout");
  std::string lay_world;
  std::string lay_config;
  std::string lay_out;
  layout_cmd->add_option("--world", lay_world, "World JSON")->required();
  layout_cmd->add_option("--config", lay_config, "Launch-zone config JSON")->required();
  layout_cmd->add_option("--out", lay_out, "Output layout JSON (default stdout)");

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "Assign buildings to regions and waves");
  std::string plan_world;
  std::string plan_buildings;
  std::size_t plan_waves = 1;
  double plan_delay = kDefaultInterWaveDelay;
  std::string plan_out;
  plan_cmd->add_option("--world", plan_world, "World JSON")->required();
  plan_cmd->add_option("--buildings", plan_buildings, "Comma-separated building ids")->required();
  plan_cmd->add_option("--waves", plan_waves, "Number of waves");
  plan_cmd->add_option("--delay", plan_delay, "Inter-wave delay in seconds");
  plan_cmd->add_option("--out", plan_out, "Output plan JSON (default stdout)");

  // run
  auto* run_cmd = app.add_subcommand("run", "Simulate one trial");
  std::string run_world;
  std::string run_config;
  std::string run_plan;
  std::string run_buildings;
  std::size_t run_waves = 1;
  std::string run_pattern = "square";
  double run_spacing = 2.0;
  std::size_t run_uavs = 40;
  std::size_t run_rows = 5;
  std::size_t run_cols = 8;
  std::uint64_t run_seed = 1;
  double run_post = 1200.0;
  std::string run_out;
  double run_jitter = SimConfig{}.launch_jitter_s;
  run_cmd->add_option("--world", run_world, "World JSON")->required();
  run_cmd->add_option("--config", run_config, "Launch-zone config JSON (overrides grid options)");
  run_cmd->add_option("--plan", run_plan, "Mission plan JSON (overrides --buildings/--waves)");
  run_cmd->add_option("--buildings", run_buildings, "Comma-separated building ids");
  run_cmd->add_option("--waves", run_waves, "Number of waves");
  run_cmd->add_option("--pattern", run_pattern, "square or hexagonal");
  run_cmd->add_option("--spacing", run_spacing, "Grid spacing in metres");
  run_cmd->add_option("--uavs", run_uavs, "UAV count");
  run_cmd->add_option("--rows", run_rows, "Grid rows");
  run_cmd->add_option("--cols", run_cols, "Grid columns");
  run_cmd->add_option("--seed", run_seed, "Trial seed");
  run_cmd->add_option("--post-wave", run_post, "Seconds simulated after the last wave");
  run_cmd->add_option("--launch-jitter", run_jitter, "Max takeoff delay after binding, s");
  run_cmd->add_option("--log", run_out, "Write the trial log (JSON lines)");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep");
  std::string sweep_config;
  std::string sweep_profile;
  std::string sweep_world;
  std::string sweep_out;
  std::size_t sweep_workers = 0;
  std::size_t sweep_trials = 0;
  sweep_cmd->add_option("--config", sweep_config, "Sweep config JSON");
  sweep_cmd->add_option("--profile", sweep_profile, "desk or paper")
      ->check(CLI::IsMember({"desk", "paper"}));
  sweep_cmd->add_option("--world", sweep_world, "World JSON (profiles)");
  sweep_cmd->add_option("--out", sweep_out, "Output directory");
  sweep_cmd->add_option("--workers", sweep_workers,
                        std::string("Worker threads (default: $") + kWorkersEnv + ", then cores)");
  sweep_cmd->add_option("--trials", sweep_trials, "Override trials per cell");

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "Compare a real block log with simulated logs");
  std::string cmp_real;
  std::vector<std::string> cmp_sims;
  double cmp_bucket = 60.0;
  double cmp_span = 0.0;
  std::string cmp_out;
  compare_cmd->add_option("--real", cmp_real, "Real block log (CSV or JSON lines)")->required();
  compare_cmd->add_option("--sim", cmp_sims, "Simulated trial logs")->required();
  compare_cmd->add_option("--bucket", cmp_bucket, "Bucket width in seconds");
  compare_cmd->add_option("--span", cmp_span, "Expected mission span in seconds");
  compare_cmd->add_option("--out", cmp_out, "Output directory")->required();

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "ANOVA, Tukey HSD and Pearson on CSV columns");
  stats_cmd->require_subcommand(1);
  auto* anova_cmd = stats_cmd->add_subcommand("anova", "Between-groups ANOVA");
  std::string st_csv;
  std::string st_factors;
  std::string st_value;
  anova_cmd->add_option("--csv", st_csv)->required();
  anova_cmd->add_option("--factors", st_factors, "Comma-separated factor columns")->required();
  anova_cmd->add_option("--value", st_value, "Response column")->required();
  auto* tukey_cmd = stats_cmd->add_subcommand("tukey", "Tukey HSD");
  std::string st_group;
  double st_alpha = 0.05;
  tukey_cmd->add_option("--csv", st_csv)->required();
  tukey_cmd->add_option("--group", st_group, "Grouping column")->required();
  tukey_cmd->add_option("--value", st_value, "Response column")->required();
  tukey_cmd->add_option("--alpha", st_alpha);
  auto* pearson_cmd = stats_cmd->add_subcommand("pearson", "Pearson correlation");
  std::string st_x;
  std::string st_y;
  pearson_cmd->add_option("--csv", st_csv)->required();
  pearson_cmd->add_option("--x", st_x)->required();
  pearson_cmd->add_option("--y", st_y)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*capacity) {
      const Rect zone = cap_world.empty() ? parse_zone(cap_zone)
                                          : load_world(cap_world).launch_zone().bounding_box();
      MixRule rule;
      rule.grouping = cap_grouping == "separate" ? MixRule::Grouping::SeparateBlock
                                                 : MixRule::Grouping::RowMixed;
      rule.max_ugvs = cap_ugvs;
      rule.max_uavs = cap_uavs;
      rule.max_columns = cap_max_columns;
      rule.ugv_columns = cap_ugv_columns;
      const auto r = max_capacity(zone, rule, parse_pattern(cap_pattern));
      std::cout << "zone " << fmt(zone.width()) << " x " << fmt(zone.height()) << " m\n"
                << "rows " << r.rows << "\nugvs " << r.ugv_count << "\nuavs " << r.uav_count
                << "\n";
      return 0;
    }
    if (*layout_cmd) {
      const World world = load_world(lay_world);
      const auto config = load_launch_zone_config(lay_config);
      const auto layout = generate_layout(world, config);
      write_or_print(lay_out, layout_to_json(layout).dump(2) + "\n");
      std::cerr << layout.slots.size() << " slots, min clearance margin "
                << fmt(min_clearance_margin(layout)) << " m\n";
      return 0;
    }
    if (*plan_cmd) {
      const World world = load_world(plan_world);
      const auto plan = build_mission_plan(world, split_ids(plan_buildings), plan_waves, plan_delay);
      write_or_print(plan_out, mission_plan_to_json(plan).dump(2) + "\n");
      return 0;
    }
    if (*run_cmd) {
      const World world = load_world(run_world);
      const auto layout =
          run_config.empty()
              ? generate_layout(world, parse_pattern(run_pattern), run_spacing,
                                uniform_manifest(run_uavs, Platform::Solo, 5), run_rows, run_cols)
              : generate_layout(world, load_launch_zone_config(run_config));
      MissionPlan plan;
      if (!run_plan.empty()) {
        plan = load_mission_plan(run_plan);
      } else {
        if (run_buildings.empty()) throw PreconditionError("--buildings or --plan is required");
        plan = build_mission_plan(world, split_ids(run_buildings), run_waves);
      }
      SimConfig sim;
      sim.post_wave_duration_s = run_post;
      sim.launch_jitter_s = run_jitter;
      const auto log = run_trial(world, layout, plan, run_seed, sim);
      if (!run_out.empty()) write_trial_log(std::filesystem::path(run_out), log);
      const auto blocks = merge_blocks(raw_blocks(log.records));
      const auto s = summarize(blocks);
      std::cout << "seed " << run_seed << "\nindependent_blocks " << s.total_block_count
                << "\nblock_duration_min " << fmt(s.total_block_duration_min(), "%.4f") << "\n";
      return 0;
    }
    if (*sweep_cmd) {
      SweepConfig config;
      if (!sweep_config.empty()) {
        config = load_sweep_config(sweep_config);
      } else if (!sweep_profile.empty()) {
        if (sweep_world.empty()) throw PreconditionError("--world is required with --profile");
        config = sweep_profile == "desk" ? desk_scale_profile(sweep_world, sweep_out)
                                         : paper_scale_profile(sweep_world, sweep_out);
      } else {
        throw PreconditionError("--config or --profile is required");
      }
      if (!sweep_out.empty()) config.output_dir = sweep_out;
      if (sweep_workers > 0) config.workers = sweep_workers;
      if (sweep_trials > 0) config.trials_per_cell = sweep_trials;
      const auto result = run_sweep(config);
      std::cout << "spacing,waves,pattern,median_block_count,median_block_duration_min\n";
      for (const auto& c : result.cells) {
        std::cout << fmt(c.cell.spacing) << "," << c.cell.waves << "," << to_string(c.cell.pattern)
                  << "," << fmt(c.median_block_count) << ","
                  << fmt(c.median_block_duration_min, "%.4f") << "\n";
      }
      std::cerr << "wrote " << result.output_dir.string() << "\n";
      return 0;
    }
    if (*compare_cmd) {
      std::vector<std::filesystem::path> sims(cmp_sims.begin(), cmp_sims.end());
      const auto report = compare_real_vs_sim(cmp_real, sims, cmp_bucket, cmp_span);
      write_comparison(report, cmp_out);
      auto show = [](const char* name, const std::optional<PearsonResult>& p) {
        if (p) {
          std::cout << name << " r=" << fmt(p->r, "%.4f") << " n=" << p->n
                    << " p=" << fmt(p->p, "%.4g") << "\n";
        } else {
          std::cout << name << " undefined (constant series)\n";
        }
      };
      show("count", report.count_correlation);
      show("duration", report.duration_correlation);
      return 0;
    }
    if (*anova_cmd) {
      const Table t = read_csv(st_csv);
      const auto factors = split_ids(st_factors);
      std::vector<std::size_t> cols;
      for (const auto& f : factors) cols.push_back(t.column(f));
      const std::size_t value_col = t.column(st_value);
      std::vector<Observation> obs;
      for (const auto& row : t.rows) {
        Observation o;
        for (std::size_t c : cols) o.levels.push_back(row[c]);
        o.value = to_number(row[value_col]);
        obs.push_back(std::move(o));
      }
      const auto r = anova_between_groups(obs, factors);
      std::cout << "effect,ss,df,df_error,F,p\n";
      for (const auto& row : r.rows) {
        std::cout << row.effect << "," << fmt(row.sum_of_squares) << "," << row.df_effect << ","
                  << row.df_error << "," << fmt(row.f) << "," << fmt(row.p) << "\n";
      }
      return 0;
    }
    if (*tukey_cmd) {
      const Table t = read_csv(st_csv);
      const std::size_t g = t.column(st_group);
      const std::size_t v = t.column(st_value);
      std::vector<NamedGroup> groups;
      std::map<std::string, std::size_t> index;
      for (const auto& row : t.rows) {
        auto [it, fresh] = index.emplace(row[g], groups.size());
        if (fresh) groups.push_back({row[g], {}});
        groups[it->second].second.push_back(to_number(row[v]));
      }
      const auto r = tukey_hsd(groups, st_alpha);
      std::cout << "group_a,group_b,mean_difference,q,p,significant\n";
      for (const auto& row : r.rows) {
        std::cout << row.group_a << "," << row.group_b << "," << fmt(row.mean_difference) << ","
                  << fmt(row.q) << "," << fmt(row.p) << "," << (row.significant ? "yes" : "no")
                  << "\n";
      }
      return 0;
    }
    if (*pearson_cmd) {
      const Table t = read_csv(st_csv);
      const std::size_t xc = t.column(st_x);
      const std::size_t yc = t.column(st_y);
      std::vector<double> x;
      std::vector<double> y;
      for (const auto& row : t.rows) {
        x.push_back(to_number(row[xc]));
        y.push_back(to_number(row[yc]));
      }
      const auto r = pearson(x, y);
      std::cout << "r=" << fmt(r.r, "%.6f") << " n=" << r.n << " p=" << fmt(r.p, "%.6g") << "\n";
      return 0;
    }
  } catch (const LayoutError& e) {
    std::cerr << "layout error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
