#include "swarmcongest/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "swarmcongest/error.hpp"

namespace swarmcongest {

std::vector<IndependentBlock> merge_blocks(const RawBlocksByVehicle& raw) {
  std::vector<IndependentBlock> out;
  for (const auto& [vehicle, events] : raw) {
    const RawBlockEvent* prev = nullptr;
    for (const auto& ev : events) {
      if (ev.end_ms < ev.start_ms) {
        throw PreconditionError("vehicle " + vehicle + ": raw block ends before it starts");
      }
      if (prev && ev.start_ms < prev->end_ms) {
        throw PreconditionError("vehicle " + vehicle + ": raw blocks unordered or overlapping");
      }
      if (prev && ev.start_ms - prev->end_ms <= kMergeGapMs) {
        out.back().duration_ms += ev.duration_ms();
      } else {
        out.push_back({vehicle, ev.start_ms, ev.duration_ms(), ev.position.xy()});
      }
      prev = &ev;
    }
  }
  return out;
}

std::vector<IndependentBlock> merge_blocks(const std::vector<IndependentBlock>& blocks) {
  RawBlocksByVehicle raw;
  for (const auto& b : blocks) {
    raw[b.vehicle_id].push_back({b.start_ms, b.start_ms + b.duration_ms, {b.position.x, b.position.y, 0.0}});
  }
  for (auto& [_, events] : raw) {
    std::stable_sort(events.begin(), events.end(),
                     [](const RawBlockEvent& a, const RawBlockEvent& b) { return a.start_ms < b.start_ms; });
  }
  return merge_blocks(raw);
}

CongestionSummary summarize(const std::vector<IndependentBlock>& blocks) {
  CongestionSummary s;
  s.total_block_count = blocks.size();
  for (const auto& b : blocks) s.total_block_duration_ms += b.duration_ms;
  return s;
}

double Grid::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

Grid heatmap(const std::vector<IndependentBlock>& blocks, const Rect& bounds, double cell,
             HeatmapWeight weight) {
  if (!(cell > 0.0)) throw PreconditionError("heatmap cell size must be positive");
  Grid g;
  g.bounds = bounds;
  g.cell = cell;
  g.nx = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(bounds.width() / cell)));
  g.ny = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(bounds.height() / cell)));
  g.values.assign(g.nx * g.ny, 0.0);
  auto index = [cell](double v, double lo, std::size_t n) {
    const double i = std::floor((v - lo) / cell);
    if (!(i > 0.0)) return std::size_t{0};
    return std::min(static_cast<std::size_t>(i), n - 1);
  };
  for (const auto& b : blocks) {
    const std::size_t ix = index(b.position.x, bounds.min.x, g.nx);
    const std::size_t iy = index(b.position.y, bounds.min.y, g.ny);
    g.at(ix, iy) += weight == HeatmapWeight::Count ? 1.0 : b.duration_ms / 60'000.0;
  }
  return g;
}

std::vector<std::size_t> start_time_histogram(const std::vector<IndependentBlock>& blocks,
                                              double bucket_s, std::size_t num_buckets) {
  if (!(bucket_s > 0.0)) throw PreconditionError("histogram bucket must be positive");
  const double bucket_ms = bucket_s * 1000.0;
  auto bucket_of = [&](std::int64_t t) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(t) / bucket_ms));
  };
  std::size_t n = num_buckets;
  if (n == 0) {
    for (const auto& b : blocks) n = std::max(n, bucket_of(b.start_ms) + 1);
  }
  std::vector<std::size_t> hist(n, 0);
  for (const auto& b : blocks) {
    if (b.start_ms < 0) throw PreconditionError("block starts before time zero");
    const std::size_t i = bucket_of(b.start_ms);
    if (i >= n) throw PreconditionError("block start beyond histogram span");
    ++hist[i];
  }
  return hist;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    out.push_back(field);
  }
  return out;
}

RawBlocksByVehicle ingest_csv(std::istream& in) {
  RawBlocksByVehicle out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto f = split_csv_line(line);
    if (f.empty() || (f.size() == 1 && f[0].empty())) continue;
    if (lineno == 1 && f[0] == "vehicle_id") continue;
    if (f.size() != 5) {
      throw ParseError("block CSV line " + std::to_string(lineno) + ": expected 5 fields");
    }
    try {
      std::size_t used = 0;
      RawBlockEvent ev;
      ev.start_ms = std::stoll(f[1], &used);
      if (used != f[1].size()) throw std::invalid_argument(f[1]);
      ev.end_ms = std::stoll(f[2], &used);
      if (used != f[2].size()) throw std::invalid_argument(f[2]);
      ev.position = {std::stod(f[3]), std::stod(f[4]), 0.0};
      if (ev.end_ms < ev.start_ms) {
        throw ParseError("block CSV line " + std::to_string(lineno) + ": end before start");
      }
      out[f[0]].push_back(ev);
    } catch (const std::logic_error&) {
      throw ParseError("block CSV line " + std::to_string(lineno) + ": bad number");
    }
  }
  return out;
}

}  // namespace

RawBlocksByVehicle ingest_block_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open block log " + path.string());
  char first = 0;
  while (in.get(first) && std::isspace(static_cast<unsigned char>(first))) {
  }
  in.clear();
  in.seekg(0);
  RawBlocksByVehicle raw = first == '{' ? raw_blocks(read_trial_log(in)) : ingest_csv(in);
  for (auto& [_, events] : raw) {
    std::stable_sort(events.begin(), events.end(), [](const RawBlockEvent& a, const RawBlockEvent& b) {
      return a.start_ms < b.start_ms;
    });
  }
  return raw;
}

void write_heatmap_csv(const Grid& grid, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  // Top row is the northernmost cells.
  for (std::size_t r = 0; r < grid.ny; ++r) {
    const std::size_t iy = grid.ny - 1 - r;
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      if (ix) out << ',';
      out << grid.at(ix, iy);
    }
    out << '\n';
  }
}

void write_heatmap_pgm(const Grid& grid, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  const double peak = grid.values.empty() ? 0.0 : *std::max_element(grid.values.begin(), grid.values.end());
  out << "P5\n" << grid.nx << ' ' << grid.ny << "\n255\n";
  for (std::size_t r = 0; r < grid.ny; ++r) {
    const std::size_t iy = grid.ny - 1 - r;
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const double v = peak > 0.0 ? grid.at(ix, iy) / peak : 0.0;
      out.put(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
    }
  }
}

void write_histogram_csv(const std::vector<std::size_t>& histogram, double bucket_s,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "bucket_start_s,count\n";
  for (std::size_t i = 0; i < histogram.size(); ++i) {
    out << i * bucket_s << ',' << histogram[i] << '\n';
  }
}

}  // namespace swarmcongest
