#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "swarmcongest/geometry.hpp"
#include "swarmcongest/trial_log.hpp"

namespace swarmcongest {

// Raw blocks of one vehicle separated by at most this gap form one independent block.
inline constexpr std::int64_t kMergeGapMs = 10'000;
inline constexpr double kDefaultHeatmapCell = 5.0;  // m
inline constexpr double kDefaultHistogramBucket = 60.0;  // s

struct IndependentBlock {
  std::string vehicle_id;
  std::int64_t start_ms = 0;
  std::int64_t duration_ms = 0;  // sum of constituent raw durations, gaps excluded
  Vec2 position;                 // first constituent's position

  friend bool operator==(const IndependentBlock&, const IndependentBlock&) = default;
};

// Output is ordered by vehicle id, then start. Throws PreconditionError when a
// vehicle's raw events are unordered or overlap.
std::vector<IndependentBlock> merge_blocks(const RawBlocksByVehicle& raw);

// Re-merges independent blocks, treating each as a raw event of its own duration.
std::vector<IndependentBlock> merge_blocks(const std::vector<IndependentBlock>& blocks);

struct CongestionSummary {
  std::size_t total_block_count = 0;
  std::int64_t total_block_duration_ms = 0;

  double total_block_duration_min() const { return total_block_duration_ms / 60'000.0; }
};

CongestionSummary summarize(const std::vector<IndependentBlock>& blocks);

enum class HeatmapWeight { Count, Duration };

// Row-major grid; cell (ix, iy) covers [min + i*cell, min + (i+1)*cell).
struct Grid {
  Rect bounds;
  double cell = kDefaultHeatmapCell;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> values;

  double& at(std::size_t ix, std::size_t iy) { return values[iy * nx + ix]; }
  double at(std::size_t ix, std::size_t iy) const { return values[iy * nx + ix]; }
  double sum() const;
};

// Count weight adds 1 per block; duration weight adds the block's minutes.
// Positions outside bounds land in the nearest edge cell.
Grid heatmap(const std::vector<IndependentBlock>& blocks, const Rect& bounds,
             double cell = kDefaultHeatmapCell, HeatmapWeight weight = HeatmapWeight::Count);

// Bucket i counts blocks starting in [i*bucket, (i+1)*bucket). num_buckets = 0
// sizes the histogram to the last block.
std::vector<std::size_t> start_time_histogram(const std::vector<IndependentBlock>& blocks,
                                              double bucket_s = kDefaultHistogramBucket,
                                              std::size_t num_buckets = 0);

// Accepts a trial log (JSON lines) or CSV rows `vehicle_id,start_ms,end_ms,x,y`
// with an optional header. Events come back sorted by start per vehicle.
RawBlocksByVehicle ingest_block_log(const std::filesystem::path& path);

void write_heatmap_csv(const Grid& grid, const std::filesystem::path& path);
void write_heatmap_pgm(const Grid& grid, const std::filesystem::path& path);
void write_histogram_csv(const std::vector<std::size_t>& histogram, double bucket_s,
                         const std::filesystem::path& path);

}  // namespace swarmcongest
