#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "axon/core.hpp"

// Closed-form runtime, feed-latency, tiling and utilization models for both
// orchestrations. This is the golden timing reference the simulator must
// match cycle for cycle.

namespace axon {

struct RuntimeBreakdown {
  std::uint64_t feed_latency = 0;  // cycles for operands to reach the farthest PE
  std::uint64_t temporal = 0;      // MACs per PE
  std::uint64_t readout = 0;       // drain cycles (= array rows)
  std::uint64_t preload = 0;       // stationary-load cycles per tile (WS/IS), 0 for OS
  bool preload_in_total = false;
  std::uint64_t per_tile = 0;      // cycles charged to one tile
  std::uint64_t tiles_r = 1;
  std::uint64_t tiles_c = 1;
  std::uint64_t total = 0;         // per_tile * tiles_r * tiles_c
};

struct ScaleSpec {
  enum class Mode { ScaleUp, ScaleOut };
  Mode mode = Mode::ScaleUp;
  int p_r = 1;  // partition counts, scale-out only
  int p_c = 1;
};

// Table-1 projection of (m,k,n) onto spatial rows/cols and time.
SpatialMapping map_dims(Dataflow dataflow, std::int64_t m, std::int64_t k, std::int64_t n);

// Conventional: rows+cols-2 (Manhattan distance to the far corner).
// Axon: max(rows,cols)-1 (distance from the principal diagonal).
std::uint64_t feed_latency(Orchestration orchestration, int rows, int cols);

// Runtime of one tile that exactly fills the array (S_R=rows, S_C=cols) with
// temporal extent t. Preload (WS/IS stationary load, rows cycles) is reported
// separately and only added to the total when include_preload is set.
RuntimeBreakdown single_tile_runtime(Orchestration orchestration, Dataflow dataflow, int rows,
                                     int cols, std::int64_t t, bool include_preload = false);

// Full-workload runtime: per-tile cost times ceil-division tile counts
// (scale-up), or over per-partition spatial extents (scale-out; the total is
// the per-partition runtime since partitions run in parallel).
RuntimeBreakdown scaled_runtime(Orchestration orchestration, const ArrayConfig& config,
                                const GemmWorkload& workload, const ScaleSpec& scale = {},
                                bool include_preload = false);

// Useful MACs over PE-cycles: M*K*N / (rows*cols*total_cycles).
double utilization_rate(Orchestration orchestration, const ArrayConfig& config,
                        const GemmWorkload& workload);

struct SpeedupRow {
  std::string name;
  std::uint64_t conventional_cycles = 0;  // at the requested dataflow
  std::uint64_t axon_cycles = 0;          // at the requested dataflow
  double speedup = 1.0;                   // conventional / axon, same dataflow
  Dataflow axon_best_dataflow = Dataflow::OS;
  std::uint64_t axon_best_cycles = 0;     // min over OS/WS/IS for Axon
  double speedup_best = 1.0;              // conventional(requested df) / axon(best df)
  double utilization_conventional = 0.0;
  double utilization_axon = 0.0;
};

struct SpeedupReport {
  std::vector<SpeedupRow> rows;
  double mean_speedup = 0.0;       // arithmetic mean of same-dataflow ratios
  double mean_speedup_best = 0.0;  // arithmetic mean of best-dataflow ratios
};

SpeedupReport speedup_report(std::span<const GemmWorkload> workloads, const ArrayConfig& config,
                             Dataflow dataflow);

}  // namespace axon
