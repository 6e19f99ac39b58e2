#include "axon/analytic.hpp"

#include <algorithm>

namespace axon {

SpatialMapping map_dims(Dataflow dataflow, std::int64_t m, std::int64_t k, std::int64_t n) {
  if (m < 1 || k < 1 || n < 1) throw DimensionError("map_dims: dims must be >= 1");
  switch (dataflow) {
    case Dataflow::OS: return {m, n, k};
    case Dataflow::WS: return {k, m, n};
    case Dataflow::IS: return {k, n, m};
  }
  throw UsageError("map_dims: bad dataflow");
}

std::uint64_t feed_latency(Orchestration orchestration, int rows, int cols) {
  if (rows < 1 || cols < 1) throw DimensionError("feed_latency: array dims must be >= 1");
  if (orchestration == Orchestration::Conventional)
    return static_cast<std::uint64_t>(rows) + cols - 2;
  return static_cast<std::uint64_t>(std::max(rows, cols)) - 1;
}

RuntimeBreakdown single_tile_runtime(Orchestration orchestration, Dataflow dataflow, int rows,
                                     int cols, std::int64_t t, bool include_preload) {
  if (rows < 1 || cols < 1) throw DimensionError("single_tile_runtime: array dims must be >= 1");
  if (t < 1) throw DimensionError("single_tile_runtime: temporal extent must be >= 1");
  RuntimeBreakdown b;
  b.feed_latency = feed_latency(orchestration, rows, cols);
  b.temporal = static_cast<std::uint64_t>(t);
  b.readout = static_cast<std::uint64_t>(rows);
  b.preload = dataflow == Dataflow::OS ? 0 : static_cast<std::uint64_t>(rows);
  b.preload_in_total = include_preload && b.preload > 0;
  b.per_tile = b.feed_latency + b.temporal + b.readout + (b.preload_in_total ? b.preload : 0);
  b.total = b.per_tile;
  return b;
}

RuntimeBreakdown scaled_runtime(Orchestration orchestration, const ArrayConfig& config,
                                const GemmWorkload& workload, const ScaleSpec& scale,
                                bool include_preload) {
  validate(config, workload);
  const SpatialMapping map = map_dims(config.dataflow, workload.m, workload.k, workload.n);
  std::int64_t s_r = map.s_r;
  std::int64_t s_c = map.s_c;
  if (scale.mode == ScaleSpec::Mode::ScaleOut) {
    if (scale.p_r < 1 || scale.p_c < 1 || scale.p_r > map.s_r || scale.p_c > map.s_c)
      throw DimensionError("scale-out: partition grid " + std::to_string(scale.p_r) + "x" +
                           std::to_string(scale.p_c) + " cannot cover the workload");
    s_r = ceil_div(map.s_r, scale.p_r);
    s_c = ceil_div(map.s_c, scale.p_c);
  }
  RuntimeBreakdown b = single_tile_runtime(orchestration, config.dataflow, config.rows,
                                           config.cols, map.t, include_preload);
  b.tiles_r = static_cast<std::uint64_t>(ceil_div(s_r, config.rows));
  b.tiles_c = static_cast<std::uint64_t>(ceil_div(s_c, config.cols));
  b.total = b.per_tile * b.tiles_r * b.tiles_c;
  return b;
}

double utilization_rate(Orchestration orchestration, const ArrayConfig& config,
                        const GemmWorkload& workload) {
  const RuntimeBreakdown b = scaled_runtime(orchestration, config, workload);
  const double macs = static_cast<double>(workload.m) * workload.k * workload.n;
  const double pe_cycles =
      static_cast<double>(config.rows) * config.cols * static_cast<double>(b.total);
  return macs / pe_cycles;
}

SpeedupReport speedup_report(std::span<const GemmWorkload> workloads, const ArrayConfig& config,
                             Dataflow dataflow) {
  if (workloads.empty()) throw UsageError("speedup_report: empty workload list");
  SpeedupReport report;
  ArrayConfig cfg = config;
  cfg.dataflow = dataflow;
  for (const GemmWorkload& w : workloads) {
    SpeedupRow row;
    row.name = w.name;
    row.conventional_cycles = scaled_runtime(Orchestration::Conventional, cfg, w).total;
    row.axon_cycles = scaled_runtime(Orchestration::Axon, cfg, w).total;
    row.speedup = static_cast<double>(row.conventional_cycles) / row.axon_cycles;
    row.axon_best_cycles = row.axon_cycles;
    row.axon_best_dataflow = dataflow;
    for (Dataflow df : {Dataflow::OS, Dataflow::WS, Dataflow::IS}) {
      ArrayConfig alt = cfg;
      alt.dataflow = df;
      const std::uint64_t cycles = scaled_runtime(Orchestration::Axon, alt, w).total;
      if (cycles < row.axon_best_cycles) {
        row.axon_best_cycles = cycles;
        row.axon_best_dataflow = df;
      }
    }
    row.speedup_best = static_cast<double>(row.conventional_cycles) / row.axon_best_cycles;
    row.utilization_conventional = utilization_rate(Orchestration::Conventional, cfg, w);
    row.utilization_axon = utilization_rate(Orchestration::Axon, cfg, w);
    report.mean_speedup += row.speedup;
    report.mean_speedup_best += row.speedup_best;
    report.rows.push_back(std::move(row));
  }
  report.mean_speedup /= static_cast<double>(report.rows.size());
  report.mean_speedup_best /= static_cast<double>(report.rows.size());
  return report;
}

}  // namespace axon
