#pragma once

#include <cstdint>
#include <vector>

#include "axon/core.hpp"

// Explicit im2col lowering, the on-chip reuse model for the diagonal feeder
// chain (MUX schedule and feeder streams), and memory-traffic / energy /
// bandwidth accounting.

namespace axon {

struct GemmShape {
  std::int64_t m = 0;  // num_filters
  std::int64_t k = 0;  // filter_h * filter_w * channels
  std::int64_t n = 0;  // out_h * out_w
};

struct LoweredConv {
  GemmShape gemm_shape;
  int out_h = 0;
  int out_w = 0;
  Matrix filter_matrix;  // M x K
  Matrix window_matrix;  // K x N, each column a flattened conv window
};

// IFMAP element values are index-coded (unique per channel/row/col) so that
// stream-reconstruction checks are exact. Filters are index-coded likewise.
enum class Materialize { No, Yes };
LoweredConv lower(const ConvLayer& layer, Materialize materialize = Materialize::Yes);
GemmShape lowered_shape(const ConvLayer& layer);

// Common elements of two horizontally adjacent windows: n * max(n-stride, 0).
std::int64_t shared_element_count(int n, int stride);

// Per feeder row and cycle: load from Buffer or take the neighbor's element.
struct MuxSchedule {
  enum class Source : std::uint8_t { Buffer, Neighbor };
  int period = 1;  // filter length n
  std::vector<std::vector<Source>> rows;  // [feeder row][cycle]
};

MuxSchedule mux_schedule(int n, int num_feeder_rows, int stream_len);

// The element sequences consumed at each feeder of one co-mapped window
// group, with per-element source tags. Windows are flattened channel-major,
// filter row by filter row, each row segment fed rightmost element first so
// the neighbor's previous element matches. When stride breaks the equality
// the schedule falls back to all-Buffer (reuse_enabled=false).
struct FeederStreams {
  bool reuse_enabled = true;
  std::vector<std::vector<Elem>> elems;                      // [feeder][cycle]
  std::vector<std::vector<MuxSchedule::Source>> sources;     // [feeder][cycle]
  std::uint64_t buffer_loads = 0;
  std::uint64_t neighbor_loads = 0;
};

FeederStreams feeder_streams(const ConvLayer& layer, const LoweredConv& lowered, int mapped_rows,
                             int first_window = 0);

// Element/byte/energy accounting for the whole layer on the given array.
// Feeder-chain capacity is min(rows, cols); filter_passes = ceil(M / rows).
TrafficReport traffic(const ConvLayer& layer, const ArrayConfig& config);

// 120 pJ/byte LPDDR default.
double dram_energy(std::uint64_t bytes, double pj_per_byte = 120.0);

struct BandwidthResult {
  std::uint64_t cycles = 0;
  bool memory_bound = false;
};

BandwidthResult bandwidth_limited_runtime(std::uint64_t compute_cycles, std::uint64_t bytes,
                                          double bandwidth_bytes_per_s, double clock_hz);

double bandwidth_speedup(std::uint64_t compute_cycles, std::uint64_t software_bytes,
                         std::uint64_t axon_bytes, double bandwidth_bytes_per_s, double clock_hz);

}  // namespace axon
