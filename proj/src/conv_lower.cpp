#include "axon/conv_lower.hpp"

#include <algorithm>
#include <cmath>

namespace axon {

namespace {

// Unique, index-coded operand values keep reconstruction checks exact.
Elem ifmap_value(int ch, int y, int x) {
  return static_cast<Elem>(ch) * 1000000 + static_cast<Elem>(y) * 1000 + x + 1;
}

Elem filter_value(int f, int flat) { return static_cast<Elem>(f) * 100000 + flat + 1; }

void check_geometry(const ConvLayer& l) {
  validate(l);
  if ((l.ifmap_h - l.filter_h) % l.stride != 0 || (l.ifmap_w - l.filter_w) % l.stride != 0)
    throw GeometryError("layer '" + l.name + "': (ifmap - filter) not divisible by stride");
}

}  // namespace

GemmShape lowered_shape(const ConvLayer& l) {
  check_geometry(l);
  const std::int64_t out_h = (l.ifmap_h - l.filter_h) / l.stride + 1;
  const std::int64_t out_w = (l.ifmap_w - l.filter_w) / l.stride + 1;
  return {l.num_filters,
          static_cast<std::int64_t>(l.filter_h) * l.filter_w * l.channels,
          out_h * out_w};
}

LoweredConv lower(const ConvLayer& l, Materialize materialize) {
  const GemmShape shape = lowered_shape(l);
  LoweredConv out;
  out.gemm_shape = shape;
  out.out_h = (l.ifmap_h - l.filter_h) / l.stride + 1;
  out.out_w = (l.ifmap_w - l.filter_w) / l.stride + 1;
  if (materialize == Materialize::No) return out;

  out.filter_matrix = Matrix(static_cast<int>(shape.m), static_cast<int>(shape.k));
  for (int f = 0; f < shape.m; ++f)
    for (int flat = 0; flat < shape.k; ++flat) out.filter_matrix.at(f, flat) = filter_value(f, flat);

  // Each column is one conv window, flattened channel-major then filter row.
  out.window_matrix = Matrix(static_cast<int>(shape.k), static_cast<int>(shape.n));
  for (int oy = 0; oy < out.out_h; ++oy) {
    for (int ox = 0; ox < out.out_w; ++ox) {
      const int win = oy * out.out_w + ox;
      int flat = 0;
      for (int ch = 0; ch < l.channels; ++ch)
        for (int fy = 0; fy < l.filter_h; ++fy)
          for (int fx = 0; fx < l.filter_w; ++fx)
            out.window_matrix.at(flat++, win) =
                ifmap_value(ch, oy * l.stride + fy, ox * l.stride + fx);
    }
  }
  return out;
}

std::int64_t shared_element_count(int n, int stride) {
  if (n < 1 || stride < 1) throw DimensionError("shared_element_count: n and stride must be >= 1");
  return static_cast<std::int64_t>(n) * std::max(n - stride, 0);
}

MuxSchedule mux_schedule(int n, int num_feeder_rows, int stream_len) {
  if (n < 1) throw DimensionError("mux_schedule: n must be >= 1");
  if (num_feeder_rows < 0 || stream_len < 0)
    throw DimensionError("mux_schedule: negative extent");
  MuxSchedule s;
  s.period = n;
  s.rows.resize(static_cast<std::size_t>(num_feeder_rows));
  for (int w = 0; w < num_feeder_rows; ++w) {
    auto& row = s.rows[static_cast<std::size_t>(w)];
    row.resize(static_cast<std::size_t>(stream_len), MuxSchedule::Source::Buffer);
    if (w == 0 || n == 1) continue;
    for (int c = 0; c < stream_len; ++c)
      if (c % n != 0) row[static_cast<std::size_t>(c)] = MuxSchedule::Source::Neighbor;
  }
  return s;
}

FeederStreams feeder_streams(const ConvLayer& l, const LoweredConv& lowered, int mapped_rows,
                             int first_window) {
  check_geometry(l);
  if (mapped_rows < 1) throw DimensionError("feeder_streams: mapped_rows must be >= 1");
  const int out_w = lowered.out_w;
  const int oy = first_window / out_w;
  const int ox0 = first_window % out_w;
  if (ox0 + mapped_rows > out_w || oy >= lowered.out_h)
    throw GeometryError("feeder_streams: window group crosses an output row");

  FeederStreams fs;
  // The 1-cycle neighbor chain only matches for unit stride.
  fs.reuse_enabled = l.stride == 1 && l.filter_w > 1;
  const int n = l.filter_w;
  const int stream_len = l.channels * l.filter_h * l.filter_w;
  const MuxSchedule sched = mux_schedule(n, fs.reuse_enabled ? mapped_rows : 0, stream_len);

  fs.elems.resize(static_cast<std::size_t>(mapped_rows));
  fs.sources.resize(static_cast<std::size_t>(mapped_rows));
  for (int w = 0; w < mapped_rows; ++w) {
    const int ox = ox0 + w;
    auto& elems = fs.elems[static_cast<std::size_t>(w)];
    auto& src = fs.sources[static_cast<std::size_t>(w)];
    elems.reserve(static_cast<std::size_t>(stream_len));
    src.reserve(static_cast<std::size_t>(stream_len));
    int cycle = 0;
    for (int ch = 0; ch < l.channels; ++ch) {
      for (int fy = 0; fy < l.filter_h; ++fy) {
        // Rightmost element of the filter row first.
        for (int fx = l.filter_w - 1; fx >= 0; --fx) {
          elems.push_back(ifmap_value(ch, oy * l.stride + fy, ox * l.stride + fx));
          const MuxSchedule::Source s = fs.reuse_enabled
                                            ? sched.rows[static_cast<std::size_t>(w)]
                                                        [static_cast<std::size_t>(cycle)]
                                            : MuxSchedule::Source::Buffer;
          src.push_back(s);
          if (s == MuxSchedule::Source::Buffer)
            ++fs.buffer_loads;
          else
            ++fs.neighbor_loads;
          ++cycle;
        }
      }
    }
  }
  return fs;
}

TrafficReport traffic(const ConvLayer& l, const ArrayConfig& config) {
  validate(config);
  const GemmShape shape = lowered_shape(l);
  const int out_h = (l.ifmap_h - l.filter_h) / l.stride + 1;
  const int out_w = (l.ifmap_w - l.filter_w) / l.stride + 1;

  TrafficReport t;
  t.software_elements = static_cast<std::uint64_t>(shape.k) * static_cast<std::uint64_t>(shape.n);

  const std::int64_t capacity = std::min(config.rows, config.cols);
  const std::int64_t g = std::min<std::int64_t>(capacity, out_w);
  const bool eligible = l.stride == 1 && l.filter_w > 1;
  const std::int64_t seg = static_cast<std::int64_t>(l.channels) * l.filter_h;  // segments per window
  std::int64_t per_row = 0;
  const std::int64_t full_groups = out_w / g;
  const std::int64_t rem = out_w % g;
  if (eligible) {
    // First window of a group loads everything; the rest load one element
    // per filter-row segment.
    per_row = full_groups * seg * (l.filter_w + g - 1);
    if (rem > 0) per_row += seg * (l.filter_w + rem - 1);
  } else {
    per_row = static_cast<std::int64_t>(out_w) * seg * l.filter_w;
  }
  t.axon_elements = static_cast<std::uint64_t>(per_row) * static_cast<std::uint64_t>(out_h);
  t.reused_elements = t.software_elements - t.axon_elements;
  t.reduction = t.software_elements == 0
                    ? 0.0
                    : 1.0 - static_cast<double>(t.axon_elements) / t.software_elements;
  t.software_bytes = t.software_elements * static_cast<std::uint64_t>(l.element_bytes);
  t.axon_bytes = t.axon_elements * static_cast<std::uint64_t>(l.element_bytes);
  t.filter_passes = static_cast<std::uint64_t>(ceil_div(shape.m, config.rows));
  t.dram_software_bytes = t.software_bytes * t.filter_passes;
  t.dram_axon_bytes = t.axon_bytes * t.filter_passes;
  return t;
}

double dram_energy(std::uint64_t bytes, double pj_per_byte) {
  if (pj_per_byte < 0.0) throw RangeError("dram_energy: negative energy cost");
  return static_cast<double>(bytes) * pj_per_byte * 1e-12;
}

BandwidthResult bandwidth_limited_runtime(std::uint64_t compute_cycles, std::uint64_t bytes,
                                          double bandwidth_bytes_per_s, double clock_hz) {
  if (bandwidth_bytes_per_s <= 0.0 || clock_hz <= 0.0)
    throw RangeError("bandwidth_limited_runtime: bandwidth and clock must be positive");
  const double mem_cycles = std::ceil(static_cast<double>(bytes) * clock_hz / bandwidth_bytes_per_s);
  BandwidthResult r;
  r.memory_bound = mem_cycles > static_cast<double>(compute_cycles);
  r.cycles = r.memory_bound ? static_cast<std::uint64_t>(mem_cycles) : compute_cycles;
  return r;
}

double bandwidth_speedup(std::uint64_t compute_cycles, std::uint64_t software_bytes,
                         std::uint64_t axon_bytes, double bandwidth_bytes_per_s, double clock_hz) {
  const auto sw = bandwidth_limited_runtime(compute_cycles, software_bytes, bandwidth_bytes_per_s,
                                            clock_hz);
  const auto ax =
      bandwidth_limited_runtime(compute_cycles, axon_bytes, bandwidth_bytes_per_s, clock_hz);
  return static_cast<double>(sw.cycles) / static_cast<double>(ax.cycles);
}

}  // namespace axon
