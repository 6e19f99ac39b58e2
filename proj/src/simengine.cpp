#include "axon/simengine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>

#include "axon/analytic.hpp"

namespace axon {

std::uint64_t arrival_cycle(Orchestration orchestration, int i, int j, std::int64_t k) {
  if (i < 0 || j < 0 || k < 0) throw DimensionError("arrival_cycle: negative index");
  if (orchestration == Orchestration::Conventional)
    return static_cast<std::uint64_t>(k) + i + j;
  return static_cast<std::uint64_t>(k) + std::abs(i - j);
}

FeedSchedule build_feed_schedule(Orchestration orchestration, int rows, int cols) {
  if (rows < 1 || cols < 1) throw DimensionError("build_feed_schedule: array dims must be >= 1");
  FeedSchedule s;
  s.row_delay.resize(rows);
  s.col_delay.resize(cols);
  s.row_feeder.resize(rows);
  s.col_feeder.resize(cols);
  if (orchestration == Orchestration::Conventional) {
    // Skewed injection along the left and top edges.
    for (int i = 0; i < rows; ++i) {
      s.row_delay[i] = i;
      s.row_feeder[i] = {i, 0};
    }
    for (int j = 0; j < cols; ++j) {
      s.col_delay[j] = j;
      s.col_feeder[j] = {0, j};
    }
  } else {
    // Unskewed injection on the principal diagonal; streams past the
    // diagonal enter through the array edge, zero-padded by their distance.
    for (int i = 0; i < rows; ++i) {
      const int f = std::min(i, cols - 1);
      s.row_delay[i] = i - f;
      s.row_feeder[i] = {i, f};
    }
    for (int j = 0; j < cols; ++j) {
      const int f = std::min(j, rows - 1);
      s.col_delay[j] = j - f;
      s.col_feeder[j] = {f, j};
    }
  }
  return s;
}

std::vector<std::pair<int, int>> PEGrid::feeders() const {
  std::vector<std::pair<int, int>> out;
  if (config.orchestration == Orchestration::Conventional) {
    for (int i = 0; i < config.rows; ++i) out.emplace_back(i, 0);
    for (int j = 1; j < config.cols; ++j) out.emplace_back(0, j);
  } else {
    const FeedSchedule s = build_feed_schedule(config.orchestration, config.rows, config.cols);
    for (auto& f : s.row_feeder)
      if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    for (auto& f : s.col_feeder)
      if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  return out;
}

std::uint64_t preload_stationary(const ArrayConfig& config, const Matrix& stationary_tile,
                                 PEGrid& grid) {
  if (config.dataflow == Dataflow::OS)
    throw UsageError("preload_stationary: OS dataflow has no stationary operand");
  if (stationary_tile.rows() > config.rows || stationary_tile.cols() > config.cols)
    throw CapacityError("preload_stationary: tile exceeds array");
  grid.config = config;
  grid.stationary = stationary_tile;
  return static_cast<std::uint64_t>(stationary_tile.rows());
}

Elem combine_partial_sums(std::span<const Elem> column_products, int diagonal_row) {
  const int rows = static_cast<int>(column_products.size());
  if (rows == 0) return 0;
  const int d = std::clamp(diagonal_row, 0, rows - 1);
  Elem upper = 0;  // accumulates downward toward the diagonal
  for (int i = 0; i < d; ++i) upper += column_products[i];
  Elem lower = 0;  // accumulates upward toward the bypass adder
  for (int i = rows - 1; i > d; --i) lower += column_products[i];
  return upper + column_products[d] + lower;
}

bool check_alignment(Orchestration orchestration, int rows, int cols, std::int64_t t) {
  const FeedSchedule s = build_feed_schedule(orchestration, rows, cols);
  for (std::int64_t k : {std::int64_t{0}, t - 1}) {
    if (k < 0) continue;
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        const std::uint64_t h =
            k + s.row_delay[i] + std::abs(j - s.row_feeder[i].second);
        const std::uint64_t v =
            k + s.col_delay[j] + std::abs(i - s.col_feeder[j].first);
        if (h != v) return false;
        if (h != arrival_cycle(orchestration, i, j, k)) return false;
      }
    }
  }
  return true;
}

namespace {

// Exact zero count, uniform positions.
void place_zeros(std::vector<int>& idx, int want, std::mt19937_64& rng,
                 const std::function<void(int)>& zero_out) {
  for (int z = 0; z < want; ++z) {
    const std::size_t pick = z + rng() % (idx.size() - z);
    std::swap(idx[z], idx[pick]);
    zero_out(idx[z]);
  }
}

Matrix synth_matrix(int rows, int cols, double col_sparsity, double row_sparsity,
                    std::mt19937_64& rng) {
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const Elem v = 1 + static_cast<Elem>(rng() % 8);
      m.at(r, c) = (rng() & 1) ? v : -v;
    }
  if (col_sparsity > 0.0) {
    const int want = static_cast<int>(std::llround(col_sparsity * rows));
    std::vector<int> idx(rows);
    for (int c = 0; c < cols; ++c) {
      std::iota(idx.begin(), idx.end(), 0);
      place_zeros(idx, want, rng, [&](int r) { m.at(r, c) = 0; });
    }
  }
  if (row_sparsity > 0.0) {
    const int want = static_cast<int>(std::llround(row_sparsity * cols));
    std::vector<int> idx(cols);
    for (int r = 0; r < rows; ++r) {
      std::iota(idx.begin(), idx.end(), 0);
      place_zeros(idx, want, rng, [&](int c) { m.at(r, c) = 0; });
    }
  }
  return m;
}

}  // namespace

void materialize_operands(GemmWorkload& w, std::uint64_t seed) {
  validate(w);
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
  if (!w.a) w.a = synth_matrix(w.m, w.k, w.sparsity_a, 0.0, rng);
  if (!w.b) w.b = synth_matrix(w.k, w.n, 0.0, w.sparsity_b, rng);
}

SimResult simulate_gemm(const ArrayConfig& config, const GemmWorkload& workload,
                        const SimOptions& options) {
  validate(config, workload);
  GemmWorkload w = workload;
  materialize_operands(w, options.seed);
  const Matrix& A = *w.a;
  const Matrix& B = *w.b;

  const std::uint64_t macs =
      static_cast<std::uint64_t>(w.m) * static_cast<std::uint64_t>(w.k) * w.n;
  if (macs > options.max_macs)
    throw CapacityError("simulate_gemm: " + std::to_string(macs) + " MACs exceeds --max-macs");

  const Orchestration orch = config.orchestration;
  const Dataflow df = config.dataflow;
  const int R = config.rows;
  const int C = config.cols;
  const SpatialMapping map = map_dims(df, w.m, w.k, w.n);
  const std::int64_t T = map.t;

  if (orch == Orchestration::Axon && !check_alignment(orch, R, C, T))
    throw VerificationError("axon operand streams misaligned");

  SimResult res;
  res.output = Matrix(w.m, w.n);

  const std::int64_t tiles_r = ceil_div(map.s_r, R);
  const std::int64_t tiles_c = ceil_div(map.s_c, C);
  const std::uint64_t fl = feed_latency(orch, R, C);

  auto count_mac = [&](Elem a, Elem b) {
    if (options.zero_gating && (a == 0 || b == 0))
      ++res.gated_mac_count;
    else
      ++res.mac_count;
  };

  std::vector<Elem> column_products;
  PEGrid grid;
  for (std::int64_t tr = 0; tr < tiles_r; ++tr) {
    const int r = static_cast<int>(std::min<std::int64_t>(R, map.s_r - tr * R));
    for (std::int64_t tc = 0; tc < tiles_c; ++tc) {
      const int c = static_cast<int>(std::min<std::int64_t>(C, map.s_c - tc * C));

      if (df == Dataflow::OS) {
        // Output stationary: PE(i,j) owns out(m,n); both operands stream.
        for (int i = 0; i < r; ++i) {
          const int mi = static_cast<int>(tr * R + i);
          for (int j = 0; j < c; ++j) {
            const int nj = static_cast<int>(tc * C + j);
            Elem acc = 0;
            for (std::int64_t k = 0; k < T; ++k) {
              const Elem a = A.at(mi, static_cast<int>(k));
              const Elem b = B.at(static_cast<int>(k), nj);
              count_mac(a, b);
              acc += a * b;
              if (options.trace)
                *options.trace << "cycle " << arrival_cycle(orch, i, j, k) << " pe " << i << ","
                               << j << " mac k=" << k << " a=" << a << " b=" << b << "\n";
            }
            res.output.at(mi, nj) += acc;
          }
        }
        res.sram_loads += static_cast<std::uint64_t>(r) * T + static_cast<std::uint64_t>(T) * c;
      } else {
        // WS: stationary A^T tile (K rows x M cols), stream B over time N.
        // IS: stationary B tile (K rows x N cols), stream A over time M.
        Matrix stationary(r, c);
        for (int i = 0; i < r; ++i) {
          const int ki = static_cast<int>(tr * R + i);
          for (int j = 0; j < c; ++j) {
            const int sj = static_cast<int>(tc * C + j);
            stationary.at(i, j) = df == Dataflow::WS ? A.at(sj, ki) : B.at(ki, sj);
          }
        }
        const std::uint64_t preload = preload_stationary(config, stationary, grid);
        (void)preload;  // charged as full R below, per the tiling model
        res.sram_loads += static_cast<std::uint64_t>(r) * c;

        column_products.assign(static_cast<std::size_t>(r), 0);
        for (std::int64_t k = 0; k < T; ++k) {
          for (int j = 0; j < c; ++j) {
            for (int i = 0; i < r; ++i) {
              const int ki = static_cast<int>(tr * R + i);
              const Elem stream = df == Dataflow::WS ? B.at(ki, static_cast<int>(k))
                                                     : A.at(static_cast<int>(k), ki);
              const Elem st = grid.stationary.at(i, j);
              count_mac(st, stream);
              column_products[static_cast<std::size_t>(i)] = st * stream;
            }
            Elem val;
            if (orch == Orchestration::Axon) {
              val = combine_partial_sums(column_products, j);
            } else {
              val = 0;  // psums ripple down the column
              for (int i = 0; i < r; ++i) val += column_products[static_cast<std::size_t>(i)];
            }
            const int out_col = static_cast<int>(tc * C + j);
            if (df == Dataflow::WS)
              res.output.at(out_col, static_cast<int>(k)) += val;
            else
              res.output.at(static_cast<int>(k), out_col) += val;
          }
          res.sram_loads += static_cast<std::uint64_t>(r);
        }
      }

      // Timing: every tile is charged the full-array schedule.
      const std::uint64_t compute = fl + static_cast<std::uint64_t>(T);
      const std::uint64_t readout = static_cast<std::uint64_t>(R);
      const std::uint64_t preload_cycles =
          (df != Dataflow::OS && options.include_preload) ? static_cast<std::uint64_t>(R) : 0;
      res.compute_cycles += compute;
      res.readout_cycles += readout;
      res.preload_cycles += preload_cycles;
      res.total_cycles += compute + readout + preload_cycles;
    }
  }

  res.utilization =
      static_cast<double>(macs) /
      (static_cast<double>(R) * C * static_cast<double>(res.total_cycles));
  return res;
}

bool verify(const SimResult& result, const GemmWorkload& workload) {
  GemmWorkload w = workload;
  materialize_operands(w, SimOptions{}.seed);
  if (result.output.rows() != w.m || result.output.cols() != w.n) return false;
  for (int i = 0; i < w.m; ++i)
    for (int j = 0; j < w.n; ++j) {
      Elem acc = 0;
      for (int k = 0; k < w.k; ++k) acc += w.a->at(i, k) * w.b->at(k, j);
      if (result.output.at(i, j) != acc) return false;
    }
  return true;
}

}  // namespace axon
