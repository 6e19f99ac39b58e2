#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "axon/core.hpp"

// Cycle-accurate, functionally-exact execution of GEMM on the modeled PE
// grid. Timing uses materialized arrival times (closed-form wavefronts);
// the closed form is cross-checked against a brute-force wave propagator in
// the test suite.

namespace axon {

// Cycle at which BOTH operand elements with temporal index k are present at
// PE(i,j), counted from the start of the compute phase.
//   Conventional: k + i + j
//   Axon:         k + |i - j|
std::uint64_t arrival_cycle(Orchestration orchestration, int i, int j, std::int64_t k);

// Injection schedule: one stream per array row (horizontal operand) and one
// per array column (vertical operand). Element k of a stream enters at its
// feeder PE on cycle k + delay; the delay is the skew (conventional) or the
// zero-pad depth past the diagonal (rectangular Axon).
struct FeedSchedule {
  std::vector<int> row_delay;                       // per row stream
  std::vector<int> col_delay;                       // per column stream
  std::vector<std::pair<int, int>> row_feeder;      // feeder PE of each row stream
  std::vector<std::pair<int, int>> col_feeder;      // feeder PE of each column stream
};

FeedSchedule build_feed_schedule(Orchestration orchestration, int rows, int cols);

// PE grid state after stationary preload (WS/IS).
struct PEGrid {
  ArrayConfig config;
  Matrix stationary;
  // Buffer-fed PEs: array edges (conventional) or the principal diagonal
  // plus bottom/right extensions for rectangular arrays (Axon).
  std::vector<std::pair<int, int>> feeders() const;
};

// Loads the stationary tile into the grid; returns the cycles taken (tile
// rows). Throws UsageError under OS.
std::uint64_t preload_stationary(const ArrayConfig& config, const Matrix& stationary_tile,
                                 PEGrid& grid);

// Axon WS/IS partial-sum combination for one column and one temporal step:
// the upper segment accumulates downward to the diagonal, the diagonal PE
// forwards downward, the lower segment joins through the bypass adder.
Elem combine_partial_sums(std::span<const Elem> column_products, int diagonal_row);

struct SimOptions {
  bool zero_gating = false;
  bool include_preload = false;
  std::uint64_t seed = 1;
  std::uint64_t max_macs = UINT64_MAX;  // CapacityError guard for desk-scale runs
  std::ostream* trace = nullptr;        // optional per-event text trace
};

// Fills in absent operand matrices deterministically: values in
// [-8,-1] u [1,8], with an exact zero count per column of A and per row of
// B matching the sparsity fractions.
void materialize_operands(GemmWorkload& workload, std::uint64_t seed);

// Runs the full (tiled) GEMM. Output equals A*B exactly; total_cycles equals
// the analytic scaled_runtime for the same parameters. Under Axon the
// equal-arrival property of both operand streams is asserted.
SimResult simulate_gemm(const ArrayConfig& config, const GemmWorkload& workload,
                        const SimOptions& options = {});

// True iff both operand streams reach every PE with matching temporal index
// on the same cycle (always holds under Axon; also holds conventionally).
bool check_alignment(Orchestration orchestration, int rows, int cols, std::int64_t t);

// Independent triple-loop check of result.output against the workload
// operands (materialized with the default seed when absent).
bool verify(const SimResult& result, const GemmWorkload& workload);

}  // namespace axon
