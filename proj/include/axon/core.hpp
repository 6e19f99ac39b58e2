#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Shared domain types for the systolic-array cost model and simulator.
// All types are immutable values after construction and safe to share
// across threads.

namespace axon {

enum class Orchestration { Conventional, Axon };
enum class Dataflow { OS, WS, IS };

std::string to_string(Orchestration o);
std::string to_string(Dataflow d);
Orchestration orchestration_from_string(const std::string& s);
Dataflow dataflow_from_string(const std::string& s);

// Error hierarchy. The CLI maps these onto exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : Error { using Error::Error; };
struct ShapeError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct GeometryError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };
struct CapacityError : Error { using Error::Error; };
struct VerificationError : Error { using Error::Error; };

// Functional simulation uses exact integer elements so output equality
// against the oracle is bit-exact.
using Elem = std::int64_t;

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, Elem fill = 0);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Elem& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  Elem at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  const std::vector<Elem>& data() const { return data_; }
  std::vector<Elem>& data() { return data_; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Elem> data_;
};

// The hardware being modeled: a rows x cols PE grid with an orchestration
// and a dataflow. Axon with rows != cols is legal (rectangular extension).
struct ArrayConfig {
  int rows = 1;
  int cols = 1;
  Orchestration orchestration = Orchestration::Conventional;
  Dataflow dataflow = Dataflow::OS;
};

// An (M,K,N) GEMM problem. Operand matrices are optional; when absent they
// are synthesized deterministically from a seed with the given zero
// fractions (exact zero count per column of A / per row of B).
struct GemmWorkload {
  std::string name;
  int m = 1;
  int k = 1;
  int n = 1;
  std::optional<Matrix> a;
  std::optional<Matrix> b;
  double sparsity_a = 0.0;
  double sparsity_b = 0.0;
};

struct ConvLayer {
  std::string name;
  int ifmap_h = 1;
  int ifmap_w = 1;
  int filter_h = 1;
  int filter_w = 1;
  int channels = 1;
  int num_filters = 1;
  int stride = 1;
  int element_bytes = 2;  // FP16 operands
};

// Spatial/temporal mapping of GEMM dims along the array; always a
// permutation of {m, n, k} of the source workload.
struct SpatialMapping {
  std::int64_t s_r = 1;
  std::int64_t s_c = 1;
  std::int64_t t = 1;
};

struct SimResult {
  Matrix output;
  std::uint64_t total_cycles = 0;
  std::uint64_t preload_cycles = 0;  // 0 for OS
  std::uint64_t compute_cycles = 0;
  std::uint64_t readout_cycles = 0;
  std::uint64_t mac_count = 0;
  std::uint64_t gated_mac_count = 0;
  double utilization = 0.0;
  std::uint64_t sram_loads = 0;
};

// Element/byte accounting for software-im2col feeding vs Axon's on-chip
// reuse. software/axon/reused elements count one streaming pass of the
// lowered window matrix; dram_* bytes multiply by filter_passes (the
// window matrix is re-streamed once per row-tile of filters).
struct TrafficReport {
  std::uint64_t software_elements = 0;
  std::uint64_t axon_elements = 0;
  std::uint64_t reused_elements = 0;
  std::uint64_t software_bytes = 0;
  std::uint64_t axon_bytes = 0;
  double reduction = 0.0;
  std::uint64_t filter_passes = 1;
  std::uint64_t dram_software_bytes = 0;
  std::uint64_t dram_axon_bytes = 0;
};

// Throws DimensionError / ShapeError / RangeError when an invariant fails.
void validate(const ArrayConfig& config);
void validate(const GemmWorkload& workload);
void validate(const ArrayConfig& config, const GemmWorkload& workload);
void validate(const ConvLayer& layer);

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace axon
