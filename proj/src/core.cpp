#include "axon/core.hpp"

#include <algorithm>
#include <cctype>

namespace axon {

Matrix::Matrix(int rows, int cols, Elem fill) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw DimensionError("matrix dimensions must be non-negative");
  data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill);
}

std::string to_string(Orchestration o) {
  return o == Orchestration::Conventional ? "conventional" : "axon";
}

std::string to_string(Dataflow d) {
  switch (d) {
    case Dataflow::OS: return "os";
    case Dataflow::WS: return "ws";
    case Dataflow::IS: return "is";
  }
  return "os";
}

static std::string lower_copy(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

Orchestration orchestration_from_string(const std::string& s) {
  const std::string v = lower_copy(s);
  if (v == "conventional" || v == "sa") return Orchestration::Conventional;
  if (v == "axon") return Orchestration::Axon;
  throw ParseError("unknown orchestration: " + s);
}

Dataflow dataflow_from_string(const std::string& s) {
  const std::string v = lower_copy(s);
  if (v == "os") return Dataflow::OS;
  if (v == "ws") return Dataflow::WS;
  if (v == "is") return Dataflow::IS;
  throw ParseError("unknown dataflow: " + s);
}

void validate(const ArrayConfig& config) {
  if (config.rows < 1 || config.cols < 1)
    throw DimensionError("array dimensions must be >= 1 (got " + std::to_string(config.rows) +
                         "x" + std::to_string(config.cols) + ")");
}

void validate(const GemmWorkload& w) {
  if (w.m < 1 || w.k < 1 || w.n < 1)
    throw DimensionError("workload '" + w.name + "': GEMM dims must be >= 1");
  if (w.sparsity_a < 0.0 || w.sparsity_a >= 1.0 || w.sparsity_b < 0.0 || w.sparsity_b >= 1.0)
    throw RangeError("workload '" + w.name + "': sparsity must be in [0,1)");
  if (w.a && (w.a->rows() != w.m || w.a->cols() != w.k))
    throw ShapeError("workload '" + w.name + "': A must be " + std::to_string(w.m) + "x" +
                     std::to_string(w.k));
  if (w.b && (w.b->rows() != w.k || w.b->cols() != w.n))
    throw ShapeError("workload '" + w.name + "': B must be " + std::to_string(w.k) + "x" +
                     std::to_string(w.n));
}

void validate(const ArrayConfig& config, const GemmWorkload& workload) {
  validate(config);
  validate(workload);
}

void validate(const ConvLayer& l) {
  if (l.ifmap_h < 1 || l.ifmap_w < 1 || l.filter_h < 1 || l.filter_w < 1 || l.channels < 1 ||
      l.num_filters < 1)
    throw DimensionError("layer '" + l.name + "': all dimensions must be >= 1");
  if (l.stride < 1) throw DimensionError("layer '" + l.name + "': stride must be >= 1");
  if (l.filter_h > l.ifmap_h || l.filter_w > l.ifmap_w)
    throw ShapeError("layer '" + l.name + "': filter does not fit in IFMAP");
  if (l.element_bytes < 1) throw DimensionError("layer '" + l.name + "': element_bytes must be >= 1");
}

}  // namespace axon
