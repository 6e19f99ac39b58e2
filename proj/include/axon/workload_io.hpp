#pragma once

#include <string>
#include <vector>

#include "axon/core.hpp"

// Workload ingestion: CSV descriptions plus built-in sets for the standard
// evaluation networks.

namespace axon {

struct WorkloadSet {
  std::string name;
  std::vector<GemmWorkload> gemms;
  std::vector<ConvLayer> convs;
  std::vector<std::string> gemm_notes;  // provenance, aligned with gemms
  std::vector<std::string> conv_notes;  // provenance, aligned with convs
};

// header: name,M,K,N ; '#' comments and blank lines allowed; LF or CRLF.
WorkloadSet parse_gemm_csv(const std::string& text);
std::string serialize_gemm_csv(const WorkloadSet& set);

// header: name,ifmap_h,ifmap_w,filter_h,filter_w,channels,num_filters,stride
WorkloadSet parse_conv_csv(const std::string& text);
std::string serialize_conv_csv(const WorkloadSet& set);

// Known set names: table3, resnet50_conv, yolov3_conv, gemv_dw.
WorkloadSet builtin(const std::string& set_name);
std::vector<std::string> builtin_names();

}  // namespace axon
