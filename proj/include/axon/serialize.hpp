#pragma once

#include <json.hpp>

#include "axon/core.hpp"

// JSON round-trip support for the core value types.

namespace axon {

inline void to_json(nlohmann::json& j, const Matrix& m) {
  j = nlohmann::json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

inline void from_json(const nlohmann::json& j, Matrix& m) {
  m = Matrix(j.at("rows").get<int>(), j.at("cols").get<int>());
  m.data() = j.at("data").get<std::vector<Elem>>();
  if (m.data().size() != static_cast<std::size_t>(m.rows()) * m.cols())
    throw ShapeError("matrix data length does not match rows*cols");
}

inline void to_json(nlohmann::json& j, const ArrayConfig& c) {
  j = nlohmann::json{{"rows", c.rows},
                     {"cols", c.cols},
                     {"orchestration", to_string(c.orchestration)},
                     {"dataflow", to_string(c.dataflow)}};
}

inline void from_json(const nlohmann::json& j, ArrayConfig& c) {
  c.rows = j.at("rows").get<int>();
  c.cols = j.at("cols").get<int>();
  c.orchestration = orchestration_from_string(j.at("orchestration").get<std::string>());
  c.dataflow = dataflow_from_string(j.at("dataflow").get<std::string>());
}

inline void to_json(nlohmann::json& j, const GemmWorkload& w) {
  j = nlohmann::json{{"name", w.name}, {"m", w.m},
                     {"k", w.k},       {"n", w.n},
                     {"sparsity_a", w.sparsity_a}, {"sparsity_b", w.sparsity_b}};
  if (w.a) j["a"] = *w.a;
  if (w.b) j["b"] = *w.b;
}

inline void from_json(const nlohmann::json& j, GemmWorkload& w) {
  w.name = j.at("name").get<std::string>();
  w.m = j.at("m").get<int>();
  w.k = j.at("k").get<int>();
  w.n = j.at("n").get<int>();
  w.sparsity_a = j.value("sparsity_a", 0.0);
  w.sparsity_b = j.value("sparsity_b", 0.0);
  if (j.contains("a")) w.a = j.at("a").get<Matrix>();
  if (j.contains("b")) w.b = j.at("b").get<Matrix>();
}

inline void to_json(nlohmann::json& j, const ConvLayer& l) {
  j = nlohmann::json{{"name", l.name},           {"ifmap_h", l.ifmap_h},
                     {"ifmap_w", l.ifmap_w},     {"filter_h", l.filter_h},
                     {"filter_w", l.filter_w},   {"channels", l.channels},
                     {"num_filters", l.num_filters}, {"stride", l.stride},
                     {"element_bytes", l.element_bytes}};
}

inline void from_json(const nlohmann::json& j, ConvLayer& l) {
  l.name = j.at("name").get<std::string>();
  l.ifmap_h = j.at("ifmap_h").get<int>();
  l.ifmap_w = j.at("ifmap_w").get<int>();
  l.filter_h = j.at("filter_h").get<int>();
  l.filter_w = j.at("filter_w").get<int>();
  l.channels = j.at("channels").get<int>();
  l.num_filters = j.at("num_filters").get<int>();
  l.stride = j.at("stride").get<int>();
  l.element_bytes = j.value("element_bytes", 2);
}

inline void to_json(nlohmann::json& j, const SpatialMapping& m) {
  j = nlohmann::json{{"s_r", m.s_r}, {"s_c", m.s_c}, {"t", m.t}};
}

inline void from_json(const nlohmann::json& j, SpatialMapping& m) {
  m.s_r = j.at("s_r").get<std::int64_t>();
  m.s_c = j.at("s_c").get<std::int64_t>();
  m.t = j.at("t").get<std::int64_t>();
}

inline void to_json(nlohmann::json& j, const SimResult& r) {
  j = nlohmann::json{{"output", r.output},
                     {"total_cycles", r.total_cycles},
                     {"preload_cycles", r.preload_cycles},
                     {"compute_cycles", r.compute_cycles},
                     {"readout_cycles", r.readout_cycles},
                     {"mac_count", r.mac_count},
                     {"gated_mac_count", r.gated_mac_count},
                     {"utilization", r.utilization},
                     {"sram_loads", r.sram_loads}};
}

inline void from_json(const nlohmann::json& j, SimResult& r) {
  r.output = j.at("output").get<Matrix>();
  r.total_cycles = j.at("total_cycles").get<std::uint64_t>();
  r.preload_cycles = j.at("preload_cycles").get<std::uint64_t>();
  r.compute_cycles = j.at("compute_cycles").get<std::uint64_t>();
  r.readout_cycles = j.at("readout_cycles").get<std::uint64_t>();
  r.mac_count = j.at("mac_count").get<std::uint64_t>();
  r.gated_mac_count = j.at("gated_mac_count").get<std::uint64_t>();
  r.utilization = j.at("utilization").get<double>();
  r.sram_loads = j.at("sram_loads").get<std::uint64_t>();
}

inline void to_json(nlohmann::json& j, const TrafficReport& t) {
  j = nlohmann::json{{"software_elements", t.software_elements},
                     {"axon_elements", t.axon_elements},
                     {"reused_elements", t.reused_elements},
                     {"software_bytes", t.software_bytes},
                     {"axon_bytes", t.axon_bytes},
                     {"reduction", t.reduction},
                     {"filter_passes", t.filter_passes},
                     {"dram_software_bytes", t.dram_software_bytes},
                     {"dram_axon_bytes", t.dram_axon_bytes}};
}

inline void from_json(const nlohmann::json& j, TrafficReport& t) {
  t.software_elements = j.at("software_elements").get<std::uint64_t>();
  t.axon_elements = j.at("axon_elements").get<std::uint64_t>();
  t.reused_elements = j.at("reused_elements").get<std::uint64_t>();
  t.software_bytes = j.at("software_bytes").get<std::uint64_t>();
  t.axon_bytes = j.at("axon_bytes").get<std::uint64_t>();
  t.reduction = j.at("reduction").get<double>();
  t.filter_passes = j.at("filter_passes").get<std::uint64_t>();
  t.dram_software_bytes = j.at("dram_software_bytes").get<std::uint64_t>();
  t.dram_axon_bytes = j.at("dram_axon_bytes").get<std::uint64_t>();
}

}  // namespace axon
