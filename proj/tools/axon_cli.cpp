// Command-line frontend: analytic sweeps, cycle-accurate simulation, and
// conv traffic/energy/bandwidth reports over CSV or built-in workload sets.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "axon/analytic.hpp"
#include "axon/conv_lower.hpp"
#include "axon/core.hpp"
#include "axon/serialize.hpp"
#include "axon/simengine.hpp"
#include "axon/workload_io.hpp"

namespace {

constexpr int kSchemaVersion = 1;
constexpr const char* kToolVersion = "1.0.0";

using Json = nlohmann::ordered_json;

struct CommonOpts {
  int rows = 256;
  int cols = 256;
  std::string dataflow = "os";
  std::string orchestration = "both";
  std::string workloads = "builtin:table3";
  std::string scale = "up";
  std::string format = "json";
  std::string output;
  bool include_preload = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw axon::ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

axon::WorkloadSet load_workloads(const std::string& arg, bool conv) {
  if (arg.rfind("builtin:", 0) == 0) return axon::builtin(arg.substr(8));
  const std::string text = read_file(arg);
  return conv ? axon::parse_conv_csv(text) : axon::parse_gemm_csv(text);
}

axon::ScaleSpec parse_scale(const std::string& s) {
  axon::ScaleSpec spec;
  if (s == "up") return spec;
  if (s.rfind("out:", 0) == 0) {
    const auto x = s.find('x', 4);
    if (x != std::string::npos) {
      spec.mode = axon::ScaleSpec::Mode::ScaleOut;
      spec.p_r = std::stoi(s.substr(4, x - 4));
      spec.p_c = std::stoi(s.substr(x + 1));
      return spec;
    }
  }
  throw axon::UsageError("bad --scale '" + s + "' (expected up or out:PRxPC)");
}

axon::ArrayConfig make_config(const CommonOpts& o, axon::Orchestration orch) {
  axon::ArrayConfig c;
  c.rows = o.rows;
  c.cols = o.cols;
  c.orchestration = orch;
  c.dataflow = axon::dataflow_from_string(o.dataflow);
  axon::validate(c);
  return c;
}

std::vector<axon::Orchestration> orchestrations(const std::string& s) {
  if (s == "both") return {axon::Orchestration::Conventional, axon::Orchestration::Axon};
  return {axon::orchestration_from_string(s)};
}

Json run_metadata(const CommonOpts& o, const std::string& mode, const axon::WorkloadSet& set) {
  Json meta;
  meta["schema_version"] = kSchemaVersion;
  meta["tool_version"] = kToolVersion;
  meta["mode"] = mode;
  meta["config"] = {{"rows", o.rows},
                    {"cols", o.cols},
                    {"dataflow", o.dataflow},
                    {"orchestration", o.orchestration},
                    {"scale", o.scale},
                    {"include_preload", o.include_preload}};
  meta["workload_set"] = set.name.empty() ? o.workloads : set.name;
  return meta;
}

// CSV projection: flat rows over the scalar fields of each record.
void emit(const Json& report, const CommonOpts& o) {
  std::ostringstream out;
  if (o.format == "json") {
    out << report.dump(2) << "\n";
  } else {
    const Json& records = report.at("records");
    std::vector<std::string> keys;
    for (const auto& [k, v] : records.front().items())
      if (!v.is_structured()) keys.push_back(k);
    for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
    out << "\n";
    for (const auto& rec : records) {
      for (std::size_t i = 0; i < keys.size(); ++i) {
        if (i) out << ",";
        const Json& v = rec.at(keys[i]);
        if (v.is_string())
          out << v.get<std::string>();
        else
          out << v.dump();
      }
      out << "\n";
    }
  }
  if (o.output.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw axon::UsageError("cannot write '" + o.output + "'");
    f << out.str();
  }
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_scale = true) {
  cmd->add_option("--rows", o.rows, "array rows");
  cmd->add_option("--cols", o.cols, "array columns");
  cmd->add_option("--dataflow", o.dataflow, "os|ws|is")
      ->check(CLI::IsMember({"os", "ws", "is"}));
  cmd->add_option("--orchestration", o.orchestration, "conventional|axon|both")
      ->check(CLI::IsMember({"conventional", "axon", "both"}));
  cmd->add_option("--workloads", o.workloads, "CSV path or builtin:<name>");
  if (with_scale) cmd->add_option("--scale", o.scale, "up or out:PRxPC");
  cmd->add_option("--format", o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--output", o.output, "write report here instead of stdout");
  cmd->add_flag("--include-preload", o.include_preload, "charge WS/IS stationary preload");
}

int cmd_analyze(const CommonOpts& o) {
  const axon::WorkloadSet set = load_workloads(o.workloads, false);
  if (set.gemms.empty()) throw axon::UsageError("no GEMM workloads in '" + o.workloads + "'");
  const axon::ScaleSpec scale = parse_scale(o.scale);
  const auto orchs = orchestrations(o.orchestration);
  const bool both = orchs.size() == 2;

  std::vector<axon::GemmWorkload> sorted = set.gemms;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });

  Json report = run_metadata(o, "analyze", set);
  Json records = Json::array();
  double mean_speedup = 0.0, mean_speedup_best = 0.0;
  for (const auto& w : sorted) {
    Json rec;
    rec["name"] = w.name;
    rec["m"] = w.m;
    rec["k"] = w.k;
    rec["n"] = w.n;
    for (auto orch : orchs) {
      const axon::ArrayConfig cfg = make_config(o, orch);
      const auto b = axon::scaled_runtime(orch, cfg, w, scale, o.include_preload);
      const std::string p = axon::to_string(orch) + "_";
      rec[p + "cycles"] = b.total;
      rec[p + "feed_latency"] = b.feed_latency;
      rec[p + "preload"] = b.preload;
      rec[p + "tiles"] = b.tiles_r * b.tiles_c;
      rec[p + "utilization"] = axon::utilization_rate(orch, cfg, w);
    }
    if (both) {
      const axon::ArrayConfig cfg = make_config(o, axon::Orchestration::Conventional);
      axon::GemmWorkload one = w;
      const auto rep = axon::speedup_report(std::span<const axon::GemmWorkload>(&one, 1), cfg,
                                            cfg.dataflow);
      rec["speedup"] = rep.rows[0].speedup;
      rec["axon_best_dataflow"] = axon::to_string(rep.rows[0].axon_best_dataflow);
      rec["axon_best_cycles"] = rep.rows[0].axon_best_cycles;
      rec["speedup_best"] = rep.rows[0].speedup_best;
      mean_speedup += rep.rows[0].speedup;
      mean_speedup_best += rep.rows[0].speedup_best;
    }
    records.push_back(std::move(rec));
  }
  report["records"] = std::move(records);
  if (both) {
    report["aggregates"] = {{"mean_speedup", mean_speedup / sorted.size()},
                            {"mean_speedup_best", mean_speedup_best / sorted.size()}};
  }
  emit(report, o);
  return 0;
}

struct SimulateOpts {
  CommonOpts common;
  std::uint64_t seed = 1;
  double sparsity_a = 0.0;
  double sparsity_b = 0.0;
  bool zero_gating = false;
  bool do_verify = false;
  std::uint64_t max_macs = 200'000'000;
};

int cmd_simulate(const SimulateOpts& so) {
  const CommonOpts& o = so.common;
  const axon::WorkloadSet set = load_workloads(o.workloads, false);
  if (set.gemms.empty()) throw axon::UsageError("no GEMM workloads in '" + o.workloads + "'");

  std::vector<axon::GemmWorkload> sorted = set.gemms;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });

  axon::SimOptions opt;
  opt.zero_gating = so.zero_gating;
  opt.include_preload = o.include_preload;
  opt.seed = so.seed;
  opt.max_macs = so.max_macs;

  Json report = run_metadata(o, "simulate", set);
  report["config"]["seed"] = so.seed;
  report["config"]["sparsity_a"] = so.sparsity_a;
  report["config"]["sparsity_b"] = so.sparsity_b;
  report["config"]["zero_gating"] = so.zero_gating;
  Json records = Json::array();
  for (auto& w : sorted) {
    w.sparsity_a = so.sparsity_a;
    w.sparsity_b = so.sparsity_b;
    Json rec;
    rec["name"] = w.name;
    rec["m"] = w.m;
    rec["k"] = w.k;
    rec["n"] = w.n;
    for (auto orch : orchestrations(o.orchestration)) {
      const axon::ArrayConfig cfg = make_config(o, orch);
      const axon::SimResult res = axon::simulate_gemm(cfg, w, opt);
      // The simulator must land exactly on the analytic schedule.
      const auto b = axon::scaled_runtime(orch, cfg, w, {}, o.include_preload);
      if (res.total_cycles != b.total)
        throw axon::VerificationError(w.name + ": simulated " + std::to_string(res.total_cycles) +
                                      " cycles but analytic model says " +
                                      std::to_string(b.total));
      if (so.do_verify) {
        axon::GemmWorkload check = w;
        axon::materialize_operands(check, so.seed);
        if (!axon::verify(res, check))
          throw axon::VerificationError(w.name + ": output does not match the matmul oracle");
      }
      const std::string p = axon::to_string(orch) + "_";
      rec[p + "cycles"] = res.total_cycles;
      rec[p + "preload_cycles"] = res.preload_cycles;
      rec[p + "utilization"] = res.utilization;
      rec[p + "sram_loads"] = res.sram_loads;
      const std::uint64_t total_macs = res.mac_count + res.gated_mac_count;
      rec[p + "gated_fraction"] =
          total_macs == 0 ? 0.0 : static_cast<double>(res.gated_mac_count) / total_macs;
    }
    rec["verified"] = so.do_verify;
    records.push_back(std::move(rec));
  }
  report["records"] = std::move(records);
  emit(report, o);
  return 0;
}

struct ConvOpts {
  CommonOpts common;
  double bandwidth = 6.4e9;
  double clock = 800e6;
  double pj_per_byte = 120.0;
};

int cmd_conv(const ConvOpts& co) {
  const CommonOpts& o = co.common;
  const axon::WorkloadSet set = load_workloads(o.workloads, true);
  if (set.convs.empty()) throw axon::UsageError("no conv layers in '" + o.workloads + "'");

  std::vector<axon::ConvLayer> sorted = set.convs;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });

  axon::ArrayConfig cfg = make_config(o, axon::Orchestration::Axon);
  Json report = run_metadata(o, "conv", set);
  report["config"]["bandwidth_bytes_per_s"] = co.bandwidth;
  report["config"]["clock_hz"] = co.clock;
  report["config"]["pj_per_byte"] = co.pj_per_byte;

  Json records = Json::array();
  std::uint64_t tot_sw = 0, tot_ax = 0, tot_dram_sw = 0, tot_dram_ax = 0;
  double sum_bw_speedup = 0.0;
  for (const auto& l : sorted) {
    axon::TrafficReport t;
    axon::GemmShape shape;
    try {
      shape = axon::lowered_shape(l);
      t = axon::traffic(l, cfg);
    } catch (const axon::Error& e) {
      throw axon::GeometryError("layer '" + l.name + "': " + e.what());
    }
    axon::GemmWorkload g;
    g.name = l.name;
    g.m = static_cast<int>(shape.m);
    g.k = static_cast<int>(shape.k);
    g.n = static_cast<int>(shape.n);
    const std::uint64_t compute =
        axon::scaled_runtime(axon::Orchestration::Axon, cfg, g).total;
    const double bw_speedup =
        axon::bandwidth_speedup(compute, t.software_bytes, t.axon_bytes, co.bandwidth, co.clock);

    Json rec;
    rec["name"] = l.name;
    rec["gemm_m"] = shape.m;
    rec["gemm_k"] = shape.k;
    rec["gemm_n"] = shape.n;
    rec["traffic"] = nlohmann::json(t);
    rec["reduction"] = t.reduction;
    rec["dram_energy_software_j"] = axon::dram_energy(t.dram_software_bytes, co.pj_per_byte);
    rec["dram_energy_axon_j"] = axon::dram_energy(t.dram_axon_bytes, co.pj_per_byte);
    rec["bandwidth_speedup"] = bw_speedup;
    records.push_back(std::move(rec));

    tot_sw += t.software_bytes;
    tot_ax += t.axon_bytes;
    tot_dram_sw += t.dram_software_bytes;
    tot_dram_ax += t.dram_axon_bytes;
    sum_bw_speedup += bw_speedup;
  }
  report["records"] = std::move(records);
  report["aggregates"] = {
      {"software_bytes", tot_sw},
      {"axon_bytes", tot_ax},
      {"reduction", tot_sw == 0 ? 0.0 : 1.0 - static_cast<double>(tot_ax) / tot_sw},
      {"dram_software_bytes", tot_dram_sw},
      {"dram_axon_bytes", tot_dram_ax},
      {"dram_energy_saving_j",
       axon::dram_energy(tot_dram_sw - tot_dram_ax, co.pj_per_byte)},
      {"mean_bandwidth_speedup", sum_bw_speedup / sorted.size()},
  };
  emit(report, o);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Systolic-array GEMM/conv cost model and simulator"};
  app.require_subcommand(1);

  CommonOpts analyze_opts;
  CLI::App* analyze = app.add_subcommand("analyze", "closed-form runtime sweep");
  add_common(analyze, analyze_opts);

  SimulateOpts sim_opts;
  CLI::App* simulate = app.add_subcommand("simulate", "cycle-accurate functional simulation");
  add_common(simulate, sim_opts.common, /*with_scale=*/false);
  simulate->add_option("--seed", sim_opts.seed, "operand synthesis seed");
  simulate->add_option("--sparsity-a", sim_opts.sparsity_a, "zero fraction in A");
  simulate->add_option("--sparsity-b", sim_opts.sparsity_b, "zero fraction in B");
  simulate->add_flag("--zero-gating", sim_opts.zero_gating, "skip MACs with a zero operand");
  simulate->add_flag("--verify", sim_opts.do_verify, "check outputs against the matmul oracle");
  simulate->add_option("--max-macs", sim_opts.max_macs, "refuse larger problems");

  ConvOpts conv_opts;
  conv_opts.common.workloads = "builtin:resnet50_conv";
  CLI::App* conv = app.add_subcommand("conv", "im2col traffic, energy and bandwidth report");
  add_common(conv, conv_opts.common, /*with_scale=*/false);
  conv->add_option("--layers", conv_opts.common.workloads, "conv CSV path or builtin:<name>");
  conv->add_option("--bandwidth", conv_opts.bandwidth, "DRAM bandwidth, bytes/s");
  conv->add_option("--clock", conv_opts.clock, "array clock, Hz");
  conv->add_option("--pj-per-byte", conv_opts.pj_per_byte, "DRAM access energy");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(analyze_opts);
    if (simulate->parsed()) return cmd_simulate(sim_opts);
    return cmd_conv(conv_opts);
  } catch (const axon::VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 3;
  } catch (const axon::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const axon::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
