#include "axon/workload_io.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace axon {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  return out;
}

int parse_int(const std::string& s, int line_no, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    if (v < INT32_MIN || v > INT32_MAX) throw std::out_of_range(s);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" + s + "'");
  }
}

// Strips comments/blanks and checks the header; returns (line_no, fields).
std::vector<std::pair<int, std::vector<std::string>>> csv_rows(const std::string& text,
                                                               const std::string& header) {
  std::vector<std::pair<int, std::vector<std::string>>> rows;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  const std::vector<std::string> want = split_fields(header);
  while (std::getline(ss, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!have_header) {
      if (split_fields(t) != want)
        throw ParseError("line " + std::to_string(line_no) + ": expected header '" + header + "'");
      have_header = true;
      continue;
    }
    rows.emplace_back(line_no, split_fields(t));
  }
  if (!have_header) throw ParseError("missing header '" + header + "'");
  return rows;
}

void check_unique_names(const WorkloadSet& set) {
  std::set<std::string> seen;
  for (const auto& g : set.gemms)
    if (!seen.insert(g.name).second) throw ParseError("duplicate workload name '" + g.name + "'");
  for (const auto& c : set.convs)
    if (!seen.insert(c.name).second) throw ParseError("duplicate layer name '" + c.name + "'");
}

}  // namespace

WorkloadSet parse_gemm_csv(const std::string& text) {
  WorkloadSet set;
  for (const auto& [line_no, f] : csv_rows(text, "name,M,K,N")) {
    if (f.size() != 4)
      throw ParseError("line " + std::to_string(line_no) + ": expected 4 fields, got " +
                       std::to_string(f.size()));
    GemmWorkload w;
    w.name = f[0];
    w.m = parse_int(f[1], line_no, "M");
    w.k = parse_int(f[2], line_no, "K");
    w.n = parse_int(f[3], line_no, "N");
    validate(w);
    set.gemms.push_back(std::move(w));
    set.gemm_notes.emplace_back();
  }
  check_unique_names(set);
  return set;
}

std::string serialize_gemm_csv(const WorkloadSet& set) {
  std::ostringstream out;
  out << "name,M,K,N\n";
  for (const auto& w : set.gemms) out << w.name << ',' << w.m << ',' << w.k << ',' << w.n << '\n';
  return out.str();
}

WorkloadSet parse_conv_csv(const std::string& text) {
  WorkloadSet set;
  const std::string header = "name,ifmap_h,ifmap_w,filter_h,filter_w,channels,num_filters,stride";
  for (const auto& [line_no, f] : csv_rows(text, header)) {
    if (f.size() != 8)
      throw ParseError("line " + std::to_string(line_no) + ": expected 8 fields, got " +
                       std::to_string(f.size()));
    ConvLayer l;
    l.name = f[0];
    l.ifmap_h = parse_int(f[1], line_no, "ifmap_h");
    l.ifmap_w = parse_int(f[2], line_no, "ifmap_w");
    l.filter_h = parse_int(f[3], line_no, "filter_h");
    l.filter_w = parse_int(f[4], line_no, "filter_w");
    l.channels = parse_int(f[5], line_no, "channels");
    l.num_filters = parse_int(f[6], line_no, "num_filters");
    l.stride = parse_int(f[7], line_no, "stride");
    try {
      validate(l);
    } catch (const Error& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    set.convs.push_back(std::move(l));
    set.conv_notes.emplace_back();
  }
  check_unique_names(set);
  return set;
}

std::string serialize_conv_csv(const WorkloadSet& set) {
  std::ostringstream out;
  out << "name,ifmap_h,ifmap_w,filter_h,filter_w,channels,num_filters,stride\n";
  for (const auto& l : set.convs)
    out << l.name << ',' << l.ifmap_h << ',' << l.ifmap_w << ',' << l.filter_h << ','
        << l.filter_w << ',' << l.channels << ',' << l.num_filters << ',' << l.stride << '\n';
  return out.str();
}

namespace {

WorkloadSet make_table3() {
  WorkloadSet set;
  set.name = "table3";
  const struct {
    const char* name;
    int m, k, n;
    const char* note;
  } rows[] = {
      {"TFO", 31999, 84, 1024, "transformer"},
      {"TF1", 84, 4096, 1024, "transformer"},
      {"GNMTO", 128, 4096, 2048, "GNMT"},
      {"GNMT1", 2048, 32, 4096, "GNMT"},
      {"GPT3_0", 1024, 1024, 80, "GPT-3 matmul0"},
      {"GPT3_1", 1024, 2560, 7680, "GPT-3 matmul1"},
      {"GPT3_2", 1024, 2560, 10240, "GPT-3 addmm"},
      {"GPT3_3", 1024, 2560, 50257, "GPT-3 lmhead"},
      {"NCF0", 2048, 128, 1, "NCF"},
      {"NCF1", 256, 2048, 256, "NCF"},
      {"DB0", 1024, 50000, 16, "DeepBench"},
      {"DB1", 35, 2560, 4096, "DeepBench"},
      {"Resnet50_0_conv2d", 64, 147, 62500, "ResNet-50 conv1, lowered"},
      {"Resnet50_1_conv2d", 512, 4608, 676, "ResNet-50 3x3 stage, lowered"},
      {"YOLO_v3_0_conv2d", 64, 288, 42436, "YOLOv3 early 3x3, lowered"},
      {"YOLO_v3_1_conv2d", 128, 576, 10404, "YOLOv3 3x3, lowered"},
      {"GEMM_0", 128, 10, 128, "synthetic"},
      {"GEMM_1", 2048, 10, 2048, "synthetic"},
      {"GEMM_2", 1024, 1024, 128, "synthetic"},
      {"GEMM_3", 64, 2560, 2560, "synthetic"},
  };
  for (const auto& r : rows) {
    GemmWorkload w;
    w.name = r.name;
    w.m = r.m;
    w.k = r.k;
    w.n = r.n;
    set.gemms.push_back(std::move(w));
    set.gemm_notes.emplace_back(r.note);
  }
  return set;
}

struct ConvRow {
  const char* tag;
  int n, cin, cout, res, count;
};

// Every conv is evaluated at unit stride and valid padding at the layer's
// standard input resolution; see README for the convention.
void append_conv_rows(WorkloadSet& set, const std::string& prefix, const ConvRow* rows,
                      std::size_t count, const std::string& note) {
  for (std::size_t r = 0; r < count; ++r) {
    const ConvRow& row = rows[r];
    for (int rep = 0; rep < row.count; ++rep) {
      ConvLayer l;
      l.name = prefix + "_" + row.tag + (row.count > 1 ? "_" + std::to_string(rep) : "");
      l.ifmap_h = l.ifmap_w = row.res;
      l.filter_h = l.filter_w = row.n;
      l.channels = row.cin;
      l.num_filters = row.cout;
      l.stride = 1;
      set.convs.push_back(std::move(l));
      set.conv_notes.push_back(note);
    }
  }
}

WorkloadSet make_resnet50_conv() {
  WorkloadSet set;
  set.name = "resnet50_conv";
  static const ConvRow rows[] = {
      {"conv1", 7, 3, 64, 256, 1},
      // stage 1 (res 64)
      {"s1b0_r", 1, 64, 64, 64, 1},   {"s1b0_c", 3, 64, 64, 64, 1},
      {"s1b0_e", 1, 64, 256, 64, 1},  {"s1b0_ds", 1, 64, 256, 64, 1},
      {"s1_r", 1, 256, 64, 64, 2},    {"s1_c", 3, 64, 64, 64, 2},
      {"s1_e", 1, 64, 256, 64, 2},
      // stage 2 (res 64 -> 32)
      {"s2b0_r", 1, 256, 128, 64, 1}, {"s2b0_c", 3, 128, 128, 64, 1},
      {"s2b0_e", 1, 128, 512, 32, 1}, {"s2b0_ds", 1, 256, 512, 64, 1},
      {"s2_r", 1, 512, 128, 32, 3},   {"s2_c", 3, 128, 128, 32, 3},
      {"s2_e", 1, 128, 512, 32, 3},
      // stage 3 (res 32 -> 16)
      {"s3b0_r", 1, 512, 256, 32, 1}, {"s3b0_c", 3, 256, 256, 32, 1},
      {"s3b0_e", 1, 256, 1024, 16, 1}, {"s3b0_ds", 1, 512, 1024, 32, 1},
      {"s3_r", 1, 1024, 256, 16, 5},  {"s3_c", 3, 256, 256, 16, 5},
      {"s3_e", 1, 256, 1024, 16, 5},
      // stage 4 (res 16 -> 8)
      {"s4b0_r", 1, 1024, 512, 16, 1}, {"s4b0_c", 3, 512, 512, 16, 1},
      {"s4b0_e", 1, 512, 2048, 8, 1},  {"s4b0_ds", 1, 1024, 2048, 16, 1},
      {"s4_r", 1, 2048, 512, 8, 2},   {"s4_c", 3, 512, 512, 8, 2},
      {"s4_e", 1, 512, 2048, 8, 2},
  };
  append_conv_rows(set, "r50", rows, std::size(rows), "ResNet-50 at 256x256 input");
  return set;
}

WorkloadSet make_yolov3_conv() {
  WorkloadSet set;
  set.name = "yolov3_conv";
  static const ConvRow rows[] = {
      {"conv0", 3, 3, 32, 608, 1},
      {"conv1", 3, 32, 64, 608, 1},
      {"res0_a", 1, 64, 32, 304, 1},   {"res0_b", 3, 32, 64, 304, 1},
      {"conv2", 3, 64, 128, 304, 1},
      {"res1_a", 1, 128, 64, 152, 2},  {"res1_b", 3, 64, 128, 152, 2},
      {"conv3", 3, 128, 256, 152, 1},
      {"res2_a", 1, 256, 128, 76, 8},  {"res2_b", 3, 128, 256, 76, 8},
      {"conv4", 3, 256, 512, 76, 1},
      {"res3_a", 1, 512, 256, 38, 8},  {"res3_b", 3, 256, 512, 38, 8},
      {"conv5", 3, 512, 1024, 38, 1},
      {"res4_a", 1, 1024, 512, 19, 4}, {"res4_b", 3, 512, 1024, 19, 4},
      // detection head, scale 19
      {"h19_a", 1, 1024, 512, 19, 3},  {"h19_b", 3, 512, 1024, 19, 3},
      {"h19_out", 1, 1024, 255, 19, 1},
      {"h19_up", 1, 512, 256, 19, 1},
      // scale 38
      {"h38_in", 1, 768, 256, 38, 1},
      {"h38_b", 3, 256, 512, 38, 3},
      {"h38_a", 1, 512, 256, 38, 2},
      {"h38_out", 1, 512, 255, 38, 1},
      {"h38_up", 1, 256, 128, 38, 1},
      // scale 76
      {"h76_in", 1, 384, 128, 76, 1},
      {"h76_b", 3, 128, 256, 76, 3},
      {"h76_a", 1, 256, 128, 76, 2},
      {"h76_out", 1, 256, 255, 76, 1},
  };
  append_conv_rows(set, "yv3", rows, std::size(rows), "YOLOv3 (darknet53 + head) at 608x608 input");
  return set;
}

WorkloadSet make_gemv_dw() {
  WorkloadSet set;
  set.name = "gemv_dw";
  const struct {
    const char* name;
    int m, k;
  } gemvs[] = {
      {"gemv_0", 1024, 1024}, {"gemv_1", 2048, 2048}, {"gemv_2", 4096, 4096}, {"gemv_3", 2048, 128},
  };
  for (const auto& g : gemvs) {
    GemmWorkload w;
    w.name = g.name;
    w.m = g.m;
    w.k = g.k;
    w.n = 1;
    set.gemms.push_back(std::move(w));
    set.gemm_notes.emplace_back("matrix-vector");
  }
  // Depthwise convs as per-channel layers (channels=1, num_filters=1).
  static const ConvRow rows[] = {
      {"dw3_112", 3, 1, 1, 114, 1},
      {"dw3_56", 3, 1, 1, 58, 1},
      {"dw3_28", 3, 1, 1, 30, 1},
      {"dw5_14", 5, 1, 1, 18, 1},
  };
  append_conv_rows(set, "dw", rows, std::size(rows), "depthwise, one representative channel");
  return set;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"table3", "resnet50_conv", "yolov3_conv", "gemv_dw"};
}

WorkloadSet builtin(const std::string& set_name) {
  if (set_name == "table3") return make_table3();
  if (set_name == "resnet50_conv") return make_resnet50_conv();
  if (set_name == "yolov3_conv") return make_yolov3_conv();
  if (set_name == "gemv_dw") return make_gemv_dw();
  throw UsageError("unknown built-in workload set '" + set_name + "'");
}

}  // namespace axon
