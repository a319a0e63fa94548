// Copyright 2026 The qdilate authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdilate/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace qdilate::io {
namespace {

using nlohmann::json;

// Emission is hand-rolled rather than routed through the JSON library: the
// byte-identical-output contract needs one fixed number formatting (%.17g,
// enough digits to reproduce any double exactly) and a fixed key order.

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf);
}

void append_entry(std::string& out, const Complex& z) {
  out += '[';
  out += fmt(z.real());
  out += ", ";
  out += fmt(z.imag());
  out += ']';
}

// depth counts two-space indent levels of the opening bracket's line.
void append_matrix(std::string& out, const ComplexMatrix& m, int depth) {
  const std::string outer(2 * static_cast<std::size_t>(depth), ' ');
  const std::string inner = outer + "  ";
  out += "[\n";
  for (Index r = 0; r < m.rows(); ++r) {
    out += inner;
    out += '[';
    for (Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ", ";
      append_entry(out, m(r, c));
    }
    out += ']';
    if (r + 1 < m.rows()) out += ',';
    out += '\n';
  }
  out += outer;
  out += ']';
}

void append_vector(std::string& out, const ComplexVector& v) {
  out += '[';
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    append_entry(out, v(i));
  }
  out += ']';
}

void append_real_list(std::string& out, const RealVector& values) {
  out += '[';
  for (Index i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += fmt(values(i));
  }
  out += ']';
}

void matrix_field(std::string& out, const char* key, const ComplexMatrix& m) {
  out += "  \"";
  out += key;
  out += "\": ";
  append_matrix(out, m, 1);
  out += ",\n";
}

void vector_field(std::string& out, const char* key, const ComplexVector& v) {
  out += "  \"";
  out += key;
  out += "\": ";
  append_vector(out, v);
  out += ",\n";
}

void integer_field(std::string& out, const char* key, long long value) {
  out += "  \"";
  out += key;
  out += "\": ";
  out += std::to_string(value);
  out += ",\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
}

const json& field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw parse_error(std::string("missing field \"") + key + '"');
  return *it;
}

std::string string_field(const json& j, const char* key) {
  const json& f = field(j, key);
  if (!f.is_string()) throw parse_error(std::string("field \"") + key + "\" must be a string");
  return f.get<std::string>();
}

long long integer_value(const json& j, const char* key) {
  const json& f = field(j, key);
  if (!f.is_number_integer()) {
    throw parse_error(std::string("field \"") + key + "\" must be an integer");
  }
  return f.get<long long>();
}

Index dimension_field(const json& j, const char* key) {
  const long long v = integer_value(j, key);
  if (v <= 0) throw std::invalid_argument(std::string("field \"") + key + "\" must be positive");
  if (v > max_dimension) {
    throw std::invalid_argument(std::string("field \"") + key + "\" exceeds the dimension cap");
  }
  return static_cast<Index>(v);
}

Index size_field(const json& j, const char* key) {
  const long long v = integer_value(j, key);
  if (v < 0) throw std::invalid_argument(std::string("field \"") + key + "\" must be non-negative");
  return static_cast<Index>(v);
}

double double_field(const json& j, const char* key) {
  const json& f = field(j, key);
  if (!f.is_number()) throw parse_error(std::string("field \"") + key + "\" must be a number");
  return f.get<double>();
}

std::uint64_t seed_field(const json& j, const char* key) {
  const json& f = field(j, key);
  if (f.is_number_unsigned()) return f.get<std::uint64_t>();
  if (f.is_number_integer() && f.get<long long>() >= 0) {
    return static_cast<std::uint64_t>(f.get<long long>());
  }
  throw parse_error(std::string("field \"") + key + "\" must be a non-negative integer");
}

Complex entry_from_json(const json& node, const char* what) {
  if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number()) {
    throw parse_error(std::string(what) + ": entries must be [re, im] number pairs");
  }
  return Complex(node[0].get<double>(), node[1].get<double>());
}

ComplexMatrix matrix_from_json(const json& node, const char* what) {
  if (!node.is_array() || node.empty()) {
    throw parse_error(std::string(what) + ": expected a non-empty array of rows");
  }
  const json& head = node[0];
  if (!head.is_array() || head.empty()) {
    throw parse_error(std::string(what) + ": each row must be a non-empty array");
  }
  const auto rows = static_cast<Index>(node.size());
  const auto cols = static_cast<Index>(head.size());
  ComplexMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = node[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw parse_error(std::string(what) + ": rows have unequal lengths");
    }
    for (Index c = 0; c < cols; ++c) {
      m(r, c) = entry_from_json(row[static_cast<std::size_t>(c)], what);
    }
  }
  return m;
}

ComplexVector vector_from_json(const json& node, const char* what) {
  if (!node.is_array() || node.empty()) {
    throw parse_error(std::string(what) + ": expected a non-empty array of [re, im] pairs");
  }
  ComplexVector v(static_cast<Index>(node.size()));
  for (Index i = 0; i < v.size(); ++i) {
    v(i) = entry_from_json(node[static_cast<std::size_t>(i)], what);
  }
  return v;
}

void check_header(const json& j, const char* expected_kind) {
  if (!j.is_object()) throw parse_error("top-level JSON value must be an object");
  const std::string version = string_field(j, "format_version");
  if (version != format_version) {
    throw parse_error("unsupported format_version \"" + version + '"');
  }
  const std::string kind = string_field(j, "kind");
  if (kind != expected_kind) {
    throw parse_error("expected kind \"" + std::string(expected_kind) + "\", found \"" + kind + '"');
  }
}

void require_shape(const ComplexMatrix& m, Index rows, Index cols, const char* what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw std::invalid_argument(std::string(what) + " has shape " + std::to_string(m.rows()) +
                                "x" + std::to_string(m.cols()) + ", expected " +
                                std::to_string(rows) + "x" + std::to_string(cols));
  }
}

}  // namespace

std::string channel_to_string(const QuantumOperation& op) {
  std::string out;
  out += "{\n";
  out += "  \"format_version\": \"" + std::string(format_version) + "\",\n";
  out += "  \"kind\": \"channel\",\n";
  integer_field(out, "dim_in", op.dim_in);
  integer_field(out, "dim_out", op.dim_out);
  out += "  \"kraus\": [\n";
  for (std::size_t i = 0; i < op.kraus.size(); ++i) {
    out += "    ";
    append_matrix(out, op.kraus[i], 2);
    if (i + 1 < op.kraus.size()) out += ',';
    out += '\n';
  }
  out += "  ]\n";
  out += "}\n";
  return out;
}

void write_channel(const std::filesystem::path& path, const QuantumOperation& op) {
  write_file(path, channel_to_string(op));
}

QuantumOperation channel_from_string(const std::string& text) {
  const json j = parse_text(text);
  check_header(j, "channel");
  const Index dim_in = dimension_field(j, "dim_in");
  const Index dim_out = dimension_field(j, "dim_out");
  const json& list = field(j, "kraus");
  if (!list.is_array()) throw parse_error("\"kraus\" must be an array of matrices");
  std::vector<ComplexMatrix> operators;
  operators.reserve(list.size());
  for (const json& entry : list) operators.push_back(matrix_from_json(entry, "kraus"));
  return QuantumOperation(std::move(operators), dim_in, dim_out);
}

QuantumOperation read_channel(const std::filesystem::path& path) {
  return channel_from_string(read_file(path));
}

std::string mode_name(const Dilation& dil) {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, FreeDilation>) {
          return "free";
        } else if constexpr (std::is_same_v<T, InteractingDilation>) {
          return "interacting";
        } else if constexpr (std::is_same_v<T, HalmosDilation>) {
          return "halmos";
        } else {
          return "power";
        }
      },
      dil);
}

std::string dilation_to_string(const DilationRecord& record) {
  std::string out;
  out += "{\n";
  out += "  \"format_version\": \"" + std::string(format_version) + "\",\n";
  out += "  \"kind\": \"dilation\",\n";
  out += "  \"mode\": \"" + mode_name(record.dilation) + "\",\n";
  integer_field(out, "dim_in", dilation_dim_in(record.dilation));
  integer_field(out, "dim_out", dilation_dim_out(record.dilation));

  std::visit(
      [&out](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, FreeDilation>) {
          integer_field(out, "dim_l", d.dim_l);
          integer_field(out, "dim_d", d.dim_d);
          matrix_field(out, "u", d.u);
          matrix_field(out, "d", d.d);
          matrix_field(out, "sigma", d.sigma);
        } else if constexpr (std::is_same_v<T, InteractingDilation>) {
          integer_field(out, "dim_l", d.dim_l);
          integer_field(out, "dim_r", d.dim_r);
          matrix_field(out, "u", d.u);
          vector_field(out, "phi_r", d.phi_r);
          matrix_field(out, "sigma", d.sigma);
          matrix_field(out, "sigma_basis", d.sigma_basis);
        } else if constexpr (std::is_same_v<T, HalmosDilation>) {
          integer_field(out, "dim_s", d.dim_s);
          integer_field(out, "dim_l", d.dim_l);
          integer_field(out, "dim_r", d.dim_r);
          matrix_field(out, "u", d.u);
          matrix_field(out, "w_s", d.w);
          matrix_field(out, "sigma_s", d.sigma_s.matrix);
          vector_field(out, "phi_r", d.phi_r);
          matrix_field(out, "sigma", d.sigma);
          matrix_field(out, "sigma_basis", d.sigma_basis);
        } else {
          integer_field(out, "n", d.n);
          integer_field(out, "dim_r", d.dim_r);
          integer_field(out, "dim_h", d.dim_h);
          matrix_field(out, "w", d.w);
          vector_field(out, "phi_r", d.phi_r);
        }
      },
      record.dilation);

  out += "  \"metadata\": {\n";
  out += "    \"reconstruction_error\": " + fmt(record.reconstruction_error) + ",\n";
  out += "    \"trials\": " + std::to_string(record.trials) + ",\n";
  out += "    \"seed\": " + std::to_string(record.seed) + "\n";
  out += "  }\n";
  out += "}\n";
  return out;
}

void write_dilation(const std::filesystem::path& path, const DilationRecord& record) {
  write_file(path, dilation_to_string(record));
}

DilationRecord read_dilation(const std::filesystem::path& path) {
  const json j = parse_text(read_file(path));
  check_header(j, "dilation");
  const std::string mode = string_field(j, "mode");
  const Index dim_in = dimension_field(j, "dim_in");
  const Index dim_out = dimension_field(j, "dim_out");

  const json& meta = field(j, "metadata");
  if (!meta.is_object()) throw parse_error("\"metadata\" must be an object");
  DilationRecord record;
  record.reconstruction_error = double_field(meta, "reconstruction_error");
  const long long trials = integer_value(meta, "trials");
  if (trials < 1) throw std::invalid_argument("metadata.trials must be at least 1");
  record.trials = static_cast<int>(trials);
  record.seed = seed_field(meta, "seed");

  if (mode == "free") {
    FreeDilation d;
    d.dim_in = dim_in;
    d.dim_out = dim_out;
    d.dim_l = dimension_field(j, "dim_l");
    d.dim_d = size_field(j, "dim_d");
    const Index side = composite_dimension(d.dim_l, dim_out);
    if (d.dim_d != side - dim_in) {
      throw std::invalid_argument("dim_d does not equal dim_l * dim_out - dim_in");
    }
    d.u = matrix_from_json(field(j, "u"), "u");
    d.d = matrix_from_json(field(j, "d"), "d");
    d.sigma = matrix_from_json(field(j, "sigma"), "sigma");
    require_shape(d.u, side, side, "u");
    require_shape(d.d, side, dim_in, "d");
    require_shape(d.sigma, d.dim_l, d.dim_l, "sigma");
    record.dilation = std::move(d);
  } else if (mode == "interacting") {
    InteractingDilation d;
    d.dim_in = dim_in;
    d.dim_out = dim_out;
    d.dim_l = dimension_field(j, "dim_l");
    d.dim_r = dimension_field(j, "dim_r");
    const Index side = composite_dimension(d.dim_r, dim_in);
    if (side != composite_dimension(d.dim_l, dim_out)) {
      throw std::invalid_argument("dim_r * dim_in does not equal dim_l * dim_out");
    }
    d.u = matrix_from_json(field(j, "u"), "u");
    d.phi_r = vector_from_json(field(j, "phi_r"), "phi_r");
    d.sigma = matrix_from_json(field(j, "sigma"), "sigma");
    d.sigma_basis = matrix_from_json(field(j, "sigma_basis"), "sigma_basis");
    require_shape(d.u, side, side, "u");
    if (d.phi_r.size() != d.dim_r) {
      throw std::invalid_argument("phi_r length does not match dim_r");
    }
    require_shape(d.sigma, d.dim_l, d.dim_l, "sigma");
    if (d.sigma_basis.rows() != d.dim_l || d.sigma_basis.cols() < 1 ||
        d.sigma_basis.cols() > d.dim_l) {
      throw std::invalid_argument("sigma_basis must be dim_l x rank with rank in [1, dim_l]");
    }
    record.dilation = std::move(d);
  } else if (mode == "halmos") {
    HalmosDilation d;
    d.dim_in = dim_in;
    d.dim_out = dim_out;
    d.dim_s = dimension_field(j, "dim_s");
    d.dim_l = dimension_field(j, "dim_l");
    d.dim_r = dimension_field(j, "dim_r");
    const Index inner = composite_dimension(d.dim_l, dim_out);
    if (composite_dimension(d.dim_r, dim_in) != inner) {
      throw std::invalid_argument("dim_r * dim_in does not equal dim_l * dim_out");
    }
    const Index side = composite_dimension(d.dim_s, inner);
    d.u = matrix_from_json(field(j, "u"), "u");
    d.w = matrix_from_json(field(j, "w_s"), "w_s");
    d.sigma_s = DensityState(matrix_from_json(field(j, "sigma_s"), "sigma_s"));
    d.phi_r = vector_from_json(field(j, "phi_r"), "phi_r");
    d.sigma = matrix_from_json(field(j, "sigma"), "sigma");
    d.sigma_basis = matrix_from_json(field(j, "sigma_basis"), "sigma_basis");
    require_shape(d.u, side, side, "u");
    require_shape(d.w, d.dim_s, d.dim_s, "w_s");
    require_shape(d.sigma_s.matrix, d.dim_s, d.dim_s, "sigma_s");
    if (d.phi_r.size() != d.dim_r) {
      throw std::invalid_argument("phi_r length does not match dim_r");
    }
    require_shape(d.sigma, d.dim_l, d.dim_l, "sigma");
    if (d.sigma_basis.rows() != d.dim_l || d.sigma_basis.cols() < 1 ||
        d.sigma_basis.cols() > d.dim_l) {
      throw std::invalid_argument("sigma_basis must be dim_l x rank with rank in [1, dim_l]");
    }
    record.dilation = std::move(d);
  } else if (mode == "power") {
    PowerDilation d;
    const long long n = integer_value(j, "n");
    if (n < 1) throw std::invalid_argument("field \"n\" must be at least 1");
    d.n = static_cast<int>(n);
    d.dim_r = dimension_field(j, "dim_r");
    d.dim_h = dimension_field(j, "dim_h");
    if (d.dim_h != dim_in || d.dim_h != dim_out) {
      throw std::invalid_argument("power mode requires dim_in == dim_out == dim_h");
    }
    Index side = d.dim_h;
    for (int i = 0; i < d.n; ++i) side = composite_dimension(side, d.dim_r);
    d.w = matrix_from_json(field(j, "w"), "w");
    d.phi_r = vector_from_json(field(j, "phi_r"), "phi_r");
    require_shape(d.w, side, side, "w");
    if (d.phi_r.size() != d.dim_r) {
      throw std::invalid_argument("phi_r length does not match dim_r");
    }
    const ComplexMatrix pure = d.phi_r * d.phi_r.adjoint();
    ComplexMatrix state = ComplexMatrix::Identity(1, 1);
    for (int i = 0; i < d.n; ++i) state = kron(state, pure);
    d.sigma_state = std::move(state);
    record.dilation = std::move(d);
  } else {
    throw parse_error("unknown dilation mode \"" + mode + '"');
  }
  return record;
}

std::string analysis_to_string(const AnalysisRecord& record) {
  std::string out;
  out += "{\n";
  out += "  \"format_version\": \"" + std::string(format_version) + "\",\n";
  out += "  \"kind\": \"analysis\",\n";
  out += "  \"bounds\": {\n";
  out += "    \"canonical_rank\": " + std::to_string(record.bounds.c) + ",\n";
  out += "    \"rank_defect\": " + std::to_string(record.bounds.rank_defect) + ",\n";
  out += "    \"lower_bound_dim_l\": " + std::to_string(record.bounds.lower_bound_dim_l) + ",\n";
  if (record.bounds.actual_dim_l) {
    out += "    \"actual_dim_l\": " + std::to_string(*record.bounds.actual_dim_l) + ",\n";
  }
  if (record.bounds.sigma_rank) {
    out += "    \"sigma_rank\": " + std::to_string(*record.bounds.sigma_rank) + ",\n";
  }
  out += std::string("    \"satisfied\": ") + (record.bounds.satisfied ? "true" : "false") + "\n";
  out += "  },\n";
  if (record.embedded_error) {
    out += "  \"reconstruction\": {\n";
    out += "    \"embedded_error\": " + fmt(*record.embedded_error);
    if (record.recomputed_error) {
      out += ",\n    \"recomputed_error\": " + fmt(*record.recomputed_error);
    }
    out += "\n  },\n";
  }
  if (record.majorization) {
    const MajorizationReport& report = *record.majorization;
    out += "  \"majorization\": {\n";
    out += std::string("    \"majorized\": ") + (report.majorized ? "true" : "false") + ",\n";
    out += "    \"candidate\": ";
    append_real_list(out, report.candidate);
    out += ",\n";
    out += "    \"canonical\": ";
    append_real_list(out, report.canonical);
    out += ",\n";
    out += "    \"partial_sums\": [";
    for (std::size_t i = 0; i < report.partial_sums.size(); ++i) {
      if (i > 0) out += ", ";
      out += '[' + fmt(report.partial_sums[i].first) + ", " + fmt(report.partial_sums[i].second) +
             ']';
    }
    out += "]\n";
    out += "  },\n";
  }
  out += std::string("  \"passed\": ") + (record.passed ? "true" : "false") + "\n";
  out += "}\n";
  return out;
}

void write_analysis(const std::filesystem::path& path, const AnalysisRecord& record) {
  write_file(path, analysis_to_string(record));
}

}  // namespace qdilate::io
