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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "qdilate/analysis.hpp"
#include "qdilate/channels.hpp"
#include "qdilate/dilations.hpp"

namespace qdilate::io {

// Structural problems with a file: bad JSON, missing or mistyped fields,
// unsupported format version. Semantic problems (shape mismatches, trace
// violations) surface as std::invalid_argument from the domain constructors.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* format_version = "1";

// Channel files hold dims plus the Kraus list; matrices are nested arrays of
// rows of [re, im] pairs printed with 17 significant digits, so emit -> parse
// round-trips reproduce the exact doubles and repeated emission is
// byte-identical.
std::string channel_to_string(const QuantumOperation& op);
void write_channel(const std::filesystem::path& path, const QuantumOperation& op);
QuantumOperation read_channel(const std::filesystem::path& path);
QuantumOperation channel_from_string(const std::string& text);

struct DilationRecord {
  Dilation dilation;
  double reconstruction_error = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
};

// "free", "interacting", "halmos" or "power".
std::string mode_name(const Dilation& dil);

std::string dilation_to_string(const DilationRecord& record);
void write_dilation(const std::filesystem::path& path, const DilationRecord& record);
DilationRecord read_dilation(const std::filesystem::path& path);

struct AnalysisRecord {
  BoundsReport bounds;
  std::optional<MajorizationReport> majorization;
  std::optional<double> embedded_error;
  std::optional<double> recomputed_error;
  bool passed = true;
};

std::string analysis_to_string(const AnalysisRecord& record);
void write_analysis(const std::filesystem::path& path, const AnalysisRecord& record);

}  // namespace qdilate::io
