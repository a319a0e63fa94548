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

// Drives the installed binary as a subprocess and checks the exit-code
// contract:
//   0 success, 2 parse, 3 validation, 4 precondition, 5 failed check.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdilate/io.hpp"
#include "qdilate/linalg.hpp"

namespace {

namespace fs = std::filesystem;
using qdilate::ComplexMatrix;
using qdilate::QuantumOperation;

const fs::path& work_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "qdilate_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out_file = work_dir() / ("stdout_" + std::to_string(counter) + ".txt");
  const fs::path err_file = work_dir() / ("stderr_" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string command = std::string(QDILATE_CLI_PATH) + " " + args + " > " +
                              out_file.string() + " 2> " + err_file.string();
  const int status = std::system(command.c_str());
  RunResult result;
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_file);
  result.err = slurp(err_file);
  return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::string path_of(const char* name) { return (work_dir() / name).string(); }

// Regenerates the shared fixture files; the generator is deterministic, so
// calling this from several test cases rewrites identical bytes.
void make_qubit_channel() {
  REQUIRE(run_cli("random --dim-in 2 --dim-out 2 --rank 2 --tp --seed 7 --out " +
                  path_of("ch.json"))
              .code == 0);
}

void make_dilation(const std::string& mode) {
  std::string args = "dilate " + path_of("ch.json") + " --mode " + mode + " --out " +
                     path_of(("dil_" + mode + ".json").c_str());
  if (mode == "power") args += " --n 2";
  REQUIRE(run_cli(args).code == 0);
}

}  // namespace

TEST_CASE("flag parsing and help") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("bogus").code == 2);
  CHECK(run_cli("random --dim-in 2 --dim-out 2").code == 2);  // missing --rank
  CHECK(run_cli("random --dim-in 2 --dim-out 2 --rank 0").code == 2);
  CHECK(run_cli("dilate missing.json").code == 2);  // missing --mode
}

TEST_CASE("random emits deterministic channel files") {
  const RunResult a = run_cli("random --dim-in 2 --dim-out 2 --rank 2 --tp --seed 7 --out " +
                              path_of("ch_a.json"));
  CHECK(a.code == 0);
  CHECK(contains(a.out, "dims: 2 -> 2"));
  CHECK(contains(a.out, "rank: 2"));
  CHECK(contains(a.out, "trace_preserving: yes"));
  const RunResult b = run_cli("random --dim-in 2 --dim-out 2 --rank 2 --tp --seed 7 --out " +
                              path_of("ch_b.json"));
  CHECK(b.code == 0);
  CHECK(slurp(work_dir() / "ch_a.json") == slurp(work_dir() / "ch_b.json"));

  // Without --out the document goes to stdout and the summary to stderr.
  const RunResult piped = run_cli("random --dim-in 2 --dim-out 2 --rank 1 --tp --seed 3");
  CHECK(piped.code == 0);
  CHECK(piped.out.rfind("{", 0) == 0);
  CHECK(contains(piped.err, "dims: 2 -> 2"));
  CHECK_NOTHROW(qdilate::io::channel_from_string(piped.out));
}

TEST_CASE("random rejects infeasible requests") {
  CHECK(run_cli("random --dim-in 3 --dim-out 1 --rank 2 --tp").code == 4);
  CHECK(run_cli("random --dim-in 2 --dim-out 2 --rank 5 --tp").code == 4);
}

TEST_CASE("canonicalize merges redundant operators") {
  const double inv = 1.0 / std::sqrt(2.0);
  const QuantumOperation doubled(
      {inv * ComplexMatrix::Identity(2, 2), inv * ComplexMatrix::Identity(2, 2)}, 2, 2);
  qdilate::io::write_channel(work_dir() / "doubled.json", doubled);

  const RunResult r = run_cli("canonicalize " + path_of("doubled.json") + " --out " +
                              path_of("canon.json"));
  CHECK(r.code == 0);
  CHECK(contains(r.out, "rank: 1"));
  CHECK(contains(r.out, "trace_preserving: yes"));
  const QuantumOperation canon = qdilate::io::read_channel(work_dir() / "canon.json");
  CHECK(canon.kraus.size() == 1);
}

TEST_CASE("broken inputs map to the right exit codes") {
  spit(work_dir() / "garbage.json", "{ not json");
  CHECK(run_cli("canonicalize " + path_of("garbage.json")).code == 2);
  CHECK(run_cli("canonicalize " + path_of("does_not_exist.json")).code == 2);

  spit(work_dir() / "overweight.json",
       R"({"format_version": "1", "kind": "channel", "dim_in": 1, "dim_out": 1,
           "kraus": [[[[1.1, 0]]]]})");
  CHECK(run_cli("canonicalize " + path_of("overweight.json")).code == 3);
}

TEST_CASE("dilate and analyze round a full pipeline") {
  make_qubit_channel();

  const std::vector<std::string> modes = {"free", "interacting", "halmos", "power"};
  for (const std::string& mode : modes) {
    const std::string dil = path_of(("dil_" + mode + ".json").c_str());
    std::string args = "dilate " + path_of("ch.json") + " --mode " + mode + " --out " + dil;
    if (mode == "power") args += " --n 2";
    const RunResult d = run_cli(args);
    CHECK(d.code == 0);
    CHECK(contains(d.out, "mode: " + mode));
    CHECK(contains(d.out, "reconstruction_error:"));

    const RunResult a = run_cli("analyze " + path_of("ch.json") + " --dilation " + dil +
                                " --out " + path_of(("report_" + mode + ".json").c_str()));
    CHECK(a.code == 0);
    CHECK(contains(a.out, "metadata_match: yes"));
    CHECK(contains(a.out, "realizes_channel: yes"));
    CHECK(contains(a.out, "verdict: pass"));
    if (mode == "interacting") CHECK(contains(a.out, "majorized: yes"));

    const nlohmann::json report =
        nlohmann::json::parse(slurp(work_dir() / ("report_" + mode + ".json")));
    CHECK(report.at("kind").get<std::string>() == "analysis");
    CHECK(report.at("passed").get<bool>());
  }
}

TEST_CASE("power mode preconditions") {
  make_qubit_channel();
  REQUIRE(run_cli("random --dim-in 2 --dim-out 2 --rank 2 --seed 5 --out " +
                  path_of("ntp.json"))
              .code == 0);
  const RunResult not_tp = run_cli("dilate " + path_of("ntp.json") + " --mode power --n 2");
  CHECK(not_tp.code == 4);
  CHECK(contains(not_tp.err, "trace-preserving"));

  REQUIRE(run_cli("random --dim-in 3 --dim-out 2 --rank 2 --tp --seed 5 --out " +
                  path_of("rect.json"))
              .code == 0);
  CHECK(run_cli("dilate " + path_of("rect.json") + " --mode power --n 2").code == 4);
  CHECK(run_cli("dilate " + path_of("ch.json") + " --mode power").code == 4);
  CHECK(run_cli("dilate " + path_of("ch.json") + " --mode power --n 0").code == 4);
  CHECK(run_cli("dilate " + path_of("ch.json") + " --mode sideways").code == 2);
}

TEST_CASE("halmos mode needs an even shift space") {
  make_qubit_channel();
  CHECK(run_cli("dilate " + path_of("ch.json") + " --mode halmos --dim-s 3").code == 4);
  CHECK(run_cli("dilate " + path_of("ch.json") + " --mode halmos --dim-s 4").code == 0);
}

TEST_CASE("analyze flags mismatches and tampering") {
  make_qubit_channel();
  make_dilation("free");
  make_dilation("interacting");
  REQUIRE(run_cli("random --dim-in 3 --dim-out 2 --rank 2 --tp --seed 5 --out " +
                  path_of("rect.json"))
              .code == 0);

  // A dilation of a different channel with the same dimensions: verdict fail.
  REQUIRE(run_cli("random --dim-in 2 --dim-out 2 --rank 2 --tp --seed 8 --out " +
                  path_of("ch2.json"))
              .code == 0);
  const RunResult impostor =
      run_cli("analyze " + path_of("ch2.json") + " --dilation " + path_of("dil_free.json"));
  CHECK(impostor.code == 5);
  CHECK(contains(impostor.out, "realizes_channel: no"));
  CHECK(contains(impostor.out, "verdict: fail"));

  // Mismatched dimensions are a validation error, not a failed check.
  CHECK(run_cli("analyze " + path_of("rect.json") + " --dilation " + path_of("dil_free.json"))
            .code == 3);

  // Edited metadata no longer matches the recomputed error.
  std::string text = slurp(work_dir() / "dil_interacting.json");
  const std::string key = "\"reconstruction_error\": ";
  const std::string::size_type at = text.find(key);
  REQUIRE(at != std::string::npos);
  const std::string::size_type comma = text.find(',', at);
  REQUIRE(comma != std::string::npos);
  text.replace(at + key.size(), comma - at - key.size(), "0.12345");
  spit(work_dir() / "tampered.json", text);
  const RunResult tampered =
      run_cli("analyze " + path_of("ch.json") + " --dilation " + path_of("tampered.json"));
  CHECK(tampered.code == 5);
  CHECK(contains(tampered.out, "metadata_match: no"));
  CHECK(contains(tampered.out, "verdict: fail"));
}

TEST_CASE("analyze works on a channel alone") {
  make_qubit_channel();
  const RunResult r = run_cli("analyze " + path_of("ch.json"));
  CHECK(r.code == 0);
  CHECK(contains(r.out, "bounds:"));
  CHECK(contains(r.out, "lower_bound_dim_l: 2"));
  CHECK(contains(r.out, "verdict: pass"));
}
