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

// Command-line front end. Exit codes are a stable contract:
//   0 success
//   2 unreadable or malformed input (bad flags, bad JSON, wrong schema)
//   3 well-formed input that violates a domain invariant
//   4 unmet command precondition (infeasible rank, power on a non-channel, ...)
//   5 a verification or analysis check failed
//
// Human-readable summaries go to stdout. Documents are written to --out when
// given; commands that produce a document print it to stdout instead when
// --out is absent (the summary then moves to stderr to keep stdout clean).

#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "qdilate/analysis.hpp"
#include "qdilate/channels.hpp"
#include "qdilate/dilations.hpp"
#include "qdilate/io.hpp"
#include "qdilate/linalg.hpp"
#include "qdilate/verify.hpp"

namespace {

using namespace qdilate;

// Failures of a command's own preconditions, distinct from both parse and
// validation errors so they can map to their own exit code.
struct precondition_error : std::exception {
  std::string message;
  explicit precondition_error(std::string m) : message(std::move(m)) {}
  const char* what() const noexcept override { return message.c_str(); }
};

// Dilation files embed a reconstruction check over this many random states;
// the seed is fixed so the embedded number is reproducible from the file.
constexpr int kEmbeddedTrials = 20;
constexpr std::uint64_t kEmbeddedSeed = 424242;

// A re-loaded dilation must reproduce its embedded error this closely, and
// must actually realize the channel it is analyzed against.
constexpr double kMetadataTolerance = 1e-12;
constexpr double kRealizationGate = 1e-8;

std::string format_double(double value) {
  std::ostringstream out;
  out << std::setprecision(12) << value;
  return out.str();
}

std::string yes_no(bool value) { return value ? "yes" : "no"; }

struct RandomOptions {
  long long dim_in = 0;
  long long dim_out = 0;
  long long rank = 0;
  std::uint64_t seed = 0;
  bool trace_preserving = false;
  std::string out;
};

struct CanonicalizeOptions {
  std::string input;
  std::string out;
};

struct DilateOptions {
  std::string input;
  std::string mode;
  int n = 2;
  bool n_given = false;
  long long dim_s = 2;
  std::string out;
};

struct AnalyzeOptions {
  std::string channel;
  std::string dilation;
  std::string out;
};

// Document to --out plus summary to stdout, or document to stdout with the
// summary diverted to stderr.
void deliver(const std::string& document, const std::string& summary, const std::string& out) {
  if (out.empty()) {
    std::cout << document;
    std::cerr << summary;
  } else {
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + out + " for writing");
    file << document;
    file.flush();
    if (!file) throw std::runtime_error("write to " + out + " failed");
    std::cout << summary;
  }
}

std::string channel_summary(const QuantumOperation& op) {
  const QuantumOperation canon = canonical_kraus(op);
  const HermitianEig k = hermitian_eig(effect_operator(op));
  std::ostringstream out;
  out << "dims: " << op.dim_in << " -> " << op.dim_out << "\n";
  out << "rank: " << canon.kraus.size() << "\n";
  out << "trace_preserving: " << yes_no(is_trace_preserving(op)) << "\n";
  out << "effect_spectrum: [";
  for (Index i = 0; i < k.eigenvalues.size(); ++i) {
    if (i > 0) out << ", ";
    out << format_double(k.eigenvalues(i));
  }
  out << "]\n";
  return out.str();
}

int run_random(const RandomOptions& opt) {
  if (opt.rank > opt.dim_in * opt.dim_out) {
    throw precondition_error("rank " + std::to_string(opt.rank) + " exceeds dim_in * dim_out = " +
                             std::to_string(opt.dim_in * opt.dim_out));
  }
  if (opt.rank * opt.dim_out < opt.dim_in) {
    throw precondition_error(
        "rank * dim_out must be at least dim_in for the Kraus blocks to form an isometry");
  }
  ChannelSpec spec;
  spec.dim_in = static_cast<Index>(opt.dim_in);
  spec.dim_out = static_cast<Index>(opt.dim_out);
  spec.rank = static_cast<Index>(opt.rank);
  spec.trace_preserving = opt.trace_preserving;
  spec.seed = opt.seed;
  const QuantumOperation op = random_channel(spec);
  deliver(io::channel_to_string(op), channel_summary(op), opt.out);
  return 0;
}

int run_canonicalize(const CanonicalizeOptions& opt) {
  const QuantumOperation op = io::read_channel(opt.input);
  const QuantumOperation canon = canonical_kraus(op);
  deliver(io::channel_to_string(canon), channel_summary(canon), opt.out);
  return 0;
}

int run_dilate(const DilateOptions& opt) {
  const QuantumOperation op = io::read_channel(opt.input);
  Dilation dilation;
  if (opt.mode == "free") {
    dilation = free_dilation(op);
  } else if (opt.mode == "interacting") {
    dilation = interacting_dilation(op);
  } else if (opt.mode == "halmos") {
    if (opt.dim_s < 2 || opt.dim_s % 2 != 0) {
      throw precondition_error("halmos mode needs an even --dim-s of at least 2");
    }
    dilation = halmos_dilation(op, static_cast<Index>(opt.dim_s));
  } else {
    if (!opt.n_given) throw precondition_error("power mode requires --n");
    if (opt.n < 1) throw precondition_error("--n must be at least 1");
    if (op.dim_in != op.dim_out) {
      throw precondition_error("power mode requires dim_in == dim_out");
    }
    if (!is_trace_preserving(op)) {
      throw precondition_error(
          "power mode requires a trace-preserving channel; the effect of this map differs "
          "from the identity, so its occurrence probability is below one");
    }
    dilation = power_dilation(op, opt.n);
  }

  io::DilationRecord record;
  record.dilation = std::move(dilation);
  record.trials = kEmbeddedTrials;
  record.seed = kEmbeddedSeed;
  record.reconstruction_error =
      reconstruction_error(record.dilation, op, kEmbeddedTrials, kEmbeddedSeed);

  const Index side = std::visit(
      [](const auto& d) -> Index {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PowerDilation>) {
          return d.w.rows();
        } else {
          return d.u.rows();
        }
      },
      record.dilation);
  std::ostringstream summary;
  summary << "mode: " << io::mode_name(record.dilation) << "\n";
  summary << "unitary_side: " << side << "\n";
  summary << "reconstruction_error: " << format_double(record.reconstruction_error) << " over "
          << record.trials << " states\n";
  deliver(io::dilation_to_string(record), summary.str(), opt.out);
  return 0;
}

void print_bounds(std::ostream& out, const BoundsReport& bounds) {
  out << "bounds:\n";
  out << "  canonical_rank: " << bounds.c << "\n";
  out << "  rank_defect: " << bounds.rank_defect << "\n";
  out << "  lower_bound_dim_l: " << bounds.lower_bound_dim_l << "\n";
  if (bounds.actual_dim_l) out << "  actual_dim_l: " << *bounds.actual_dim_l << "\n";
  if (bounds.sigma_rank) out << "  sigma_rank: " << *bounds.sigma_rank << "\n";
  out << "  satisfied: " << yes_no(bounds.satisfied) << "\n";
}

int run_analyze(const AnalyzeOptions& opt) {
  const QuantumOperation op = io::read_channel(opt.channel);
  io::AnalysisRecord record;
  std::ostringstream report;
  report << "channel: dims " << op.dim_in << " -> " << op.dim_out << ", rank " << choi_rank(op)
         << ", trace_preserving " << yes_no(is_trace_preserving(op)) << "\n";

  if (opt.dilation.empty()) {
    record.bounds = ancilla_lower_bound(op);
    record.passed = record.bounds.satisfied;
    print_bounds(report, record.bounds);
  } else {
    const io::DilationRecord stored = io::read_dilation(opt.dilation);
    if (dilation_dim_in(stored.dilation) != op.dim_in ||
        dilation_dim_out(stored.dilation) != op.dim_out) {
      throw std::invalid_argument("dilation file dimensions do not match the channel file");
    }
    record.bounds = check_bounds(stored.dilation, op);
    print_bounds(report, record.bounds);

    const double recomputed =
        reconstruction_error(stored.dilation, op, stored.trials, stored.seed);
    record.embedded_error = stored.reconstruction_error;
    record.recomputed_error = recomputed;
    const bool metadata_ok =
        std::abs(recomputed - stored.reconstruction_error) <= kMetadataTolerance;
    const bool realized = recomputed <= kRealizationGate;
    report << "reconstruction:\n";
    report << "  mode: " << io::mode_name(stored.dilation) << "\n";
    report << "  embedded_error: " << format_double(stored.reconstruction_error) << "\n";
    report << "  recomputed_error: " << format_double(recomputed) << "\n";
    report << "  metadata_match: " << yes_no(metadata_ok) << "\n";
    report << "  realizes_channel: " << yes_no(realized) << "\n";
    if (!realized) {
      report << "  note: reconstruction error " << format_double(recomputed)
             << " exceeds the realization gate " << format_double(kRealizationGate) << "\n";
    }

    bool majorization_ok = true;
    if (const auto* inter = std::get_if<InteractingDilation>(&stored.dilation); inter && realized) {
      record.majorization = check_majorization_constraint(*inter, op);
      majorization_ok = record.majorization->majorized;
      const MajorizationReport& m = *record.majorization;
      report << "majorization:\n";
      report << "  majorized: " << yes_no(m.majorized) << "\n";
      report << "  candidate: [";
      for (Index i = 0; i < m.candidate.size(); ++i) {
        if (i > 0) report << ", ";
        report << format_double(m.candidate(i));
      }
      report << "]\n  canonical: [";
      for (Index i = 0; i < m.canonical.size(); ++i) {
        if (i > 0) report << ", ";
        report << format_double(m.canonical(i));
      }
      report << "]\n";
    }

    record.passed = record.bounds.satisfied && metadata_ok && realized && majorization_ok;
  }

  report << "verdict: " << (record.passed ? "pass" : "fail") << "\n";
  std::cout << report.str();
  if (!opt.out.empty()) io::write_analysis(opt.out, record);
  return record.passed ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct, serialize and verify unitary realizations of quantum operations"};
  app.require_subcommand(1);

  RandomOptions random_opt;
  CLI::App* cmd_random = app.add_subcommand("random", "Generate a seeded random operation file");
  cmd_random->add_option("--dim-in", random_opt.dim_in, "input dimension")
      ->required()
      ->check(CLI::Range(1LL, static_cast<long long>(qdilate::max_dimension)));
  cmd_random->add_option("--dim-out", random_opt.dim_out, "output dimension")
      ->required()
      ->check(CLI::Range(1LL, static_cast<long long>(qdilate::max_dimension)));
  cmd_random->add_option("--rank", random_opt.rank, "number of Kraus operators")
      ->required()
      ->check(CLI::Range(1LL, static_cast<long long>(qdilate::max_dimension)));
  cmd_random->add_flag("--tp", random_opt.trace_preserving, "make it trace preserving");
  cmd_random->add_option("--seed", random_opt.seed, "generator seed (default 0)");
  cmd_random->add_option("--out", random_opt.out, "write the channel file here");

  CanonicalizeOptions canon_opt;
  CLI::App* cmd_canon =
      app.add_subcommand("canonicalize", "Rewrite a channel file with orthogonal Kraus operators");
  cmd_canon->add_option("input", canon_opt.input, "channel file")->required();
  cmd_canon->add_option("--out", canon_opt.out, "write the canonical file here");

  DilateOptions dilate_opt;
  CLI::App* cmd_dilate =
      app.add_subcommand("dilate", "Build a unitary realization of a channel file");
  cmd_dilate->add_option("input", dilate_opt.input, "channel file")->required();
  cmd_dilate->add_option("--mode", dilate_opt.mode, "free | interacting | halmos | power")
      ->required()
      ->check(CLI::IsMember({"free", "interacting", "halmos", "power"}));
  cmd_dilate->add_option("--n", dilate_opt.n, "power mode: highest tracked power")
      ->trigger_on_parse()
      ->each([&dilate_opt](const std::string&) { dilate_opt.n_given = true; });
  cmd_dilate->add_option("--dim-s", dilate_opt.dim_s, "halmos mode: shift-space dimension");
  cmd_dilate->add_option("--out", dilate_opt.out, "write the dilation file here");

  AnalyzeOptions analyze_opt;
  CLI::App* cmd_analyze =
      app.add_subcommand("analyze", "Check ancilla bounds and re-verify a stored dilation");
  cmd_analyze->add_option("channel", analyze_opt.channel, "channel file")->required();
  cmd_analyze->add_option("--dilation", analyze_opt.dilation, "dilation file to check against");
  cmd_analyze->add_option("--out", analyze_opt.out, "write the machine-readable report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_random->parsed()) return run_random(random_opt);
    if (cmd_canon->parsed()) return run_canonicalize(canon_opt);
    if (cmd_dilate->parsed()) return run_dilate(dilate_opt);
    if (cmd_analyze->parsed()) return run_analyze(analyze_opt);
    std::cerr << "error: no command given\n";
    return 2;
  } catch (const qdilate::io::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const precondition_error& e) {
    std::cerr << "precondition not met: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const std::length_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const std::runtime_error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
