// Command-line front end: simulation runs, DH timing, golden packet vectors.
//
//   vanetsim run --config two_nodes.cfg --seed 1 --trace out.jsonl --metrics m.json
//   vanetsim bench --bits 512 --trials 10 --seed 1
//   vanetsim vectors --emit | --check fixtures.hex
//
// Exit status: 0 success, 1 runtime or I/O failure, 2 usage or configuration error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vanet/bench.hpp"
#include "vanet/config_file.hpp"
#include "vanet/golden_vectors.hpp"
#include "vanet/sim_engine.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct RunArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string trace = "trace.jsonl";
  std::string metrics = "metrics.json";
};

struct BenchArgs {
  std::size_t bits = 512;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
};

struct VectorArgs {
  bool emit = false;
  std::string check;
};

int cmd_run(const RunArgs& args) {
  std::ifstream in(args.config);
  if (!in) {
    std::cerr << "run: cannot open config file '" << args.config << "'\n";
    return kExitUsage;
  }
  vanet::sim::SimConfig config;
  try {
    config = vanet::cli::parse_config(in);
    if (args.seed) config.seed = *args.seed;
  } catch (const vanet::cli::ConfigFileError& e) {
    std::cerr << "run: bad config key '" << e.key() << "': " << e.what() << '\n';
    return kExitUsage;
  }

  const auto [trace, metrics] = vanet::sim::run(config);

  std::ofstream trace_out(args.trace, std::ios::binary);
  if (trace_out) trace.write_jsonl(trace_out);
  if (!trace_out) {
    std::cerr << "run: cannot write trace '" << args.trace << "'\n";
    return kExitRuntime;
  }
  std::ofstream metrics_out(args.metrics, std::ios::binary);
  if (metrics_out) metrics_out << metrics.to_json().dump(2) << '\n';
  if (!metrics_out) {
    std::cerr << "run: cannot write metrics '" << args.metrics << "'\n";
    return kExitRuntime;
  }
  std::cout << "events: " << trace.size() << ", handshakes: " << metrics.handshakes_completed
            << ", precision: " << metrics.precision << ", recall: " << metrics.recall << '\n';
  return kExitOk;
}

int cmd_bench(const BenchArgs& args) {
  if (args.bits < 16 || args.bits > 2048 || args.trials < 1) {
    std::cerr << "bench: --bits must lie in [16, 2048] and --trials must be >= 1\n";
    return kExitUsage;
  }
  const auto result = vanet::bench::run_bench(args.bits, args.trials, args.seed);
  vanet::bench::print_bench_table(std::cout, result);
  return kExitOk;
}

int cmd_vectors(const VectorArgs& args) {
  if (args.emit == !args.check.empty()) {
    std::cerr << "vectors: pass exactly one of --emit or --check FILE\n";
    return kExitUsage;
  }
  if (args.emit) {
    vanet::codec::write_vector_file(std::cout, vanet::codec::golden_vectors());
    return kExitOk;
  }
  std::ifstream in(args.check);
  if (!in) {
    std::cerr << "vectors: cannot open '" << args.check << "'\n";
    return kExitRuntime;
  }
  const auto result = vanet::codec::check_vector_file(in);
  if (!result.ok()) {
    std::cerr << args.check << ": line " << *result.bad_line << ": " << result.message << '\n';
    return kExitUsage;
  }
  std::cout << args.check << ": " << result.packets << " packet(s) ok\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beaconing with DH key exchange: VANET simulator and tools"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a simulation from a config file");
  run->add_option("--config", run_args.config, "key = value config file")->required();
  run->add_option("--seed", run_args.seed, "Override sim.seed");
  run->add_option("--trace", run_args.trace, "JSON-lines trace output");
  run->add_option("--metrics", run_args.metrics, "Metrics JSON output");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Time the DH exchange stages");
  bench->add_option("--bits", bench_args.bits, "Modulus size in bits");
  bench->add_option("--trials", bench_args.trials, "Number of trials");
  bench->add_option("--seed", bench_args.seed, "RNG seed");

  VectorArgs vector_args;
  auto* vectors = app.add_subcommand("vectors", "Emit or check golden packet vectors");
  vectors->add_flag("--emit", vector_args.emit, "Print the golden vectors");
  vectors->add_option("--check", vector_args.check, "Validate a hex vector file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*bench) return cmd_bench(bench_args);
    return cmd_vectors(vector_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
