#pragma once

#include <cstdint>
#include <ostream>

namespace vanet::bench {

struct BenchResult {
  std::size_t bits = 0;
  std::size_t trials = 0;
  std::uint64_t param_generation_ns = 0;   // params + public value
  std::uint64_t initiator_secret_ns = 0;
  std::uint64_t responder_secret_ns = 0;

  std::uint64_t handshake_estimate_ns() const {
    return param_generation_ns + initiator_secret_ns + responder_secret_ns;
  }
};

/// Times the three DH stages of one exchange over `trials` runs; reports medians.
/// Throws std::invalid_argument when bits < 16 or trials < 1.
BenchResult run_bench(std::size_t bits, std::size_t trials, std::uint64_t seed);

/// Measured medians next to the reference-host row.
void print_bench_table(std::ostream& out, const BenchResult& result);

}  // namespace vanet::bench
