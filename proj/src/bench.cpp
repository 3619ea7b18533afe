#include "vanet/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "vanet/crypto_dh.hpp"

namespace vanet::bench {

namespace {

// Reference-host timings for the same three stages.
constexpr std::uint64_t kRefParamGenerationNs = 3509800629ULL;
constexpr std::uint64_t kRefInitiatorSecretNs = 49069788ULL;
constexpr std::uint64_t kRefResponderSecretNs = 36127233ULL;

std::uint64_t median(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  if (v.size() % 2 == 1) return v[mid];
  return v[mid - 1] + (v[mid] - v[mid - 1]) / 2;
}

template <typename F>
std::uint64_t time_ns(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  const auto stop = std::chrono::steady_clock::now();
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
}

}  // namespace

BenchResult run_bench(std::size_t bits, std::size_t trials, std::uint64_t seed) {
  if (bits < dh::kMinParamBits || bits > dh::kMaxParamBits) {
    throw std::invalid_argument("--bits must lie in [16, 2048]");
  }
  if (trials < 1) throw std::invalid_argument("--trials must be >= 1");

  std::vector<std::uint64_t> gen;
  std::vector<std::uint64_t> init;
  std::vector<std::uint64_t> resp;
  for (std::size_t t = 0; t < trials; ++t) {
    RandomSource rng(RandomSource::mix(seed, t));
    dh::DhParams params;
    dh::DhKeyPair initiator;
    gen.push_back(time_ns([&] {
      params = dh::generate_dh_params(bits, rng);
      initiator = dh::generate_keypair(params, rng);
    }));
    const dh::DhKeyPair responder = dh::generate_keypair(params, rng);

    dh::SharedSecret s_init;
    dh::SharedSecret s_resp;
    init.push_back(time_ns([&] {
      s_init = dh::compute_shared_secret(params, initiator.private_exponent, responder.public_value);
    }));
    resp.push_back(time_ns([&] {
      s_resp = dh::compute_shared_secret(params, responder.private_exponent, initiator.public_value);
    }));
    if (!(s_init == s_resp)) throw std::logic_error("benchmark exchange disagreed");
  }

  BenchResult r;
  r.bits = bits;
  r.trials = trials;
  r.param_generation_ns = median(gen);
  r.initiator_secret_ns = median(init);
  r.responder_secret_ns = median(resp);
  return r;
}

void print_bench_table(std::ostream& out, const BenchResult& r) {
  char line[160];
  std::snprintf(line, sizeof(line), "DH exchange timing: %zu-bit modulus, %zu trial(s), median ns\n",
                r.bits, r.trials);
  out << line;
  std::snprintf(line, sizeof(line), "%-40s %16s %16s\n", "operation", "measured", "reference");
  out << line;
  auto row = [&](const char* name, std::uint64_t measured, std::uint64_t reference) {
    std::snprintf(line, sizeof(line), "%-40s %16llu %16llu\n", name,
                  static_cast<unsigned long long>(measured),
                  static_cast<unsigned long long>(reference));
    out << line;
  };
  row("parameters + public value", r.param_generation_ns, kRefParamGenerationNs);
  row("initiator secret", r.initiator_secret_ns, kRefInitiatorSecretNs);
  row("responder secret", r.responder_secret_ns, kRefResponderSecretNs);
  row("handshake estimate (sum)", r.handshake_estimate_ns(),
      kRefParamGenerationNs + kRefInitiatorSecretNs + kRefResponderSecretNs);
  const std::uint64_t slower = std::max(r.initiator_secret_ns, r.responder_secret_ns);
  std::snprintf(line, sizeof(line), "generation / secret ratio: %.1f (reference %.1f)\n",
                slower == 0 ? 0.0
                            : static_cast<double>(r.param_generation_ns) / static_cast<double>(slower),
                static_cast<double>(kRefParamGenerationNs) /
                    static_cast<double>(kRefInitiatorSecretNs));
  out << line;
}

}  // namespace vanet::bench
