#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ringvote/group.hpp"
#include "ringvote/rng.hpp"

namespace ringvote::cli {

// Exit codes, also documented in the --help footer.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kConfigError = 2,
    kPhaseError = 3,
    kDecodeError = 4,
    kEscrowError = 5,
    kChainError = 6,
    kIoError = 7,
    kArgumentError = 8,
    kUsageError = 64,
};

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Key files: one header line, then the canonical hex of the secret scalar.
void write_key_file(const std::filesystem::path& path, const Scalar& secret);
Scalar read_key_file(const std::filesystem::path& path);

// Benchmark/cost table emitters, exposed for the acceptance suite.
struct BenchRow {
    size_t ring_size = 0;
    double sign_ms = 0;
    double verify_ms = 0;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    double fit_intercept_ms = 0;
    double fit_slope_ms = 0;
    double fit_r2 = 0;
};

BenchResult run_bench(const std::vector<size_t>& ring_sizes, size_t repetitions,
                      RandomSource& rng);

struct CostRow {
    std::string mode;
    size_t ring_size = 0;
    double onledger_bytes = 0;
    double offledger_bytes = 0;
    double weighted_cost = 0;
};

std::vector<CostRow> run_cost(const std::vector<size_t>& ring_sizes,
                              const std::vector<std::string>& modes, size_t roster_size,
                              double tx_byte_factor, double cas_byte_factor,
                              RandomSource& rng);

}  // namespace ringvote::cli
