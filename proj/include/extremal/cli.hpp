#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "extremal/verify.hpp"

namespace extremal {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable that pre-sizes the sieve.
inline constexpr const char* kTableLimitEnv = "EXTREMAL_ARITH_TABLE_LIMIT";

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Every worked example over [2, max_n]; returns kExitOk iff all theorem-class blocks pass.
int run_worked_examples(const Verifier& v, std::uint64_t max_n, unsigned workers, std::ostream& out);

}  // namespace extremal
