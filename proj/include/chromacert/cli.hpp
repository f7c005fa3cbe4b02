#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace chromacert::cli {

// criterion: 0 pass, 1 fail, 2 inconclusive. fp-verify: 0 iff all checks pass.
// fp-search: 0 when a triple is found, 1 when none exists.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitMapError = 65;
inline constexpr int kExitParse = 66;
inline constexpr int kExitInternal = 70;
inline constexpr int kExitIo = 74;

/// Runs one invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Finite-field invariant suite behind `fp-verify`. Each entry of "checks"
/// carries name, passed, measured and limit.
nlohmann::json fp_verify_report(std::int64_t p, std::int64_t a, std::int64_t seeds,
                                unsigned threads = 1);

}  // namespace chromacert::cli
