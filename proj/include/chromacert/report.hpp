#pragma once

#include <string_view>

#include "chromacert/criterion.hpp"
#include "chromacert/fp_ramsey.hpp"
#include "json.hpp"

namespace chromacert {

inline constexpr std::string_view kToolName = "chromacert";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Keys: scales, constant_offset, min_value, argmin, scan_cutoff_T,
/// tail_bound_at_T, grid_step, margin, passes.
nlohmann::json to_json(const MinCertificate& cert);
nlohmann::json to_json(const CriterionVerdict& verdict);

/// Keys: p, a, map{c,d}, color, main_term, sigma1, sigma1_prime, sigma1_dprime,
/// sigma2, total, direct_count, residual.
nlohmann::json sigma_report(const SigmaBreakdown& s, std::int64_t p, std::int64_t a,
                            const AffineMap& g, Color color, std::int64_t direct_count);

nlohmann::json to_json(const FpPoint& x);

}  // namespace chromacert
