#include "chromacert/report.hpp"

namespace chromacert {

nlohmann::json to_json(const MinCertificate& cert) {
  return {
      {"scales", cert.spec.scales},
      {"constant_offset", cert.spec.constant_offset},
      {"min_value", cert.min_value},
      {"argmin", cert.argmin},
      {"scan_cutoff_T", cert.scan_cutoff_T},
      {"tail_bound_at_T", cert.tail_bound_at_T},
      {"grid_step", cert.grid_step},
      {"margin", cert.margin},
      {"passes", cert.margin > kVerdictTieTolerance && cert.tail_certified()},
  };
}

nlohmann::json to_json(const CriterionVerdict& verdict) {
  nlohmann::json cert = to_json(verdict.certificate);
  cert["passes"] = verdict.passes();
  return {
      {"criterion_kind", std::string(to_string(verdict.criterion_kind))},
      {"status", std::string(to_string(verdict.status))},
      {"passes", verdict.passes()},
      {"certificate", cert},
  };
}

nlohmann::json sigma_report(const SigmaBreakdown& s, std::int64_t p, std::int64_t a,
                            const AffineMap& g, Color color, std::int64_t direct_count) {
  nlohmann::json map = {{"c", g.c()}, {"d", g.d()}};
  if (!g.is_rotation_dilation()) {
    map = {{"m11", g.m11()}, {"m12", g.m12()}, {"m21", g.m21()}, {"m22", g.m22()}};
  }
  return {
      {"p", p},
      {"a", a},
      {"map", map},
      {"color", std::string(to_string(color))},
      {"main_term", s.main_term},
      {"sigma1", s.sigma1},
      {"sigma1_prime", s.sigma1_prime},
      {"sigma1_dprime", s.sigma1_dprime},
      {"sigma2", s.sigma2},
      {"total", s.total},
      {"direct_count", direct_count},
      {"residual", s.total - static_cast<double>(direct_count)},
  };
}

nlohmann::json to_json(const FpPoint& x) { return nlohmann::json::array({x.x1, x.x2}); }

}  // namespace chromacert
