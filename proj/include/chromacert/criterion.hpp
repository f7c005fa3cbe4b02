#pragma once

#include <string_view>
#include <vector>

namespace chromacert {

/// Objective sum_i J0(scales[i] * t) + constant_offset, minimized over t >= 0.
struct BesselSumSpec {
  std::vector<double> scales;
  double constant_offset = 0.0;

  /// Throws DomainError unless scales is nonempty and every entry is finite and > 0.
  void validate() const;

  /// sum_i J0(scales[i] * t), without the offset.
  double sum_at(double t) const;
};

struct MinimizeOptions {
  double grid_step = 1e-3;
  double refine_tolerance = 1e-10;
  double min_cutoff = 50.0;
  /// Target for sum_i (a_i T)^(-1/3), expressed as a fraction of the
  /// available slack 1 + constant_offset.
  double tail_fraction = 0.9;
  double max_cutoff = 1e6;
  unsigned threads = 1;
};

struct MinCertificate {
  BesselSumSpec spec;
  double min_value = 0.0;  ///< minimum of the sum, offset excluded
  double argmin = 0.0;
  double scan_cutoff_T = 0.0;
  double tail_bound_at_T = 0.0;  ///< sum_i (a_i T)^(-1/3)
  double grid_step = 0.0;
  double margin = 0.0;  ///< min_value + constant_offset + 1

  /// The region t > T cannot push the objective to -1 or below.
  bool tail_certified() const { return tail_bound_at_T < 1.0 + spec.constant_offset; }
};

enum class CriterionKind { collinear, triangle_crude, triangle_rotation };
enum class VerdictStatus { pass, fail, inconclusive };

std::string_view to_string(CriterionKind kind);
std::string_view to_string(VerdictStatus status);

/// Margins within this distance of zero are reported as inconclusive.
inline constexpr double kVerdictTieTolerance = 1e-9;

struct CriterionVerdict {
  VerdictStatus status = VerdictStatus::inconclusive;
  MinCertificate certificate;
  CriterionKind criterion_kind = CriterionKind::collinear;

  bool passes() const { return status == VerdictStatus::pass; }
};

/// Smallest T >= min_cutoff with sum_i (a_i T)^(-1/3) <= tail_fraction * (1 + offset).
/// Throws UnsatisfiableCutoffError if that T exceeds max_cutoff.
double select_cutoff(const BesselSumSpec& spec, const MinimizeOptions& options = {});

/// Grid scan of [0, T] followed by golden-section refinement around the best
/// grid point. The result is independent of options.threads.
MinCertificate minimize_bessel_sum(const BesselSumSpec& spec, const MinimizeOptions& options = {});

/// pass iff margin > tie tolerance and the tail is certified; fail iff
/// margin < -tie tolerance; inconclusive otherwise.
CriterionVerdict make_verdict(MinCertificate cert, CriterionKind kind);

/// min_{t >= 0} J0(t), computed once on first use and cached.
double j0_minimum();

/// J0(t) + J0(kappa t) + J0((1 + kappa) t) > -1. The radius is validated but
/// does not enter the computation.
CriterionVerdict check_collinear(double kappa, double radius = 1.0,
                                 const MinimizeOptions& options = {});

/// J0(t) + J0(omega t) + min J0 > -1.
CriterionVerdict check_triangle_crude(double omega, const MinimizeOptions& options = {});

/// J0(t) + J0(omega t) + J0(omega' t) > -1, omega' from composed_map_minus_identity.
/// phi must lie in [0, 2 pi). Throws SingularMapError when omega = 1, phi = 0.
CriterionVerdict check_triangle_rotation(double omega, double phi,
                                         const MinimizeOptions& options = {});

struct ComposedMap {
  double omega_prime = 0.0;
  double phi_prime = 0.0;  ///< in [0, 2 pi)
  bool degenerate = false;
};

/// Writes g - I as a dilation by omega' composed with a rotation by phi',
/// where g is the dilation by omega composed with the rotation by phi.
ComposedMap composed_map_minus_identity(double omega, double phi);

struct ProfilePoint {
  double t;
  double value;
};

/// Samples the objective sum_i J0(a_i t) + constant_offset at t = k * step,
/// k = 0 .. floor(t_max / step).
std::vector<ProfilePoint> bessel_sum_profile(const BesselSumSpec& spec, double t_max, double step);

}  // namespace chromacert
