#include "chromacert/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "chromacert/errors.hpp"
#include "chromacert/special_fn.hpp"

namespace chromacert {
namespace {

struct Sample {
  double value;
  double t;
};

// Lexicographic on (value, t) so that any partition of the grid reduces to
// the same winner.
bool better(const Sample& a, const Sample& b) {
  if (a.value != b.value) return a.value < b.value;
  return a.t < b.t;
}

Sample scan_range(const BesselSumSpec& spec, double step, double cutoff, std::size_t first,
                  std::size_t last) {
  Sample best{std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t i = first; i < last; ++i) {
    const double t = std::min(static_cast<double>(i) * step, cutoff);
    const Sample s{spec.sum_at(t), t};
    if (better(s, best)) best = s;
  }
  return best;
}

Sample golden_section(const BesselSumSpec& spec, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = spec.sum_at(x1);
  double f2 = spec.sum_at(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = spec.sum_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = spec.sum_at(x2);
    }
  }
  return f1 <= f2 ? Sample{f1, x1} : Sample{f2, x2};
}

double tail_bound(const BesselSumSpec& spec, double cutoff) {
  double sum = 0.0;
  for (double a : spec.scales) sum += bessel_magnitude_bound(a * cutoff);
  return sum;
}

void require_positive(double x, const char* name) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError(std::string(name) + " must be finite and > 0");
  }
}

}  // namespace

CriterionVerdict make_verdict(MinCertificate cert, CriterionKind kind) {
  CriterionVerdict v;
  v.criterion_kind = kind;
  if (std::abs(cert.margin) <= kVerdictTieTolerance) {
    v.status = VerdictStatus::inconclusive;
  } else if (cert.margin < 0.0) {
    v.status = VerdictStatus::fail;
  } else {
    v.status = cert.tail_certified() ? VerdictStatus::pass : VerdictStatus::inconclusive;
  }
  v.certificate = std::move(cert);
  return v;
}

void BesselSumSpec::validate() const {
  if (scales.empty()) throw DomainError("BesselSumSpec: scales must be nonempty");
  for (double a : scales) {
    if (!std::isfinite(a) || a <= 0.0) throw DomainError("BesselSumSpec: scales must be > 0");
  }
  if (!std::isfinite(constant_offset)) throw DomainError("BesselSumSpec: offset must be finite");
}

double BesselSumSpec::sum_at(double t) const {
  double sum = 0.0;
  for (double a : scales) sum += bessel_j0(a * t).value;
  return sum;
}

std::string_view to_string(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::collinear:
      return "collinear";
    case CriterionKind::triangle_crude:
      return "triangle_crude";
    case CriterionKind::triangle_rotation:
      return "triangle_rotation";
  }
  return "unknown";
}

std::string_view to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::pass:
      return "pass";
    case VerdictStatus::fail:
      return "fail";
    case VerdictStatus::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

double select_cutoff(const BesselSumSpec& spec, const MinimizeOptions& options) {
  spec.validate();
  const double target = options.tail_fraction * (1.0 + spec.constant_offset);
  if (!(target > 0.0)) {
    throw UnsatisfiableCutoffError("no tail cutoff can certify an offset of " +
                                   std::to_string(spec.constant_offset));
  }
  // sum_i (a_i T)^(-1/3) = T^(-1/3) * sum_i a_i^(-1/3)
  double k = 0.0;
  for (double a : spec.scales) k += 1.0 / std::cbrt(a);
  double cutoff = std::max(options.min_cutoff, std::pow(k / target, 3.0));
  if (!std::isfinite(cutoff) || cutoff > options.max_cutoff) {
    throw UnsatisfiableCutoffError("tail bound needs T > " + std::to_string(options.max_cutoff));
  }
  while (tail_bound(spec, cutoff) > target) {
    cutoff = std::nextafter(cutoff, std::numeric_limits<double>::infinity());
  }
  return cutoff;
}

MinCertificate minimize_bessel_sum(const BesselSumSpec& spec, const MinimizeOptions& options) {
  const double cutoff = select_cutoff(spec, options);
  const double step = options.grid_step;
  if (!std::isfinite(step) || step <= 0.0) throw DomainError("grid_step must be > 0");

  const auto points = static_cast<std::size_t>(std::ceil(cutoff / step)) + 1;
  const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, 64));

  Sample best{std::numeric_limits<double>::infinity(), 0.0};
  if (workers == 1) {
    best = scan_range(spec, step, cutoff, 0, points);
  } else {
    std::vector<Sample> partial(workers);
    std::vector<std::thread> pool;
    const std::size_t chunk = (points + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t first = std::min(points, w * chunk);
      const std::size_t last = std::min(points, first + chunk);
      pool.emplace_back([&, w, first, last] {
        partial[w] = scan_range(spec, step, cutoff, first, last);
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& s : partial) {
      if (better(s, best)) best = s;
    }
  }

  const double lo = std::max(0.0, best.t - step);
  const double hi = std::min(cutoff, best.t + step);
  const Sample refined = golden_section(spec, lo, hi, options.refine_tolerance);
  if (better(refined, best)) best = refined;

  MinCertificate cert;
  cert.spec = spec;
  cert.min_value = best.value;
  cert.argmin = best.t;
  cert.scan_cutoff_T = cutoff;
  cert.tail_bound_at_T = tail_bound(spec, cutoff);
  cert.grid_step = step;
  cert.margin = best.value + spec.constant_offset + 1.0;
  return cert;
}

double j0_minimum() {
  static const double value = minimize_bessel_sum(BesselSumSpec{{1.0}, 0.0}).min_value;
  return value;
}

CriterionVerdict check_collinear(double kappa, double radius, const MinimizeOptions& options) {
  require_positive(kappa, "kappa");
  require_positive(radius, "radius");
  const BesselSumSpec spec{{1.0, kappa, 1.0 + kappa}, 0.0};
  return make_verdict(minimize_bessel_sum(spec, options), CriterionKind::collinear);
}

CriterionVerdict check_triangle_crude(double omega, const MinimizeOptions& options) {
  require_positive(omega, "omega");
  const BesselSumSpec spec{{1.0, omega}, j0_minimum()};
  return make_verdict(minimize_bessel_sum(spec, options), CriterionKind::triangle_crude);
}

CriterionVerdict check_triangle_rotation(double omega, double phi,
                                         const MinimizeOptions& options) {
  require_positive(omega, "omega");
  if (!std::isfinite(phi) || phi < 0.0 || phi >= 2.0 * std::numbers::pi) {
    throw DomainError("phi must lie in [0, 2 pi)");
  }
  const ComposedMap gi = composed_map_minus_identity(omega, phi);
  if (gi.degenerate) throw SingularMapError("g - I is singular (omega = 1, phi = 0)");
  const BesselSumSpec spec{{1.0, omega, gi.omega_prime}, 0.0};
  return make_verdict(minimize_bessel_sum(spec, options), CriterionKind::triangle_rotation);
}

ComposedMap composed_map_minus_identity(double omega, double phi) {
  require_positive(omega, "omega");
  if (!std::isfinite(phi)) throw DomainError("phi must be finite");
  const double x = omega * std::cos(phi) - 1.0;
  const double y = omega * std::sin(phi);
  const double r = std::hypot(x, y);
  if (r == 0.0) return {0.0, 0.0, true};
  double angle = std::atan2(y, x);
  if (angle < 0.0) angle += 2.0 * std::numbers::pi;
  if (angle >= 2.0 * std::numbers::pi) angle = 0.0;
  return {r, angle, false};
}

std::vector<ProfilePoint> bessel_sum_profile(const BesselSumSpec& spec, double t_max, double step) {
  spec.validate();
  if (!std::isfinite(step) || step <= 0.0) throw DomainError("profile step must be > 0");
  if (!std::isfinite(t_max) || t_max < 0.0) throw DomainError("profile t_max must be >= 0");
  const auto last = static_cast<std::size_t>(std::floor(t_max / step * (1.0 + 1e-12)));
  std::vector<ProfilePoint> rows;
  rows.reserve(last + 1);
  for (std::size_t k = 0; k <= last; ++k) {
    const double t = static_cast<double>(k) * step;
    rows.push_back({t, spec.sum_at(t) + spec.constant_offset});
  }
  return rows;
}

}  // namespace chromacert
