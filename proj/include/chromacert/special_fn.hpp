#pragma once

namespace chromacert {

/// A real scalar together with a guaranteed absolute error bound.
struct RealValue {
  double value = 0.0;
  double abs_error = 0.0;
};

/// Zeroth Bessel function of the first kind, J0(t), for t >= 0.
///
/// Three regimes are used: the Taylor series for small t, Miller's backward
/// recurrence (normalized by J0 + 2 sum J_2k = 1) in the transition band, and
/// the Hankel asymptotic expansion for large t. abs_error is a per-regime
/// constant; it is at most 1e-12 for every t in [0, 500].
///
/// Throws DomainError for negative or non-finite t.
RealValue bessel_j0(double t);

/// Crude uniform bound |J_nu(t)| <= t^(-1/3), valid for nu >= 0 and t > 0.
/// Throws DomainError for t <= 0 or non-finite t.
double bessel_magnitude_bound(double t);

}  // namespace chromacert
