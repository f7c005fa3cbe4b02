#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace chromacert {

using Complex = std::complex<double>;

/// The prime field F_p for an odd prime p < 2^31.
class PrimeField {
 public:
  /// Throws DomainError if p is not an odd prime in range.
  explicit PrimeField(std::int64_t p);

  std::int64_t p() const noexcept { return p_; }

  std::int64_t reduce(std::int64_t a) const noexcept {
    const std::int64_t r = a % p_;
    return r < 0 ? r + p_ : r;
  }
  std::int64_t add(std::int64_t a, std::int64_t b) const noexcept { return reduce(a + b); }
  std::int64_t sub(std::int64_t a, std::int64_t b) const noexcept { return reduce(a - b); }
  std::int64_t mul(std::int64_t a, std::int64_t b) const noexcept {
    return reduce(reduce(a) * reduce(b));
  }
  std::int64_t pow(std::int64_t base, std::int64_t exp) const noexcept;
  /// Throws DomainError for a = 0 mod p.
  std::int64_t inverse(std::int64_t a) const;

  /// e(k / p) = exp(2 pi i k / p), read from a precomputed table.
  const Complex& root(std::int64_t k) const noexcept { return roots_[reduce(k)]; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept { return a.p_ == b.p_; }

 private:
  std::int64_t p_;
  std::vector<Complex> roots_;
};

bool is_prime(std::int64_t n);

/// A point (x1, x2) of F_p x F_p with reduced coordinates.
struct FpPoint {
  std::int64_t x1 = 0;
  std::int64_t x2 = 0;

  friend auto operator<=>(const FpPoint&, const FpPoint&) = default;
};

/// A function F_p x F_p -> C stored row-major: index x1 * p + x2.
class GridFunction {
 public:
  explicit GridFunction(std::int64_t p);
  GridFunction(std::int64_t p, std::vector<Complex> values);

  std::int64_t p() const noexcept { return p_; }
  Complex& operator()(std::int64_t x1, std::int64_t x2) { return values_[index(x1, x2)]; }
  const Complex& operator()(std::int64_t x1, std::int64_t x2) const {
    return values_[index(x1, x2)];
  }
  std::span<const Complex> values() const noexcept { return values_; }
  std::span<Complex> values() noexcept { return values_; }

 private:
  std::size_t index(std::int64_t x1, std::int64_t x2) const noexcept {
    return static_cast<std::size_t>(x1 * p_ + x2);
  }

  std::int64_t p_;
  std::vector<Complex> values_;
};

/// A linear map of F_p x F_p, x -> M x. Rotation-dilations have the form
/// [[c, -d], [d, c]]; general matrices are allowed with is_rotation_dilation
/// cleared.
class AffineMap {
 public:
  static AffineMap rotation_dilation(const PrimeField& field, std::int64_t c, std::int64_t d);
  static AffineMap general(const PrimeField& field, std::int64_t m11, std::int64_t m12,
                           std::int64_t m21, std::int64_t m22);
  static AffineMap identity(const PrimeField& field) { return rotation_dilation(field, 1, 0); }

  std::int64_t p() const noexcept { return p_; }
  bool is_rotation_dilation() const noexcept { return rotation_dilation_; }
  /// Rotation-dilation parameters; meaningful when is_rotation_dilation().
  std::int64_t c() const noexcept { return m11_; }
  std::int64_t d() const noexcept { return m21_; }

  std::int64_t det() const noexcept { return det_; }
  std::int64_t det_minus_identity() const noexcept { return det_minus_identity_; }
  bool invertible() const noexcept { return det_ != 0; }

  FpPoint apply(const FpPoint& x) const noexcept;
  /// The map g - I.
  AffineMap minus_identity() const;
  /// Throws SingularMapError when det = 0.
  AffineMap inverse() const;

  std::int64_t m11() const noexcept { return m11_; }
  std::int64_t m12() const noexcept { return m12_; }
  std::int64_t m21() const noexcept { return m21_; }
  std::int64_t m22() const noexcept { return m22_; }

 private:
  AffineMap(std::int64_t p, std::int64_t m11, std::int64_t m12, std::int64_t m21,
            std::int64_t m22, bool rotation_dilation);

  std::int64_t p_;
  std::int64_t m11_, m12_, m21_, m22_;
  bool rotation_dilation_;
  std::int64_t det_;
  std::int64_t det_minus_identity_;
};

/// ||x|| = x1^2 + x2^2 mod p.
std::int64_t norm(const FpPoint& pt, const PrimeField& field);

/// All points with norm j, sorted lexicographically. Throws DomainError for j = 0 mod p.
std::vector<FpPoint> sphere_points(const PrimeField& field, std::int64_t j);

/// Points with norm 0 (the isotropic cone, including the origin).
std::vector<FpPoint> null_cone_points(const PrimeField& field);

/// hat f(r) = sum_x f(x) e(-<x, r>), by row-column naive transforms.
GridFunction dft2(const GridFunction& f, const PrimeField& field);
/// f(x) = p^-2 sum_r hat f(r) e(<r, x>).
GridFunction inverse_dft2(const GridFunction& fhat, const PrimeField& field);

/// (f * g)(x) = sum_y f(y) g(x - y), by direct O(p^4) summation.
GridFunction convolve_direct(const GridFunction& f, const GridFunction& g,
                             const PrimeField& field);

/// Transform of the point set {h(s) : s in points}:
/// result(r) = sum_s e(-<h(s), r>) for every r.
GridFunction point_set_transform(std::span<const FpPoint> points, const AffineMap& h,
                                 const PrimeField& field);

/// Euler's criterion: a^((p-1)/2) mod p mapped to {-1, 0, +1}.
int legendre_symbol(std::int64_t a, const PrimeField& field);

/// G(alpha) = sum_z e(alpha z^2 / p). Throws DomainError for alpha = 0 mod p.
Complex gauss_sum(std::int64_t alpha, const PrimeField& field);

/// sum_{k=1}^{p-1} e((-k j - c k^-1) / p).
Complex kloosterman_sum(std::int64_t j, std::int64_t c, const PrimeField& field);

/// max over r != 0 of |hat S(r)| for the sphere S_j or its image under map.
/// Throws DomainError for j = 0 and SingularMapError for a singular map.
double sphere_fourier_max(const PrimeField& field, std::int64_t j,
                          const std::optional<AffineMap>& map = std::nullopt);

}  // namespace chromacert
