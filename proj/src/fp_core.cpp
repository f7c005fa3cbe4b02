#include "chromacert/fp_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "chromacert/errors.hpp"

namespace chromacert {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t k = 3; k * k <= n; k += 2) {
    if (n % k == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::int64_t p) : p_(p) {
  if (p < 3 || p >= (std::int64_t{1} << 31) || !is_prime(p)) {
    throw DomainError("PrimeField: " + std::to_string(p) + " is not an odd prime below 2^31");
  }
  roots_.reserve(static_cast<std::size_t>(p));
  for (std::int64_t k = 0; k < p; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p);
    roots_.emplace_back(std::cos(angle), std::sin(angle));
  }
}

std::int64_t PrimeField::pow(std::int64_t base, std::int64_t exp) const noexcept {
  std::int64_t result = 1;
  std::int64_t b = reduce(base);
  while (exp > 0) {
    if (exp & 1) result = (result * b) % p_;
    b = (b * b) % p_;
    exp >>= 1;
  }
  return result;
}

std::int64_t PrimeField::inverse(std::int64_t a) const {
  if (reduce(a) == 0) throw DomainError("PrimeField: zero has no inverse");
  return pow(a, p_ - 2);
}

GridFunction::GridFunction(std::int64_t p) : p_(p), values_(static_cast<std::size_t>(p * p)) {}

GridFunction::GridFunction(std::int64_t p, std::vector<Complex> values)
    : p_(p), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(p * p)) {
    throw DomainError("GridFunction: expected p*p values");
  }
}

AffineMap::AffineMap(std::int64_t p, std::int64_t m11, std::int64_t m12, std::int64_t m21,
                     std::int64_t m22, bool rotation_dilation)
    : p_(p), m11_(m11), m12_(m12), m21_(m21), m22_(m22), rotation_dilation_(rotation_dilation) {
  auto red = [p](std::int64_t a) { return ((a % p) + p) % p; };
  det_ = red(m11_ * m22_ - m12_ * m21_);
  det_minus_identity_ = red((m11_ - 1) * (m22_ - 1) - m12_ * m21_);
}

AffineMap AffineMap::rotation_dilation(const PrimeField& field, std::int64_t c, std::int64_t d) {
  const std::int64_t cr = field.reduce(c);
  const std::int64_t dr = field.reduce(d);
  return AffineMap(field.p(), cr, field.reduce(-dr), dr, cr, true);
}

AffineMap AffineMap::general(const PrimeField& field, std::int64_t m11, std::int64_t m12,
                             std::int64_t m21, std::int64_t m22) {
  return AffineMap(field.p(), field.reduce(m11), field.reduce(m12), field.reduce(m21),
                   field.reduce(m22), false);
}

FpPoint AffineMap::apply(const FpPoint& x) const noexcept {
  return {(m11_ * x.x1 + m12_ * x.x2) % p_, (m21_ * x.x1 + m22_ * x.x2) % p_};
}

AffineMap AffineMap::minus_identity() const {
  auto red = [this](std::int64_t a) { return ((a % p_) + p_) % p_; };
  return AffineMap(p_, red(m11_ - 1), m12_, m21_, red(m22_ - 1), rotation_dilation_);
}

AffineMap AffineMap::inverse() const {
  if (det_ == 0) throw SingularMapError("AffineMap: determinant is zero");
  const PrimeField field(p_);
  const std::int64_t inv = field.inverse(det_);
  return AffineMap(p_, field.mul(m22_, inv), field.mul(-m12_, inv), field.mul(-m21_, inv),
                   field.mul(m11_, inv), rotation_dilation_);
}

std::int64_t norm(const FpPoint& pt, const PrimeField& field) {
  return field.add(field.mul(pt.x1, pt.x1), field.mul(pt.x2, pt.x2));
}

namespace {

// roots[v] lists every z with z^2 = v, ascending.
std::vector<std::vector<std::int64_t>> square_roots(const PrimeField& field) {
  std::vector<std::vector<std::int64_t>> roots(static_cast<std::size_t>(field.p()));
  for (std::int64_t z = 0; z < field.p(); ++z) {
    roots[static_cast<std::size_t>(field.mul(z, z))].push_back(z);
  }
  return roots;
}

std::vector<FpPoint> level_set(const PrimeField& field, std::int64_t j) {
  const auto roots = square_roots(field);
  std::vector<FpPoint> pts;
  for (std::int64_t x1 = 0; x1 < field.p(); ++x1) {
    const std::int64_t rest = field.sub(j, field.mul(x1, x1));
    for (std::int64_t x2 : roots[static_cast<std::size_t>(rest)]) pts.push_back({x1, x2});
  }
  return pts;
}

void require_same_field(std::int64_t p, const PrimeField& field) {
  if (p != field.p()) throw DomainError("object belongs to a different prime field");
}

// One axis of the 2-D transform. sign = -1 forward, +1 inverse.
GridFunction transform_rows(const GridFunction& f, const PrimeField& field, int sign) {
  const std::int64_t p = field.p();
  GridFunction out(p);
  for (std::int64_t x1 = 0; x1 < p; ++x1) {
    for (std::int64_t r2 = 0; r2 < p; ++r2) {
      Complex acc{};
      std::int64_t phase = 0;
      for (std::int64_t x2 = 0; x2 < p; ++x2) {
        acc += f(x1, x2) * field.root(sign * phase);
        phase += r2;
        if (phase >= p) phase -= p;
      }
      out(x1, r2) = acc;
    }
  }
  return out;
}

GridFunction transform_columns(const GridFunction& f, const PrimeField& field, int sign) {
  const std::int64_t p = field.p();
  GridFunction out(p);
  for (std::int64_t r1 = 0; r1 < p; ++r1) {
    for (std::int64_t x2 = 0; x2 < p; ++x2) {
      Complex acc{};
      std::int64_t phase = 0;
      for (std::int64_t x1 = 0; x1 < p; ++x1) {
        acc += f(x1, x2) * field.root(sign * phase);
        phase += r1;
        if (phase >= p) phase -= p;
      }
      out(r1, x2) = acc;
    }
  }
  return out;
}

}  // namespace

std::vector<FpPoint> sphere_points(const PrimeField& field, std::int64_t j) {
  if (field.reduce(j) == 0) throw DomainError("sphere_points: radius j must be nonzero mod p");
  return level_set(field, field.reduce(j));
}

std::vector<FpPoint> null_cone_points(const PrimeField& field) { return level_set(field, 0); }

GridFunction dft2(const GridFunction& f, const PrimeField& field) {
  require_same_field(f.p(), field);
  return transform_columns(transform_rows(f, field, -1), field, -1);
}

GridFunction inverse_dft2(const GridFunction& fhat, const PrimeField& field) {
  require_same_field(fhat.p(), field);
  GridFunction out = transform_columns(transform_rows(fhat, field, 1), field, 1);
  const double scale = 1.0 / static_cast<double>(field.p() * field.p());
  for (auto& v : out.values()) v *= scale;
  return out;
}

GridFunction convolve_direct(const GridFunction& f, const GridFunction& g,
                             const PrimeField& field) {
  require_same_field(f.p(), field);
  require_same_field(g.p(), field);
  const std::int64_t p = field.p();
  GridFunction out(p);
  for (std::int64_t x1 = 0; x1 < p; ++x1) {
    for (std::int64_t x2 = 0; x2 < p; ++x2) {
      Complex acc{};
      for (std::int64_t y1 = 0; y1 < p; ++y1) {
        for (std::int64_t y2 = 0; y2 < p; ++y2) {
          acc += f(y1, y2) * g(field.sub(x1, y1), field.sub(x2, y2));
        }
      }
      out(x1, x2) = acc;
    }
  }
  return out;
}

GridFunction point_set_transform(std::span<const FpPoint> points, const AffineMap& h,
                                 const PrimeField& field) {
  require_same_field(h.p(), field);
  const std::int64_t p = field.p();
  std::vector<FpPoint> images;
  images.reserve(points.size());
  for (const auto& s : points) images.push_back(h.apply(s));

  GridFunction out(p);
  for (std::int64_t r1 = 0; r1 < p; ++r1) {
    for (std::int64_t r2 = 0; r2 < p; ++r2) {
      Complex acc{};
      for (const auto& y : images) acc += field.root(-(y.x1 * r1 + y.x2 * r2));
      out(r1, r2) = acc;
    }
  }
  return out;
}

int legendre_symbol(std::int64_t a, const PrimeField& field) {
  const std::int64_t r = field.reduce(a);
  if (r == 0) return 0;
  return field.pow(r, (field.p() - 1) / 2) == 1 ? 1 : -1;
}

Complex gauss_sum(std::int64_t alpha, const PrimeField& field) {
  if (field.reduce(alpha) == 0) throw DomainError("gauss_sum: alpha must be nonzero mod p");
  Complex acc{};
  for (std::int64_t z = 0; z < field.p(); ++z) acc += field.root(field.mul(alpha, field.mul(z, z)));
  return acc;
}

Complex kloosterman_sum(std::int64_t j, std::int64_t c, const PrimeField& field) {
  Complex acc{};
  for (std::int64_t k = 1; k < field.p(); ++k) {
    const std::int64_t phase = field.sub(field.mul(-k, j), field.mul(c, field.inverse(k)));
    acc += field.root(phase);
  }
  return acc;
}

double sphere_fourier_max(const PrimeField& field, std::int64_t j,
                          const std::optional<AffineMap>& map) {
  const AffineMap h = map.value_or(AffineMap::identity(field));
  require_same_field(h.p(), field);
  if (!h.invertible()) throw SingularMapError("sphere_fourier_max: map is not invertible");
  const auto sphere = sphere_points(field, j);
  const GridFunction hat = point_set_transform(sphere, h, field);
  double best = 0.0;
  const auto values = hat.values();
  for (std::size_t i = 1; i < values.size(); ++i) best = std::max(best, std::abs(values[i]));
  return best;
}

}  // namespace chromacert
