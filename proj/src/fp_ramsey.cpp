#include "chromacert/fp_ramsey.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <string>
#include <thread>

#include "chromacert/errors.hpp"

namespace chromacert {
namespace {

// Splits rows [0, rows) into contiguous blocks, one per worker, and returns
// the per-block results in block order.
template <typename Fn>
auto partition_rows(std::int64_t rows, unsigned threads, Fn fn) {
  using Result = decltype(fn(std::int64_t{0}, std::int64_t{0}));
  const auto workers = static_cast<std::int64_t>(std::clamp<unsigned>(threads, 1, 64));
  std::vector<Result> results(static_cast<std::size_t>(std::min(workers, rows)));
  if (results.size() <= 1) {
    results.assign(1, fn(0, rows));
    return results;
  }
  const std::int64_t n = static_cast<std::int64_t>(results.size());
  const std::int64_t chunk = (rows + n - 1) / n;
  std::vector<std::thread> pool;
  for (std::int64_t w = 0; w < n; ++w) {
    pool.emplace_back([&, w] {
      const std::int64_t first = std::min(rows, w * chunk);
      const std::int64_t last = std::min(rows, first + chunk);
      results[static_cast<std::size_t>(w)] = fn(first, last);
    });
  }
  for (auto& th : pool) th.join();
  return results;
}

void check_config(const Coloring& col, const AffineMap& g, std::int64_t a) {
  if (g.p() != col.p()) throw DomainError("map and coloring live over different primes");
  if (!is_valid_config_map(g)) {
    throw SingularMapError("map g and g - I must both be invertible");
  }
  if (a % col.p() == 0) throw DomainError("sphere radius a must be nonzero mod p");
}

FpPoint add(const FpPoint& x, const FpPoint& y, std::int64_t p) {
  std::int64_t a = x.x1 + y.x1;
  std::int64_t b = x.x2 + y.x2;
  if (a >= p) a -= p;
  if (b >= p) b -= p;
  return {a, b};
}

std::int64_t red(std::int64_t v, std::int64_t p) {
  const std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

// p^-2 sum_r |F(r)|^2 T_h(-r), where T_h is the transform of h(S).
double correlation_on_image(const GridFunction& power, std::span<const FpPoint> sphere,
                            const AffineMap& h, const PrimeField& field) {
  const std::int64_t p = field.p();
  const GridFunction image = point_set_transform(sphere, h, field);
  Complex acc{};
  for (std::int64_t r1 = 0; r1 < p; ++r1) {
    for (std::int64_t r2 = 0; r2 < p; ++r2) {
      acc += power(r1, r2) * image(red(-r1, p), red(-r2, p));
    }
  }
  return acc.real() / static_cast<double>(p * p);
}

}  // namespace

std::string_view to_string(Color color) { return color == Color::A ? "A" : "B"; }

Coloring::Coloring(const PrimeField& field, std::vector<std::uint8_t> cells)
    : p_(field.p()), cells_(std::move(cells)), count_a_(0) {
  if (cells_.size() != static_cast<std::size_t>(p_ * p_)) {
    throw DomainError("Coloring: expected p*p cells");
  }
  for (auto& c : cells_) {
    c = c ? 1 : 0;
    count_a_ += c;
  }
}

Coloring Coloring::uniform(const PrimeField& field, Color color) {
  return Coloring(field, std::vector<std::uint8_t>(static_cast<std::size_t>(field.p() * field.p()),
                                                   color == Color::A ? 1 : 0));
}

Coloring make_coloring(const PrimeField& field, const ColoringSpec& spec) {
  const std::int64_t p = field.p();
  const auto cells = static_cast<std::size_t>(p * p);
  return std::visit(
      [&](const auto& s) -> Coloring {
        using T = std::decay_t<decltype(s)>;
        std::vector<std::uint8_t> grid(cells, 0);
        if constexpr (std::is_same_v<T, RandomColoring>) {
          std::mt19937_64 gen(s.seed);
          for (auto& c : grid) c = static_cast<std::uint8_t>(gen() >> 63);
          return Coloring(field, std::move(grid));
        } else if constexpr (std::is_same_v<T, NormResidueColoring>) {
          for (std::int64_t x1 = 0; x1 < p; ++x1) {
            for (std::int64_t x2 = 0; x2 < p; ++x2) {
              grid[static_cast<std::size_t>(x1 * p + x2)] =
                  legendre_symbol(norm({x1, x2}, field), field) == 1 ? 1 : 0;
            }
          }
          return Coloring(field, std::move(grid));
        } else if constexpr (std::is_same_v<T, HalfplaneColoring>) {
          const std::int64_t rows = (p + 1) / 2;
          std::fill(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(rows * p), 1);
          return Coloring(field, std::move(grid));
        } else {
          std::ifstream in(s.path);
          if (!in) throw std::ios_base::failure("cannot open coloring file " + s.path.string());
          Coloring col = read_coloring(in);
          if (col.p() != p) {
            throw ParseError(1, "file declares p=" + std::to_string(col.p()) + ", expected p=" +
                                    std::to_string(p));
          }
          return col;
        }
      },
      spec);
}

Coloring read_coloring(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw ParseError(1, "missing header `p=<prime>`");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind("p=", 0) != 0) throw ParseError(1, "expected header `p=<prime>`");
  std::int64_t p = 0;
  try {
    std::size_t used = 0;
    p = std::stoll(line.substr(2), &used);
    if (used != line.size() - 2) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw ParseError(1, "invalid prime in header");
  }
  if (p < 3 || !is_prime(p) || p > 46337) throw ParseError(1, "p must be an odd prime");
  const PrimeField field(p);

  std::vector<std::uint8_t> cells;
  cells.reserve(static_cast<std::size_t>(p * p));
  for (std::int64_t row = 0; row < p; ++row) {
    ++lineno;
    if (!std::getline(in, line)) throw ParseError(lineno, "expected " + std::to_string(p) + " rows");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (static_cast<std::int64_t>(line.size()) != p) {
      throw ParseError(lineno, "row must have exactly " + std::to_string(p) + " characters");
    }
    for (char ch : line) {
      if (ch != '0' && ch != '1') throw ParseError(lineno, "cells must be '0' or '1'");
      cells.push_back(ch == '1' ? 1 : 0);
    }
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line != "\r") throw ParseError(lineno, "unexpected trailing content");
  }
  return Coloring(field, std::move(cells));
}

void write_coloring(std::ostream& out, const Coloring& col) {
  out << "p=" << col.p() << '\n';
  for (std::int64_t x1 = 0; x1 < col.p(); ++x1) {
    for (std::int64_t x2 = 0; x2 < col.p(); ++x2) out << (col.is_a(x1, x2) ? '1' : '0');
    out << '\n';
  }
}

AffineMap rotation_dilation_from(const FpPoint& u, const FpPoint& v, const PrimeField& field) {
  const std::int64_t n = norm(u, field);
  if (n == 0) throw DomainError("rotation_dilation_from: ||u|| must be nonzero");
  const std::int64_t inv = field.inverse(n);
  const std::int64_t c =
      field.mul(field.add(field.mul(u.x1, v.x1), field.mul(u.x2, v.x2)), inv);
  const std::int64_t d =
      field.mul(field.sub(field.mul(u.x1, v.x2), field.mul(u.x2, v.x1)), inv);
  return AffineMap::rotation_dilation(field, c, d);
}

bool is_valid_config_map(const AffineMap& g) {
  return g.det() != 0 && g.det_minus_identity() != 0;
}

std::int64_t sigma_direct(const Coloring& col, const AffineMap& g, std::int64_t a, Color color,
                          unsigned threads) {
  check_config(col, g, a);
  const PrimeField field(col.p());
  const std::int64_t p = field.p();
  const auto sphere = sphere_points(field, a);
  std::vector<FpPoint> images;
  for (const auto& s : sphere) images.push_back(g.apply(s));

  const auto partial = partition_rows(p, threads, [&](std::int64_t first, std::int64_t last) {
    std::int64_t count = 0;
    for (std::int64_t x1 = first; x1 < last; ++x1) {
      for (std::int64_t x2 = 0; x2 < p; ++x2) {
        const FpPoint x{x1, x2};
        if (!col.has(x, color)) continue;
        for (std::size_t i = 0; i < sphere.size(); ++i) {
          if (col.has(add(x, sphere[i], p), color) && col.has(add(x, images[i], p), color)) {
            ++count;
          }
        }
      }
    }
    return count;
  });
  std::int64_t total = 0;
  for (auto c : partial) total += c;
  return total;
}

GridFunction balanced_function(const Coloring& col, Color color) {
  const std::int64_t p = col.p();
  const double delta = col.density(color);
  GridFunction f(p);
  for (std::int64_t x1 = 0; x1 < p; ++x1) {
    for (std::int64_t x2 = 0; x2 < p; ++x2) {
      f(x1, x2) = (col.has({x1, x2}, color) ? 1.0 : 0.0) - delta;
    }
  }
  return f;
}

SigmaBreakdown sigma_decomposed(const Coloring& col, const AffineMap& g, std::int64_t a,
                                Color color) {
  check_config(col, g, a);
  const PrimeField field(col.p());
  const std::int64_t p = field.p();
  const auto sphere = sphere_points(field, a);

  SigmaBreakdown out;
  out.delta = col.density(color);
  out.main_term = out.delta * out.delta * out.delta * static_cast<double>(sphere.size()) *
                  static_cast<double>(p * p);

  const GridFunction f = balanced_function(col, color);
  GridFunction power = dft2(f, field);
  for (auto& v : power.values()) v = std::norm(v);

  out.sigma1 = correlation_on_image(power, sphere, AffineMap::identity(field), field);
  out.sigma1_prime = correlation_on_image(power, sphere, g, field);
  // sum_s (f o f)((I - g) s); the sphere is symmetric under s -> -s, so the
  // transform of (g - I)(S) serves equally.
  out.sigma1_dprime = correlation_on_image(power, sphere, g.minus_identity(), field);

  std::vector<FpPoint> images;
  for (const auto& s : sphere) images.push_back(g.apply(s));
  double s2 = 0.0;
  for (std::int64_t x1 = 0; x1 < p; ++x1) {
    for (std::int64_t x2 = 0; x2 < p; ++x2) {
      const FpPoint x{x1, x2};
      const double fx = f(x1, x2).real();
      double inner = 0.0;
      for (std::size_t i = 0; i < sphere.size(); ++i) {
        const FpPoint y = add(x, sphere[i], p);
        const FpPoint z = add(x, images[i], p);
        inner += f(y.x1, y.x2).real() * f(z.x1, z.x2).real();
      }
      s2 += fx * inner;
    }
  }
  out.sigma2 = s2;
  out.total =
      out.main_term + out.delta * (out.sigma1 + out.sigma1_prime + out.sigma1_dprime) + out.sigma2;
  return out;
}

double sigma2_bilinear(const Coloring& col, const AffineMap& g, std::int64_t a, Color color) {
  check_config(col, g, a);
  const PrimeField field(col.p());
  const std::int64_t p = field.p();
  if (p > kMaxBilinearPrime) {
    throw DomainError("sigma2_bilinear: p must not exceed " + std::to_string(kMaxBilinearPrime));
  }
  const auto sphere = sphere_points(field, a);
  std::vector<FpPoint> images;
  for (const auto& s : sphere) images.push_back(g.apply(s));
  const GridFunction F = dft2(balanced_function(col, color), field);

  Complex acc{};
  for (std::int64_t u1 = 0; u1 < p; ++u1) {
    for (std::int64_t u2 = 0; u2 < p; ++u2) {
      for (std::int64_t v1 = 0; v1 < p; ++v1) {
        for (std::int64_t v2 = 0; v2 < p; ++v2) {
          Complex kernel{};
          for (std::size_t i = 0; i < sphere.size(); ++i) {
            kernel += field.root(sphere[i].x1 * u1 + sphere[i].x2 * u2 + images[i].x1 * v1 +
                                 images[i].x2 * v2);
          }
          acc += F(red(-u1 - v1, p), red(-u2 - v2, p)) * F(u1, u2) * F(v1, v2) * kernel;
        }
      }
    }
  }
  const double p4 = static_cast<double>(p * p) * static_cast<double>(p * p);
  return acc.real() / p4;
}

double sigma2_antisymmetry(const Coloring& col, const AffineMap& g, std::int64_t a) {
  return sigma_decomposed(col, g, a, Color::A).sigma2 +
         sigma_decomposed(col, g, a, Color::B).sigma2;
}

double balanced_transform_antisymmetry(const Coloring& col, const PrimeField& field) {
  const GridFunction fa = dft2(balanced_function(col, Color::A), field);
  const GridFunction fb = dft2(balanced_function(col, Color::B), field);
  double worst = 0.0;
  for (std::size_t i = 0; i < fa.values().size(); ++i) {
    worst = std::max(worst, std::abs(fa.values()[i] + fb.values()[i]));
  }
  return worst;
}

double theorem_lower_bound(const PrimeField& field) {
  const auto p = static_cast<double>(field.p());
  return p * p * p / 4.0 - 6.5 * p * p * std::sqrt(p);
}

FpPoint MonochromaticTriple::y(const PrimeField& field) const {
  return {field.add(x.x1, s.x1), field.add(x.x2, s.x2)};
}

FpPoint MonochromaticTriple::z(const PrimeField& field, const AffineMap& g) const {
  const FpPoint gs = g.apply(s);
  return {field.add(x.x1, gs.x1), field.add(x.x2, gs.x2)};
}

std::optional<MonochromaticTriple> find_monochromatic_triple(const Coloring& col,
                                                             const AffineMap& g, std::int64_t a,
                                                             unsigned threads) {
  check_config(col, g, a);
  const PrimeField field(col.p());
  const std::int64_t p = field.p();
  const auto sphere = sphere_points(field, a);
  std::vector<FpPoint> images;
  for (const auto& s : sphere) images.push_back(g.apply(s));

  // Blocks are in row order, so the first block with a hit holds the
  // lexicographically first triple.
  const auto partial = partition_rows(
      p, threads, [&](std::int64_t first, std::int64_t last) -> std::optional<MonochromaticTriple> {
        for (std::int64_t x1 = first; x1 < last; ++x1) {
          for (std::int64_t x2 = 0; x2 < p; ++x2) {
            const FpPoint x{x1, x2};
            const Color c = col.is_a(x1, x2) ? Color::A : Color::B;
            for (std::size_t i = 0; i < sphere.size(); ++i) {
              if (col.has(add(x, sphere[i], p), c) && col.has(add(x, images[i], p), c)) {
                return MonochromaticTriple{x, sphere[i], c};
              }
            }
          }
        }
        return std::nullopt;
      });
  for (const auto& hit : partial) {
    if (hit) return hit;
  }
  return std::nullopt;
}

}  // namespace chromacert
