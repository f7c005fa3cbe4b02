#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "chromacert/fp_core.hpp"

namespace chromacert {

enum class Color { A, B };

std::string_view to_string(Color color);

/// Generator behind RandomColoring; reports record it next to the seed.
inline constexpr std::string_view kGeneratorName = "mt19937_64";

/// A two-coloring of F_p x F_p. Cell (x1, x2) is true for color A.
class Coloring {
 public:
  /// cells is row-major (x1 * p + x2) and must hold p * p entries.
  Coloring(const PrimeField& field, std::vector<std::uint8_t> cells);

  static Coloring uniform(const PrimeField& field, Color color);

  std::int64_t p() const noexcept { return p_; }
  bool is_a(std::int64_t x1, std::int64_t x2) const noexcept {
    return cells_[static_cast<std::size_t>(x1 * p_ + x2)] != 0;
  }
  bool has(const FpPoint& x, Color color) const noexcept {
    return is_a(x.x1, x.x2) == (color == Color::A);
  }
  std::int64_t count(Color color) const noexcept {
    return color == Color::A ? count_a_ : p_ * p_ - count_a_;
  }
  double density(Color color) const noexcept {
    return static_cast<double>(count(color)) / static_cast<double>(p_ * p_);
  }

 private:
  std::int64_t p_;
  std::vector<std::uint8_t> cells_;
  std::int64_t count_a_;
};

struct RandomColoring {
  std::uint64_t seed = 0;
};
struct NormResidueColoring {};
struct HalfplaneColoring {};
struct FileColoring {
  std::filesystem::path path;
};
using ColoringSpec = std::variant<RandomColoring, NormResidueColoring, HalfplaneColoring, FileColoring>;

/// random: each cell is A iff the top bit of the next mt19937_64 output is set.
/// norm_residue: A iff ||x|| is a nonzero square. halfplane: A iff x1 < ceil(p/2).
/// file: the text format of read_coloring; its prime must equal field.p().
Coloring make_coloring(const PrimeField& field, const ColoringSpec& spec);

/// Text format: `p=<prime>` then p lines of p characters from {0,1};
/// row i is x1 = i, column k is x2 = k, `1` is color A.
/// Throws ParseError carrying the offending line number.
Coloring read_coloring(std::istream& in);
void write_coloring(std::ostream& out, const Coloring& col);

/// The rotation-dilation [[c, -d], [d, c]] sending u to v.
/// Throws DomainError when ||u|| = 0.
AffineMap rotation_dilation_from(const FpPoint& u, const FpPoint& v, const PrimeField& field);

/// det g != 0 and det(g - I) != 0.
bool is_valid_config_map(const AffineMap& g);

/// Number of (x, s) with s in S_a and x, x + s, x + g(s) all of the given color.
/// Throws SingularMapError for an invalid map, DomainError for a = 0.
std::int64_t sigma_direct(const Coloring& col, const AffineMap& g, std::int64_t a, Color color,
                          unsigned threads = 1);

/// Terms of sigma = delta^3 |S| p^2 + delta (sigma1 + sigma1' + sigma1'') + sigma2,
/// all written in terms of the balanced function f = 1_color - delta.
struct SigmaBreakdown {
  double main_term = 0.0;
  double sigma1 = 0.0;         ///< sum_s (f o f)(s), via Fourier
  double sigma1_prime = 0.0;   ///< sum_s (f o f)(g s), via Fourier
  double sigma1_dprime = 0.0;  ///< sum_s (f o f)((g - I) s), via Fourier
  double sigma2 = 0.0;         ///< sum_x sum_s f(x) f(x + s) f(x + g s), direct
  double total = 0.0;
  double delta = 0.0;
};

SigmaBreakdown sigma_decomposed(const Coloring& col, const AffineMap& g, std::int64_t a,
                                Color color);

/// Largest prime accepted by sigma2_bilinear.
inline constexpr std::int64_t kMaxBilinearPrime = 13;

/// sigma2 from the Fourier side:
/// p^-4 sum_{u,v} F(-u-v) F(u) F(v) sum_s e(<s, u> + <g s, v>), F = hat f.
/// O(p^4 |S|); throws DomainError for p > kMaxBilinearPrime.
double sigma2_bilinear(const Coloring& col, const AffineMap& g, std::int64_t a, Color color);

/// sigma2(A) + sigma2(B); zero up to roundoff.
double sigma2_antisymmetry(const Coloring& col, const AffineMap& g, std::int64_t a);

/// f_A = 1_A - delta_A as a grid function (f_B for color B).
GridFunction balanced_function(const Coloring& col, Color color);

/// max_r |hat f_A(r) + hat f_B(r)|; zero up to roundoff.
double balanced_transform_antisymmetry(const Coloring& col, const PrimeField& field);

/// p^3 / 4 - 6.5 p^2 sqrt(p).
double theorem_lower_bound(const PrimeField& field);

struct MonochromaticTriple {
  FpPoint x;
  FpPoint s;
  Color color;

  FpPoint y(const PrimeField& field) const;
  FpPoint z(const PrimeField& field, const AffineMap& g) const;
};

/// First (x, s) in lexicographic order of (x1, x2, sphere index) with
/// x, x + s, x + g(s) monochromatic. Throws SingularMapError for an invalid map.
std::optional<MonochromaticTriple> find_monochromatic_triple(const Coloring& col,
                                                             const AffineMap& g, std::int64_t a,
                                                             unsigned threads = 1);

}  // namespace chromacert
