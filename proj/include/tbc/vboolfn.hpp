#pragma once

// Vectorial Boolean functions on (F_2)^m, m-bit S-boxes in particular.
// Values are integers whose bit i is coordinate i.

#include <cstdint>
#include <span>
#include <vector>

#include "tbc/gf2.hpp"
#include "tbc/permutation.hpp"

namespace tbc {

inline constexpr unsigned kMaxSBoxWidth = 16;

/// Lookup table of a map (F_2)^m -> (F_2)^m; a permutation unless explicitly
/// constructed with allow_non_bijective.
class SBox {
 public:
  struct AllowNonBijective {};

  SBox() = default;
  /// Throws DomainError on a bad width, a wrong table length, out-of-range
  /// entries, or a non-bijective table.
  SBox(unsigned width, std::vector<std::uint32_t> table);
  SBox(unsigned width, std::vector<std::uint32_t> table, AllowNonBijective);

  static SBox identity(unsigned width);
  static SBox from_permutation(unsigned width, const Permutation& p);

  unsigned width() const noexcept { return width_; }
  std::uint32_t size() const noexcept { return std::uint32_t{1} << width_; }
  std::uint32_t operator()(std::uint32_t x) const noexcept { return table_[x]; }
  const std::vector<std::uint32_t>& table() const noexcept { return table_; }

  bool is_bijective() const noexcept { return bijective_; }
  bool fixes_zero() const noexcept { return table_.front() == 0; }
  SBox inverse() const;
  Permutation as_permutation() const;

  friend bool operator==(const SBox& a, const SBox& b) {
    return a.width_ == b.width_ && a.table_ == b.table_;
  }

 private:
  void validate(bool require_bijective);

  unsigned width_ = 0;
  std::vector<std::uint32_t> table_;
  bool bijective_ = false;
};

/// Truth table of a Boolean function of m variables.
class BoolComponent {
 public:
  BoolComponent(unsigned width, std::vector<std::uint8_t> truth_table);

  unsigned width() const noexcept { return width_; }
  const std::vector<std::uint8_t>& truth_table() const noexcept { return table_; }
  std::uint8_t operator()(std::uint32_t x) const noexcept { return table_[x]; }

 private:
  unsigned width_;
  std::vector<std::uint8_t> table_;
};

/// The component x -> <v, f(x)>.
BoolComponent component(const SBox& f, std::uint32_t v);

/// Im(f^_u) = {f(x+u) + f(x)}, sorted ascending. Throws DomainError for u = 0.
std::vector<std::uint32_t> derivative_image(const SBox& f, std::uint32_t u);
std::vector<gf2::Vec> derivative_image_vecs(const SBox& f, std::uint32_t u);

/// x -> f(x) + f(0).
SBox normalize_zero(const SBox& f);

/// In-place fast Walsh-Hadamard butterfly; length must be a power of two.
void fast_walsh_hadamard(std::span<std::int32_t> values);

/// W(v, a) = sum_x (-1)^(<v,f(x)> + <a,x>) for every v != 0 and every a.
class WalshSpectrum {
 public:
  WalshSpectrum(unsigned width, std::vector<std::int32_t> values)
      : width_(width), values_(std::move(values)) {}

  unsigned width() const noexcept { return width_; }
  std::int32_t at(std::uint32_t v, std::uint32_t a) const {
    return values_.at((std::size_t{v} - 1) * (std::size_t{1} << width_) + a);
  }
  std::span<const std::int32_t> row(std::uint32_t v) const;
  std::int32_t max_abs() const;

 private:
  unsigned width_;
  std::vector<std::int32_t> values_;
};

WalshSpectrum walsh_spectrum(const SBox& f);

/// Distance of the component to the nearest affine function.
std::uint32_t nonlinearity(const BoolComponent& c);
/// Minimum component nonlinearity, 2^(m-1) - max|W|/2.
std::uint32_t nonlinearity(const SBox& f);

/// ANF coefficients via the binary Moebius transform; entry s is the
/// coefficient of the monomial prod_{i in s} x_i.
std::vector<std::uint8_t> algebraic_normal_form(const BoolComponent& c);
/// Degree of the ANF; the zero function has degree 0.
unsigned anf_degree(const BoolComponent& c);

/// True when x -> f(x) + f(0) is linear.
bool is_affine(const SBox& f);

}  // namespace tbc
