#include "tbc/vboolfn.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>

#include "tbc/error.hpp"

namespace tbc {

// ---------------------------------------------------------------- SBox

SBox::SBox(unsigned width, std::vector<std::uint32_t> table)
    : width_(width), table_(std::move(table)) {
  validate(true);
}

SBox::SBox(unsigned width, std::vector<std::uint32_t> table, AllowNonBijective)
    : width_(width), table_(std::move(table)) {
  validate(false);
}

void SBox::validate(bool require_bijective) {
  if (width_ < 2 || width_ > kMaxSBoxWidth)
    throw DomainError("S-box width must be in 2.." + std::to_string(kMaxSBoxWidth));
  if (table_.size() != size())
    throw DomainError("S-box table has " + std::to_string(table_.size()) + " entries, expected " +
                      std::to_string(size()));
  std::vector<bool> seen(size(), false);
  bijective_ = true;
  for (std::uint32_t y : table_) {
    if (y >= size()) throw DomainError("S-box entry " + std::to_string(y) + " out of range");
    if (seen[y]) bijective_ = false;
    seen[y] = true;
  }
  if (require_bijective && !bijective_) throw DomainError("S-box table is not a permutation");
}

SBox SBox::identity(unsigned width) {
  std::vector<std::uint32_t> t(std::size_t{1} << width);
  for (std::uint32_t x = 0; x < t.size(); ++x) t[x] = x;
  return SBox(width, std::move(t));
}

SBox SBox::from_permutation(unsigned width, const Permutation& p) {
  if (p.degree() != (std::size_t{1} << width))
    throw DimensionError("permutation degree does not match S-box width");
  return SBox(width, std::vector<std::uint32_t>(p.images().begin(), p.images().end()));
}

SBox SBox::inverse() const {
  if (!bijective_) throw DomainError("inverse of a non-bijective S-box");
  std::vector<std::uint32_t> inv(size());
  for (std::uint32_t x = 0; x < size(); ++x) inv[table_[x]] = x;
  return SBox(width_, std::move(inv));
}

Permutation SBox::as_permutation() const {
  if (!bijective_) throw DomainError("non-bijective S-box is not a permutation");
  return Permutation::from_images_unchecked(std::vector<Point>(table_.begin(), table_.end()));
}

// ---------------------------------------------------------------- components

BoolComponent::BoolComponent(unsigned width, std::vector<std::uint8_t> truth_table)
    : width_(width), table_(std::move(truth_table)) {
  if (width_ > kMaxSBoxWidth || table_.size() != (std::size_t{1} << width_))
    throw DomainError("truth table length must be 2^m");
  for (auto b : table_)
    if (b > 1) throw DomainError("truth table entries must be 0 or 1");
}

BoolComponent component(const SBox& f, std::uint32_t v) {
  std::vector<std::uint8_t> t(f.size());
  for (std::uint32_t x = 0; x < f.size(); ++x) t[x] = static_cast<std::uint8_t>(gf2::dot(v, f(x)));
  return BoolComponent(f.width(), std::move(t));
}

std::vector<std::uint32_t> derivative_image(const SBox& f, std::uint32_t u) {
  if (u == 0) throw DomainError("derivative in the zero direction is degenerate");
  if (u >= f.size()) throw DimensionError("direction outside (F_2)^m");
  std::vector<bool> hit(f.size(), false);
  for (std::uint32_t x = 0; x < f.size(); ++x) hit[f(x ^ u) ^ f(x)] = true;
  std::vector<std::uint32_t> out;
  for (std::uint32_t y = 0; y < f.size(); ++y)
    if (hit[y]) out.push_back(y);
  return out;
}

std::vector<gf2::Vec> derivative_image_vecs(const SBox& f, std::uint32_t u) {
  std::vector<gf2::Vec> out;
  for (std::uint32_t y : derivative_image(f, u)) out.emplace_back(f.width(), y);
  return out;
}

SBox normalize_zero(const SBox& f) {
  std::vector<std::uint32_t> t = f.table();
  const std::uint32_t c = t.front();
  for (auto& y : t) y ^= c;
  if (f.is_bijective()) return SBox(f.width(), std::move(t));
  return SBox(f.width(), std::move(t), SBox::AllowNonBijective{});
}

// ---------------------------------------------------------------- Walsh

void fast_walsh_hadamard(std::span<std::int32_t> values) {
  const std::size_t n = values.size();
  if (!std::has_single_bit(n)) throw DomainError("Walsh transform length must be a power of two");
  for (std::size_t half = 1; half < n; half <<= 1)
    for (std::size_t i = 0; i < n; i += 2 * half)
      for (std::size_t j = i; j < i + half; ++j) {
        const std::int32_t a = values[j];
        const std::int32_t b = values[j + half];
        values[j] = a + b;
        values[j + half] = a - b;
      }
}

std::span<const std::int32_t> WalshSpectrum::row(std::uint32_t v) const {
  const std::size_t n = std::size_t{1} << width_;
  return std::span<const std::int32_t>(values_).subspan((std::size_t{v} - 1) * n, n);
}

std::int32_t WalshSpectrum::max_abs() const {
  std::int32_t best = 0;
  for (auto w : values_) best = std::max(best, std::abs(w));
  return best;
}

WalshSpectrum walsh_spectrum(const SBox& f) {
  const std::size_t n = f.size();
  std::vector<std::int32_t> values((n - 1) * n);
  for (std::uint32_t v = 1; v < n; ++v) {
    std::span<std::int32_t> row(values.data() + (v - 1) * n, n);
    for (std::uint32_t x = 0; x < n; ++x) row[x] = gf2::dot(v, f(x)) ? -1 : 1;
    fast_walsh_hadamard(row);
  }
  return WalshSpectrum(f.width(), std::move(values));
}

std::uint32_t nonlinearity(const BoolComponent& c) {
  std::vector<std::int32_t> row(c.truth_table().size());
  for (std::size_t x = 0; x < row.size(); ++x) row[x] = c(static_cast<std::uint32_t>(x)) ? -1 : 1;
  fast_walsh_hadamard(row);
  std::int32_t best = 0;
  for (auto w : row) best = std::max(best, std::abs(w));
  return static_cast<std::uint32_t>((static_cast<std::int32_t>(row.size()) - best) / 2);
}

std::uint32_t nonlinearity(const SBox& f) {
  const auto max_w = walsh_spectrum(f).max_abs();
  return static_cast<std::uint32_t>((static_cast<std::int32_t>(f.size()) - max_w) / 2);
}

// ---------------------------------------------------------------- ANF

std::vector<std::uint8_t> algebraic_normal_form(const BoolComponent& c) {
  std::vector<std::uint8_t> a = c.truth_table();
  const std::size_t n = a.size();
  for (std::size_t half = 1; half < n; half <<= 1)
    for (std::size_t i = 0; i < n; i += 2 * half)
      for (std::size_t j = i; j < i + half; ++j) a[j + half] ^= a[j];
  return a;
}

unsigned anf_degree(const BoolComponent& c) {
  const auto anf = algebraic_normal_form(c);
  unsigned degree = 0;
  for (std::size_t s = 0; s < anf.size(); ++s)
    if (anf[s]) degree = std::max(degree, static_cast<unsigned>(std::popcount(s)));
  return degree;
}

bool is_affine(const SBox& f) {
  const std::uint32_t c = f(0);
  for (std::uint32_t x = 1; x < f.size(); ++x) {
    std::uint32_t lin = 0;
    for (unsigned i = 0; i < f.width(); ++i)
      if ((x >> i) & 1u) lin ^= f(1u << i) ^ c;
    if ((f(x) ^ c) != lin) return false;
  }
  return true;
}

}  // namespace tbc
