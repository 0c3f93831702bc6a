#include "tbc/permutation.hpp"

#include "tbc/error.hpp"

namespace tbc {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  for (std::size_t i = 0; i < degree; ++i) images_[i] = static_cast<Point>(i);
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point y : images_) {
    if (y >= images_.size() || seen[y]) throw DomainError("image list is not a bijection");
    seen[y] = true;
  }
}

Permutation Permutation::from_images_unchecked(std::vector<Point> images) {
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
  return from_images_unchecked(std::move(inv));
}

Permutation Permutation::operator*(const Permutation& next) const {
  if (degree() != next.degree()) throw DomainError("product of permutations of different degree");
  std::vector<Point> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[i] = next.images_[images_[i]];
  return from_images_unchecked(std::move(out));
}

Permutation& Permutation::operator*=(const Permutation& next) {
  if (degree() != next.degree()) throw DomainError("product of permutations of different degree");
  for (auto& y : images_) y = next.images_[y];
  return *this;
}

Permutation Permutation::pow(std::uint64_t k) const {
  Permutation result(degree());
  Permutation base = *this;
  while (k != 0) {
    if (k & 1u) result *= base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

std::size_t Permutation::support_size() const noexcept {
  std::size_t moved = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) moved += images_[i] != i;
  return moved;
}

std::vector<std::size_t> Permutation::cycle_lengths() const {
  std::vector<std::size_t> lengths;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    for (Point x = static_cast<Point>(start); !seen[x]; x = images_[x]) {
      seen[x] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  return lengths;
}

std::string Permutation::to_cycle_string() const {
  std::string s;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    s += "(";
    for (Point x = static_cast<Point>(start); !seen[x]; x = images_[x]) {
      seen[x] = true;
      if (x != start) s += " ";
      s += std::to_string(x);
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

Parity permutation_parity(const Permutation& p) {
  // sign = (-1)^(N - #cycles)
  const std::size_t cycles = p.cycle_lengths().size();
  return ((p.degree() - cycles) % 2 == 0) ? Parity::even : Parity::odd;
}

const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

}  // namespace tbc
