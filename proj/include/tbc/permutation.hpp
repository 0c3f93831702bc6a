#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tbc {

using Point = std::uint32_t;

/// Bijection on {0, ..., N-1}.
///
/// Products are read left to right: (a * b)(x) = b(a(x)), i.e. "apply a, then
/// b", matching the postfix notation x(ab) = (xa)b common in permutation-group
/// literature.
class Permutation {
 public:
  Permutation() = default;
  /// Identity on `degree` points.
  explicit Permutation(std::size_t degree);
  /// Throws DomainError unless `images` is a bijection.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree) { return Permutation(degree); }
  /// Skips the bijectivity check; caller guarantees it.
  static Permutation from_images_unchecked(std::vector<Point> images);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point x) const noexcept { return images_[x]; }
  Point image(Point x) const { return images_.at(x); }
  const std::vector<Point>& images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  Permutation inverse() const;
  Permutation operator*(const Permutation& next) const;
  Permutation& operator*=(const Permutation& next);
  /// this^k for k >= 0.
  Permutation pow(std::uint64_t k) const;

  /// Number of points moved.
  std::size_t support_size() const noexcept;
  /// Lengths of all cycles, including fixed points, in order of least element.
  std::vector<std::size_t> cycle_lengths() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

  /// Cycle notation, e.g. "(0 1)(2 3 4)"; "()" for the identity.
  std::string to_cycle_string() const;

 private:
  std::vector<Point> images_;
};

enum class Parity { even, odd };

/// Sign via cycle decomposition.
Parity permutation_parity(const Permutation& p);

const char* to_string(Parity p);

}  // namespace tbc
