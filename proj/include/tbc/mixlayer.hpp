#pragma once

// Mixing layers and walls. The state (F_2)^(mn) is split into n bricks of m
// bits; brick i (0-based) holds coordinates m*i .. m*i + m - 1.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tbc/gf2.hpp"

namespace tbc {

inline constexpr unsigned kMaxWallBricks = 24;

class BrickPartition {
 public:
  /// Requires m > 1, n > 1 and m*n <= 64.
  BrickPartition(unsigned brick_width, unsigned brick_count);

  unsigned brick_width() const noexcept { return m_; }
  unsigned brick_count() const noexcept { return n_; }
  unsigned dim() const noexcept { return m_ * n_; }
  gf2::Word brick_mask(unsigned i) const;
  /// Coordinates covered by the bricks selected in `bricks`.
  gf2::Word coordinate_mask(std::uint32_t bricks) const;
  /// Number of walls, 2^n - 2.
  std::uint64_t wall_count() const { return (std::uint64_t{1} << n_) - 2; }

  friend bool operator==(const BrickPartition&, const BrickPartition&) = default;

 private:
  unsigned m_;
  unsigned n_;
};

/// Sum of a nonempty proper subset of the brick subspaces.
struct Wall {
  /// Bit i set iff brick i is part of the wall.
  std::uint32_t bricks = 0;
  gf2::Subspace subspace;

  friend bool operator==(const Wall&, const Wall&) = default;
};

Wall make_wall(const BrickPartition& p, std::uint32_t bricks);

/// Invertible linear map of the full state, optionally known to be a bit
/// permutation. Analysis always runs on the matrix form.
class LinearLayer {
 public:
  /// Throws DomainError when the matrix is singular or not square.
  explicit LinearLayer(gf2::Matrix matrix);
  /// Coordinate i moves to coordinate perm[i].
  static LinearLayer from_bit_permutation(std::vector<unsigned> perm);
  static LinearLayer identity(unsigned dim);

  unsigned dim() const noexcept { return matrix_.rows(); }
  const gf2::Matrix& matrix() const noexcept { return matrix_; }
  const std::optional<std::vector<unsigned>>& bit_permutation() const noexcept { return perm_; }
  gf2::Word apply(gf2::Word x) const noexcept { return matrix_.apply_bits(x); }
  LinearLayer inverse() const { return LinearLayer(matrix_.inverse()); }

  friend bool operator==(const LinearLayer& a, const LinearLayer& b) {
    return a.matrix_ == b.matrix_;
  }

 private:
  gf2::Matrix matrix_;
  std::optional<std::vector<unsigned>> perm_;
};

/// Every wall; n must be at most kMaxWallBricks.
std::vector<Wall> walls(const BrickPartition& p);

/// If `s` is a wall of `p`, its brick set.
std::optional<std::uint32_t> wall_bricks(const BrickPartition& p, const gf2::Subspace& s);

struct ProperCheck {
  bool holds = false;
  /// A wall W with W lambda = W.
  std::optional<Wall> witness;
};

struct StrongProperCheck {
  bool holds = false;
  /// Walls W, W' with W lambda = W'.
  std::optional<std::pair<Wall, Wall>> witness;
};

/// No wall is lambda-invariant.
ProperCheck is_proper(const LinearLayer& layer, const BrickPartition& p);
/// No wall is mapped onto any wall.
StrongProperCheck is_strongly_proper(const LinearLayer& layer, const BrickPartition& p);

}  // namespace tbc
