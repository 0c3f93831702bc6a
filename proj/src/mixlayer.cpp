#include "tbc/mixlayer.hpp"

#include <bit>
#include <string>

#include "tbc/error.hpp"

namespace tbc {

namespace {

void check_layer(const LinearLayer& layer, const BrickPartition& p) {
  if (layer.dim() != p.dim())
    throw DimensionError("layer dimension " + std::to_string(layer.dim()) +
                         " does not match m*n = " + std::to_string(p.dim()));
}

void check_wall_bound(const BrickPartition& p) {
  if (p.brick_count() > kMaxWallBricks)
    throw CapExceeded("wall enumeration limited to " + std::to_string(kMaxWallBricks) + " bricks");
}

// If the image of the wall `bricks` is again a coordinate subspace, returns
// its coordinate mask. The image has dimension |mask| because the layer is
// invertible, and it lies inside the coordinate span of the union of the row
// supports; it equals that span iff the union has exactly |mask| coordinates.
std::optional<gf2::Word> coordinate_image(const LinearLayer& layer, const BrickPartition& p,
                                          std::uint32_t bricks) {
  const gf2::Word mask = p.coordinate_mask(bricks);
  gf2::Word support = 0;
  for (unsigned i = 0; i < p.dim(); ++i)
    if ((mask >> i) & 1u) support |= layer.matrix().row_bits(i);
  if (std::popcount(support) != std::popcount(mask)) return std::nullopt;
  return support;
}

std::optional<std::uint32_t> bricks_of_mask(const BrickPartition& p, gf2::Word mask) {
  std::uint32_t bricks = 0;
  for (unsigned i = 0; i < p.brick_count(); ++i) {
    const gf2::Word b = p.brick_mask(i);
    if ((mask & b) == b)
      bricks |= std::uint32_t{1} << i;
    else if ((mask & b) != 0)
      return std::nullopt;
  }
  return bricks;
}

}  // namespace

BrickPartition::BrickPartition(unsigned brick_width, unsigned brick_count)
    : m_(brick_width), n_(brick_count) {
  if (m_ < 2 || n_ < 2) throw DomainError("brick width and brick count must both exceed 1");
  if (m_ * n_ > gf2::kMaxDim) throw DimensionError("state dimension m*n exceeds 64");
}

gf2::Word BrickPartition::brick_mask(unsigned i) const {
  if (i >= n_) throw DomainError("brick index out of range");
  return gf2::low_mask(m_) << (m_ * i);
}

gf2::Word BrickPartition::coordinate_mask(std::uint32_t bricks) const {
  gf2::Word mask = 0;
  for (unsigned i = 0; i < n_; ++i)
    if ((bricks >> i) & 1u) mask |= brick_mask(i);
  return mask;
}

Wall make_wall(const BrickPartition& p, std::uint32_t bricks) {
  const std::uint32_t all = (std::uint32_t{1} << p.brick_count()) - 1;
  if (bricks == 0 || bricks == all || (bricks & ~all) != 0)
    throw DomainError("a wall selects a nonempty proper subset of the bricks");
  return Wall{bricks, gf2::Subspace::coordinate(p.dim(), p.coordinate_mask(bricks))};
}

LinearLayer::LinearLayer(gf2::Matrix matrix) : matrix_(std::move(matrix)) {
  if (!matrix_.is_square()) throw DomainError("mixing layer matrix must be square");
  if (!matrix_.is_invertible()) throw DomainError("mixing layer matrix is singular");
  perm_ = matrix_.as_bit_permutation();
}

LinearLayer LinearLayer::from_bit_permutation(std::vector<unsigned> perm) {
  return LinearLayer(gf2::Matrix::from_bit_permutation(perm));
}

LinearLayer LinearLayer::identity(unsigned dim) { return LinearLayer(gf2::Matrix::identity(dim)); }

std::vector<Wall> walls(const BrickPartition& p) {
  check_wall_bound(p);
  std::vector<Wall> out;
  out.reserve(p.wall_count());
  const std::uint32_t all = (std::uint32_t{1} << p.brick_count()) - 1;
  for (std::uint32_t s = 1; s < all; ++s) out.push_back(make_wall(p, s));
  return out;
}

std::optional<std::uint32_t> wall_bricks(const BrickPartition& p, const gf2::Subspace& s) {
  if (s.ambient_dim() != p.dim() || s.is_zero() || s.is_full()) return std::nullopt;
  // A coordinate subspace has a canonical basis of unit vectors, so the wall
  // is identified by the union of its basis rows.
  gf2::Word mask = 0;
  for (gf2::Word row : s.basis_bits()) {
    if (std::popcount(row) != 1) return std::nullopt;
    mask |= row;
  }
  return bricks_of_mask(p, mask);
}

ProperCheck is_proper(const LinearLayer& layer, const BrickPartition& p) {
  check_layer(layer, p);
  check_wall_bound(p);
  const std::uint32_t all = (std::uint32_t{1} << p.brick_count()) - 1;
  for (std::uint32_t s = 1; s < all; ++s) {
    const auto img = coordinate_image(layer, p, s);
    if (img && *img == p.coordinate_mask(s)) return {false, make_wall(p, s)};
  }
  return {true, std::nullopt};
}

StrongProperCheck is_strongly_proper(const LinearLayer& layer, const BrickPartition& p) {
  check_layer(layer, p);
  check_wall_bound(p);
  const std::uint32_t all = (std::uint32_t{1} << p.brick_count()) - 1;
  for (std::uint32_t s = 1; s < all; ++s) {
    const auto img = coordinate_image(layer, p, s);
    if (!img) continue;
    if (auto t = bricks_of_mask(p, *img))
      return {false, std::make_pair(make_wall(p, s), make_wall(p, *t))};
  }
  return {true, std::nullopt};
}

}  // namespace tbc
