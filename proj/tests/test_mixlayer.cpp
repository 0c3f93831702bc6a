#include <doctest.h>

#include "oracles.hpp"
#include "tbc/error.hpp"
#include "tbc/fixtures.hpp"
#include "tbc/io.hpp"
#include "tbc/mixlayer.hpp"
#include "tbc/rng.hpp"

using namespace tbc;

namespace {

LinearLayer random_layer(Rng& rng, unsigned d) {
  for (;;) {
    std::vector<gf2::Word> rows(d);
    for (auto& r : rows) r = rng.next() & gf2::low_mask(d);
    auto m = gf2::Matrix::from_rows(d, rows);
    if (m.is_invertible()) return LinearLayer(std::move(m));
  }
}

}  // namespace

TEST_CASE("partition geometry") {
  const BrickPartition p(4, 3);
  CHECK(p.dim() == 12);
  CHECK(p.brick_mask(1) == 0xF0);
  CHECK(p.coordinate_mask(0b101) == 0xF0F);
  CHECK(p.wall_count() == 6);
  CHECK(walls(p).size() == 6);
  CHECK(wall_bricks(p, gf2::Subspace::coordinate(12, 0xF00)) == 0b100u);
  CHECK_FALSE(wall_bricks(p, gf2::Subspace::coordinate(12, 0x0F1)));
  CHECK_FALSE(wall_bricks(p, gf2::Subspace::full(12)));
  CHECK_THROWS(BrickPartition(1, 4));
}

TEST_CASE("layers must be invertible") {
  CHECK_THROWS_AS(LinearLayer(gf2::Matrix::from_rows(2, {0b11, 0b11})), DomainError);
  const auto l = LinearLayer::from_bit_permutation({1, 0, 3, 2});
  CHECK(l.apply(0b0001) == 0b0010);
  CHECK(l.bit_permutation().has_value());
}

TEST_CASE("wall verdicts agree with explicit point sets") {
  Rng rng(29);
  for (int t = 0; t < 150; ++t) {
    const unsigned m = 2 + static_cast<unsigned>(rng.below(2));
    const unsigned n = 2 + static_cast<unsigned>(rng.below(3));
    LinearLayer l = random_layer(rng, m * n);
    if (t % 4 == 0) {
      // Brick permutation: maps walls onto walls.
      const auto pi = rng.permutation_images(n);
      std::vector<unsigned> perm(m * n);
      for (unsigned i = 0; i < n; ++i)
        for (unsigned k = 0; k < m; ++k) perm[m * i + k] = m * pi[i] + k;
      l = LinearLayer::from_bit_permutation(perm);
    }
    const BrickPartition p(m, n);
    const auto pairs = oracle::wall_pairs(l, m, n);
    bool invariant = false;
    for (auto [a, b] : pairs) invariant = invariant || a == b;

    const auto sp = is_strongly_proper(l, p);
    CHECK(sp.holds == pairs.empty());
    if (sp.witness) {
      const auto [w1, w2] = *sp.witness;
      CHECK(std::find(pairs.begin(), pairs.end(), std::make_pair(w1.bricks, w2.bricks)) !=
            pairs.end());
    }
    const auto pr = is_proper(l, p);
    CHECK(pr.holds == !invariant);
    if (pr.witness)
      CHECK(oracle::layer_image(l, oracle::wall_set(m, n, pr.witness->bricks)) ==
            oracle::wall_set(m, n, pr.witness->bricks));
    if (sp.holds) CHECK(pr.holds);
  }
}

TEST_CASE("identity layer is not proper") {
  const auto r = is_proper(LinearLayer::identity(8), BrickPartition(4, 2));
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness);
}

TEST_CASE("brick rotation is proper but maps V_1 onto V_2") {
  const auto l = fixtures::rotation_layer(4);
  const BrickPartition p(4, 4);
  CHECK(is_proper(l, p).holds);
  const auto sp = is_strongly_proper(l, p);
  CHECK_FALSE(sp.holds);
  REQUIRE(sp.witness);
  CHECK(sp.witness->first.bricks == 0b0001);
  CHECK(sp.witness->second.bricks == 0b0010);
}

// The rotation written out as a matrix: row i has a single 1 in column
// i + 4 mod 16.
TEST_CASE("rotation in matrix form") {
  std::string text = "d=16\nmatrix:\n";
  for (unsigned i = 0; i < 16; ++i) {
    std::string row(16, '0');
    row[(i + 4) % 16] = '1';
    text += row + "\n";
  }
  const auto l = io::parse_layer(text);
  CHECK(l == fixtures::rotation_layer(4));
  CHECK(l.apply(1) == 0x10);
}

TEST_CASE("bundled layers") {
  const BrickPartition p4(4, 16), p3(3, 16);
  const auto present = fixtures::present_layer();
  CHECK(present.apply(gf2::Word{1} << 1) == gf2::Word{1} << 16);
  CHECK(present.apply(gf2::Word{1} << 63) == gf2::Word{1} << 63);
  CHECK(is_proper(present, p4).holds);
  // Bricks 0..3 land on bricks 0, 4, 8, 12.
  const auto sp = is_strongly_proper(present, p4);
  CHECK_FALSE(sp.holds);
  CHECK(oracle::layer_image(present, oracle::wall_set(4, 16, 0x000F)) ==
        oracle::wall_set(4, 16, 0x1111));
  CHECK(is_proper(io::reverse_bit_order(present), p4).holds);
  CHECK_FALSE(is_strongly_proper(io::reverse_bit_order(present), p4).holds);

  CHECK(is_proper(fixtures::rectangle_layer(), p4).holds);
  CHECK(is_strongly_proper(fixtures::rectangle_layer(), p4).holds);
  CHECK(is_proper(fixtures::printcipher_layer(), p3).holds);
  CHECK(is_strongly_proper(fixtures::printcipher_layer(), p3).holds);
}
