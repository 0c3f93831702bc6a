#include <doctest.h>

#include "oracles.hpp"
#include "tbc/error.hpp"
#include "tbc/fixtures.hpp"
#include "tbc/permgroup.hpp"
#include "tbc/rng.hpp"

using namespace tbc;

namespace {

Permutation cycle(std::size_t degree, std::vector<Point> pts) {
  std::vector<Point> img(degree);
  for (std::size_t i = 0; i < degree; ++i) img[i] = static_cast<Point>(i);
  for (std::size_t i = 0; i < pts.size(); ++i) img[pts[i]] = pts[(i + 1) % pts.size()];
  return Permutation(img);
}

}  // namespace

TEST_CASE("permutation products read left to right") {
  const auto a = cycle(3, {0, 1}), b = cycle(3, {1, 2});
  // x(ab) = (xa)b: 0 -> 1 -> 2.
  CHECK((a * b)(0) == 2);
  CHECK((a * b).to_cycle_string() == "(0 2 1)");
  CHECK((a * a.inverse()).is_identity());
  CHECK(cycle(5, {0, 1, 2, 3, 4}).pow(5).is_identity());
  CHECK(cycle(5, {0, 1, 2}).support_size() == 3);
  CHECK(permutation_parity(cycle(4, {0, 1})) == Parity::odd);
  CHECK(permutation_parity(cycle(4, {0, 1, 2})) == Parity::even);
  CHECK_THROWS_AS(Permutation(std::vector<Point>{0, 0}), DomainError);
}

TEST_CASE("parity matches the inversion count") {
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    const auto p = rng.permutation(1 + rng.below(40));
    CHECK((permutation_parity(p) == Parity::even) == oracle::is_even(p));
  }
}

TEST_CASE("orders agree with the closure for small groups") {
  Rng rng(37);
  for (int t = 0; t < 60; ++t) {
    const std::size_t degree = 3 + rng.below(5);
    std::vector<Permutation> gens;
    const auto k = 1 + rng.below(2);
    for (std::uint64_t i = 0; i < k; ++i) {
      // Short cycles keep some groups small and intransitive.
      if (rng.coin()) {
        const auto img = rng.permutation_images(degree);
        gens.push_back(cycle(degree, {img[0], img[1], img[2]}));
      } else {
        gens.push_back(rng.permutation(degree));
      }
    }
    const auto elements = oracle::closure(gens, degree);
    const auto chain = StabilizerChain::build(degree, gens);
    CHECK(chain.order() == BigInt(elements.size()));
    for (int s = 0; s < 10; ++s) {
      const auto g = rng.permutation(degree);
      CHECK(chain.contains(g) == (elements.count(g.images()) == 1));
    }
  }
}

TEST_CASE("closure oracle on known groups") {
  const auto s4 = oracle::closure({cycle(4, {0, 1}), cycle(4, {0, 1, 2, 3})}, 4);
  CHECK(s4.size() == 24);
  const auto c5 = oracle::closure({cycle(5, {0, 1, 2, 3, 4})}, 5);
  CHECK(c5.size() == 5);
}

TEST_CASE("giants of moderate degree") {
  for (std::size_t n : {10u, 33u, 64u, 100u}) {
    std::vector<Point> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Point>(i);
    const std::vector<Permutation> sym{cycle(n, {0, 1}), cycle(n, all)};
    const auto chain = StabilizerChain::build(n, sym);
    CHECK(chain.order() == factorial(static_cast<unsigned>(n)));
    std::vector<Point> odd_len(all.begin(), all.begin() + (n % 2 ? n : n - 1));
    const std::vector<Permutation> alt{cycle(n, {0, 1, 2}), cycle(n, odd_len)};
    GroupHandle g(n, alt);
    if (n % 2 == 0) continue;  // the long cycle then fixes a point; covered below
    CHECK(bsgs_build(g) == factorial(static_cast<unsigned>(n)) / 2);
    CHECK(contains_alternating(g) == GiantStatus::alt);
  }
  GroupHandle a8(8, {cycle(8, {0, 1, 2}), cycle(8, {1, 2, 3, 4, 5, 6, 7})});
  CHECK(bsgs_build(a8) == factorial(8) / 2);
}

TEST_CASE("translation group and affine group orders") {
  for (unsigned d = 1; d <= 5; ++d) {
    GroupHandle t(std::size_t{1} << d, translation_generators(d));
    CHECK(bsgs_build(t) == BigInt(1) << d);
    CHECK(t.is_transitive());
  }
  GroupHandle t8(256, translation_generators(8));
  CHECK(bsgs_build(t8) == 256);
  // AGL(3, 2) = T(V) with GL(3, 2): order 8 * 168.
  std::vector<Permutation> gens = translation_generators(3);
  const auto lin = [](std::vector<gf2::Word> rows) {
    const auto m = gf2::Matrix::from_rows(3, rows);
    std::vector<Point> img(8);
    for (Point x = 0; x < 8; ++x) img[x] = static_cast<Point>(m.apply_bits(x));
    return Permutation(img);
  };
  gens.push_back(lin({0b010, 0b100, 0b001}));
  gens.push_back(lin({0b011, 0b010, 0b100}));
  GroupHandle agl(8, gens);
  CHECK(bsgs_build(agl) == 8 * 168);
  CHECK(oracle::closure(gens, 8).size() == 8 * 168);
  CHECK(is_primitive(agl).primitive);
  CHECK(contains_alternating(agl) == GiantStatus::no);
}

TEST_CASE("degree cap") {
  GroupHandle g(8192, translation_generators(13));
  CHECK_THROWS_AS(g.bsgs(), CapExceeded);
  BsgsOptions big;
  big.degree_cap = 8192;
  CHECK(g.bsgs(big).order() == 8192);
}

TEST_CASE("order does not depend on the random seed") {
  const auto f = fixtures::present_sbox();
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    BsgsOptions o;
    o.seed = seed;
    auto gens = translation_generators(4);
    for (auto& c : conjugate_translations(f)) gens.push_back(c);
    CHECK(StabilizerChain::build(16, gens, o).order() == factorial(16) / 2);
  }
}

TEST_CASE("block systems") {
  // Dihedral group of the square acting on corners: {0,2} and {1,3} is a system.
  GroupHandle d4(4, {cycle(4, {0, 1, 2, 3}), Permutation(std::vector<Point>{0, 3, 2, 1})});
  const auto b = minimal_block_system(d4, 0, 2);
  CHECK(b.block_size() == 2);
  CHECK(b.block_of(0) == b.block_of(2));
  CHECK(b.block_of(1) == b.block_of(3));
  CHECK(b.is_invariant_under(d4.generators()));
  CHECK(minimal_block_system(d4, 0, 1).block_count() == 1);
  const auto r = is_primitive(d4);
  CHECK_FALSE(r.primitive);
  REQUIRE(r.blocks);
  CHECK_FALSE(r.blocks->is_trivial());

  GroupHandle c5(5, {cycle(5, {0, 1, 2, 3, 4})});
  CHECK(is_primitive(c5).primitive);
  GroupHandle split(4, {cycle(4, {0, 1}), cycle(4, {2, 3})});
  CHECK_FALSE(split.is_transitive());
  CHECK_THROWS(is_primitive(split));
  CHECK_THROWS_AS(minimal_block_system(split, 0, 2), DomainError);
}

TEST_CASE("primitivity agrees with and without a stabilizer chain") {
  Rng rng(41);
  for (int t = 0; t < 40; ++t) {
    const unsigned d = 3 + static_cast<unsigned>(rng.below(2));
    const std::size_t n = std::size_t{1} << d;
    std::vector<Permutation> gens = translation_generators(d);
    if (rng.coin()) {
      gens.push_back(rng.permutation(n, 1));
    } else {
      // Preserves the halves x_0 = 0 and x_0 = 1.
      std::vector<Point> img(n);
      const auto lo = rng.permutation_images(n / 2);
      for (Point x = 0; x < n; ++x) img[x] = (lo[x >> 1] << 1) | (x & 1u);
      gens.push_back(Permutation(img));
    }
    GroupHandle plain(n, gens), with_chain(n, gens);
    with_chain.bsgs();
    const auto a = is_primitive(plain), b = is_primitive(with_chain);
    CHECK(a.primitive == b.primitive);
    if (a.blocks) CHECK(a.blocks->is_invariant_under(gens));
  }
}

TEST_CASE("condition 2 on the bundled S-boxes") {
  CHECK(check_condition_2(fixtures::present_sbox()));
  CHECK(check_condition_2(fixtures::printcipher_sbox()));
  CHECK(check_condition_2(fixtures::inversion_sbox()));
  CHECK_FALSE(check_condition_2(SBox::identity(4)));
}

TEST_CASE("classification of primitive groups with a regular translation subgroup") {
  GroupHandle t(16, translation_generators(4));
  auto gens = translation_generators(4);
  for (auto& c : conjugate_translations(fixtures::present_sbox())) gens.push_back(c);
  GroupHandle g(16, gens);
  CHECK(classify_primitive(g, t) == PrimitiveClass::giant_alt);

  // Multiplication by a generator of F_8^* acts irreducibly on (F_2)^3.
  auto agl = translation_generators(3);
  const auto singer = gf2::Matrix::from_rows(3, {0b010, 0b100, 0b011});
  std::vector<Point> img(8);
  for (Point x = 0; x < 8; ++x) img[x] = static_cast<Point>(singer.apply_bits(x));
  agl.push_back(Permutation(img));
  GroupHandle affine(8, agl), t8(8, translation_generators(3));
  CHECK(bsgs_build(affine) == 56);
  CHECK(classify_primitive(affine, t8) == PrimitiveClass::affine);
  GroupHandle t16(16, translation_generators(4)), t16copy(16, translation_generators(4));
  CHECK_THROWS_AS(classify_primitive(t16, t16copy), DomainError);

  GroupHandle s(8, {cycle(8, {0, 1}), cycle(8, {0, 1, 2, 3, 4, 5, 6, 7})});
  GroupHandle t3(8, translation_generators(3));
  CHECK(classify_primitive(s, t3) == PrimitiveClass::giant_sym);
}

TEST_CASE("affine permutations") {
  std::vector<Point> img(8);
  for (Point x = 0; x < 8; ++x) img[x] = x ^ 5;
  CHECK(is_affine_permutation(Permutation(img)));
  CHECK_FALSE(is_affine_permutation(fixtures::present_sbox().as_permutation()));
}

TEST_CASE("giant certificates") {
  auto gens = translation_generators(4);
  for (auto& c : conjugate_translations(fixtures::present_sbox())) gens.push_back(c);
  GroupHandle g(16, gens);
  const auto cert = giant_certificate(g, 1);
  REQUIRE(cert);
  CHECK(cert->prime + 3 <= 16);
  const auto lens = cert->element.cycle_lengths();
  CHECK(std::count(lens.begin(), lens.end(), cert->prime) == 1);
  CHECK(cert->element.support_size() == cert->prime);
  g.bsgs();
  CHECK(g.chain().contains(cert->element));
  GroupHandle t(16, translation_generators(4));
  CHECK_FALSE(giant_certificate(t, 1));
}

TEST_CASE("affine proposition on small dimensions") {
  for (unsigned d : {3u, 4u}) {
    const auto r = validate_affine_proposition(d, 50, 99);
    CHECK(r.trials == 50);
    CHECK(r.violations.empty());
    CHECK(r.giant <= r.primitive);
  }
}
