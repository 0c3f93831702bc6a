#include <doctest.h>

#include "oracles.hpp"
#include "tbc/error.hpp"
#include "tbc/fixtures.hpp"
#include "tbc/rng.hpp"
#include "tbc/tbcipher.hpp"
#include "tbc/validate.hpp"

using namespace tbc;

namespace {

bool has_rule(const std::vector<RuleHit>& hits, const std::string& rule) {
  return std::any_of(hits.begin(), hits.end(), [&](const RuleHit& h) { return h.rule == rule; });
}

CipherSpec small_spec(const SBox& f, unsigned n, LinearLayer l) {
  return CipherSpec(f.width(), n, {f}, std::move(l));
}

}  // namespace

TEST_CASE("spec validation") {
  const auto f = fixtures::present_sbox();
  CHECK_THROWS(CipherSpec(4, 2, {f}, LinearLayer::identity(12)));
  CHECK_THROWS(CipherSpec(4, 3, {f, f}, LinearLayer::identity(12)));
  CHECK_THROWS(CipherSpec(3, 2, {f}, LinearLayer::identity(6)));
  const CipherSpec s(4, 2, {f, fixtures::inversion_sbox()}, LinearLayer::identity(8));
  CHECK(s.bricks().size() == 2);
}

TEST_CASE("round matches the two-step evaluator") {
  Rng rng(43);
  for (int t = 0; t < 40; ++t) {
    const CipherSpec spec = validate::random_spec(rng, 12);
    const auto rho = build_round(spec);
    CHECK(rho(0) == 0);
    for (Point x = 0; x < rho.degree(); ++x)
      CHECK(rho(x) == oracle::round(spec.bricks(), spec.brick_width(), spec.brick_count(),
                                    spec.layer(), x));
    std::vector<Point> lam(rho.degree());
    for (Point x = 0; x < lam.size(); ++x) lam[x] = static_cast<Point>(spec.layer().apply(x));
    CHECK(bricklayer(spec) * Permutation(lam) == rho);
  }
  const auto big = fixtures::present_spec();
  CHECK_THROWS_AS(build_round(big), CapExceeded);
}

TEST_CASE("layer parity") {
  // Bit permutations: checked against explicit enumeration where possible.
  Rng rng(47);
  for (int t = 0; t < 30; ++t) {
    const unsigned d = 2 + static_cast<unsigned>(rng.below(11));
    const auto img = rng.permutation_images(d);
    const auto l = LinearLayer::from_bit_permutation(std::vector<unsigned>(img.begin(), img.end()));
    std::vector<Point> p(std::size_t{1} << d);
    for (Point x = 0; x < p.size(); ++x) p[x] = static_cast<Point>(l.apply(x));
    CHECK(layer_parity(l) == permutation_parity(Permutation(p)));
  }
  // Swapping two coordinates of (F_2)^2 is a transposition.
  CHECK(layer_parity(LinearLayer::from_bit_permutation({1, 0})) == Parity::odd);
  CHECK(layer_parity(fixtures::present_layer()) == Parity::even);
  CHECK(layer_parity(fixtures::printcipher_layer()) == Parity::even);
  CHECK(layer_parity(fixtures::rectangle_layer()) == Parity::even);
}

TEST_CASE("round group requires a surjective key schedule") {
  const auto f = fixtures::present_sbox();
  const CipherSpec s(4, 2, {f}, fixtures::rotation_layer(2), false);
  CHECK_THROWS_AS(round_group(s), ModelNotApplicable);
  const auto v = analyze(s);
  CHECK_FALSE(v.model_applicable);
  CHECK(v.primitivity == Primitivity::unknown);
  CHECK(v.identity == GroupIdentity::unknown);
}

TEST_CASE("brick evidence deduplicates tables") {
  const auto f = fixtures::present_sbox(), g = fixtures::inversion_sbox();
  const CipherSpec s(4, 3, {f, g, f}, fixtures::rotation_layer(3));
  const auto ev = brick_evidence(s);
  REQUIRE(ev.size() == 2);
  CHECK(ev[0].positions == std::vector<std::size_t>{0, 2});
  CHECK(ev[1].positions == std::vector<std::size_t>{1});
  CHECK(ev[0].normalized);
  CHECK_FALSE(ev[1].normalized);
  CHECK(ev[1].anti_crooked);
  CHECK(ev[1].min_image_size == 7);
}

TEST_CASE("theorem engine on the bundled specs") {
  SUBCASE("RECTANGLE and PRINTcipher reach the alternating group") {
    for (const auto& spec : {fixtures::rectangle_spec(), fixtures::printcipher_spec()}) {
      const auto v = analyze(spec);
      CHECK(v.layer.strongly_proper);
      CHECK(v.primitivity == Primitivity::proven_primitive);
      CHECK(v.identity == GroupIdentity::proven_alt);
      CHECK(has_rule(v.identity_rules, "small-brick-alt"));
      REQUIRE_FALSE(v.primitivity_rules.empty());
    }
    const auto v = analyze(fixtures::rectangle_spec());
    CHECK(v.primitivity_rules.front().rule == "uniformity-primitivity");
    CHECK(v.primitivity_rules.front().r == 2);
  }
  SUBCASE("PRESENT layer maps a wall onto a wall") {
    const auto v = analyze(fixtures::present_spec());
    CHECK(v.layer.proper);
    CHECK_FALSE(v.layer.strongly_proper);
    CHECK(v.primitivity == Primitivity::proven_primitive);
    CHECK(v.identity == GroupIdentity::not_affine_only);
  }
  SUBCASE("rotation example stops short of the alternating group") {
    const auto v = analyze(fixtures::rotation_example_spec());
    CHECK(v.primitivity == Primitivity::proven_primitive);
    CHECK(v.identity != GroupIdentity::proven_alt);
    REQUIRE(v.layer.wall_pair);
    CHECK(v.layer.wall_pair->first.bricks == 1);
    CHECK(v.layer.wall_pair->second.bricks == 2);
    CHECK(has_rule(v.identity_rules, "anti-crooked-alt"));
  }
  SUBCASE("identity layer proves nothing") {
    const auto spec = small_spec(fixtures::present_sbox(), 2, LinearLayer::identity(8));
    const auto v = analyze(spec);
    CHECK(v.primitivity == Primitivity::unknown);
    CHECK(v.identity == GroupIdentity::unknown);
    CHECK_FALSE(v.trail.empty());
  }
}

TEST_CASE("theorem verdicts are confirmed by the group at desk scale") {
  // A proven verdict must never contradict computation; unknown is allowed.
  Rng rng(53);
  for (int t = 0; t < 30; ++t) {
    const CipherSpec spec = validate::random_spec(rng, 10);
    const auto v = analyze(spec);
    const GroupHandle g = round_group(spec);
    const bool primitive = is_primitive(g).primitive;
    if (v.primitivity == Primitivity::proven_primitive) CHECK(primitive);
  }
}

TEST_CASE("imprimitivity oracle") {
  SUBCASE("identity layer keeps each brick space invariant") {
    const auto spec = small_spec(fixtures::present_sbox(), 2, LinearLayer::identity(8));
    const auto u = brute_force_imprimitivity(spec);
    REQUIRE(u);
    CHECK_FALSE(u->is_zero());
    CHECK_FALSE(u->is_full());
  }
  SUBCASE("linear round preserving the diagonal") {
    const auto spec =
        small_spec(SBox::identity(3), 2, LinearLayer::from_bit_permutation({3, 4, 5, 0, 1, 2}));
    const auto u = brute_force_imprimitivity(spec);
    REQUIRE(u);
    CHECK_FALSE(is_primitive(round_group(spec)).primitive);
  }
  SUBCASE("strongly proper layer with a PRINTcipher brick") {
    Rng rng(3);
    std::uint64_t attempts = 0;
    const BrickPartition p(3, 2);
    const auto l = random_strongly_proper_layer(p, rng, attempts);
    CHECK(is_strongly_proper(l, p).holds);
    const auto spec = small_spec(fixtures::printcipher_sbox(), 2, l);
    CHECK_FALSE(brute_force_imprimitivity(spec));
    CHECK(is_primitive(round_group(spec)).primitive);
  }
  CHECK_THROWS_AS(brute_force_imprimitivity(fixtures::rotation_example_spec()), CapExceeded);
}

TEST_CASE("desk-scale reduction") {
  const auto spec = fixtures::present_spec();
  const auto a = desk_scale_reduction(spec, 2, 7);
  const auto b = desk_scale_reduction(spec, 2, 7);
  CHECK(a.layer_source == "random");
  CHECK(a.layer_seed == 7u);
  CHECK(a.spec.layer() == b.spec.layer());
  CHECK(is_strongly_proper(a.spec.layer(), a.spec.partition()).holds);
  CHECK(a.spec.brick_count() == 2);

  const auto ex = desk_scale_reduction(fixtures::rotation_example_spec(), 2, 7);
  CHECK(ex.layer_source == "spec");
  CHECK(ex.spec.layer() == fixtures::rotation_layer(2));
  const auto expl = desk_scale_reduction(spec, 2, 7, LinearLayer::identity(8));
  CHECK(expl.layer_source == "explicit");
  CHECK_THROWS(desk_scale_reduction(spec, 1, 7));
}

TEST_CASE("desk check of the rotation example") {
  const auto d = desk_check(fixtures::rotation_example_spec(), 2, 1);
  CHECK(d.degree == 256);
  CHECK(d.transitive);
  CHECK(d.primitive);
  CHECK(d.giant == GiantStatus::no);
  REQUIRE(d.classification);
  CHECK(*d.classification == PrimitiveClass::product_action);
  CHECK(d.order < factorial(256) / 2);
  CHECK_FALSE(d.round_affine);
  CHECK(d.round_parity == Parity::even);
  // Sym(16) wr C_2 in product action has order 2 (16!)^2; the group lies in it.
  CHECK((2 * factorial(16) * factorial(16)) % d.order == 0);
}

TEST_CASE("text of to_string helpers") {
  CHECK(std::string(to_string(Primitivity::proven_primitive)) == "proven_primitive");
  CHECK(std::string(to_string(GroupIdentity::proven_alt)) == "proven_alt");
  CHECK(std::string(to_string(GroupIdentity::not_affine_only)) == "not_affine_only");
}
