#include "tbc/tbcipher.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "tbc/error.hpp"
#include "tbc/sboxprops.hpp"

namespace tbc {

namespace {

std::vector<SBox> expand_bricks(unsigned m, unsigned n, std::vector<SBox> bricks) {
  if (bricks.size() == 1) bricks.assign(n, bricks.front());
  if (bricks.size() != n)
    throw DomainError("expected 1 or " + std::to_string(n) + " bricks, got " +
                      std::to_string(bricks.size()));
  for (const auto& b : bricks) {
    if (b.width() != m) throw DimensionError("brick width differs from m");
    if (!b.is_bijective()) throw DomainError("bricks must be permutations");
  }
  return bricks;
}

void require_explicit(const CipherSpec& spec) {
  if (spec.dim() > kMaxExplicitStateDim)
    throw CapExceeded("explicit round permutations are limited to m*n <= " +
                      std::to_string(kMaxExplicitStateDim));
}

}  // namespace

CipherSpec::CipherSpec(unsigned m, unsigned n, std::vector<SBox> bricks, LinearLayer layer,
                       bool key_schedule_surjective)
    : partition_(m, n),
      bricks_(expand_bricks(m, n, std::move(bricks))),
      layer_(std::move(layer)),
      surjective_(key_schedule_surjective) {
  if (layer_.dim() != partition_.dim())
    throw DimensionError("layer dimension " + std::to_string(layer_.dim()) +
                         " does not match m*n = " + std::to_string(partition_.dim()));
}

const char* to_string(Primitivity p) {
  return p == Primitivity::proven_primitive ? "proven_primitive" : "unknown";
}

const char* to_string(GroupIdentity g) {
  switch (g) {
    case GroupIdentity::proven_alt: return "proven_alt";
    case GroupIdentity::not_affine_only: return "not_affine_only";
    case GroupIdentity::unknown: return "unknown";
  }
  return "?";
}

Permutation bricklayer(const CipherSpec& spec) {
  require_explicit(spec);
  const unsigned m = spec.brick_width();
  const unsigned n = spec.brick_count();
  std::vector<SBox> normal;
  for (const auto& b : spec.bricks()) normal.push_back(normalize_zero(b));
  const std::size_t size = std::size_t{1} << spec.dim();
  const std::uint32_t low = (1u << m) - 1;
  std::vector<Point> img(size);
  for (std::size_t x = 0; x < size; ++x) {
    std::uint32_t y = 0;
    for (unsigned i = 0; i < n; ++i)
      y |= normal[i]((static_cast<std::uint32_t>(x) >> (m * i)) & low) << (m * i);
    img[x] = y;
  }
  return Permutation::from_images_unchecked(std::move(img));
}

Permutation build_round(const CipherSpec& spec) {
  Permutation gamma = bricklayer(spec);
  std::vector<Point> img = gamma.images();
  for (auto& y : img) y = static_cast<Point>(spec.layer().apply(y));
  return Permutation::from_images_unchecked(std::move(img));
}

Parity layer_parity(const LinearLayer& layer) {
  const unsigned d = layer.dim();
  if (const auto& perm = layer.bit_permutation()) {
    // The induced permutation has one cycle per orbit of <pi> on (F_2)^d, so
    // its sign is (-1)^(2^d - orbits). Burnside counts the orbits.
    const Permutation pi = Permutation::from_images_unchecked(
        std::vector<Point>(perm->begin(), perm->end()));
    std::uint64_t order = 1;
    for (auto l : pi.cycle_lengths()) {
      order = std::lcm(order, static_cast<std::uint64_t>(l));
      if (order > 1000000) throw CapExceeded("bit permutation order too large for parity");
    }
    BigInt fixed_total = 0;
    Permutation power(d);
    for (std::uint64_t k = 0; k < order; ++k) {
      fixed_total += BigInt(1) << power.cycle_lengths().size();
      power *= pi;
    }
    const BigInt orbits = fixed_total / order;
    const BigInt moved = (BigInt(1) << d) - orbits;
    return (moved & 1) == 0 ? Parity::even : Parity::odd;
  }
  if (d > 20) throw CapExceeded("layer parity for non-permutation matrices needs d <= 20");
  std::vector<Point> img(std::size_t{1} << d);
  for (std::size_t x = 0; x < img.size(); ++x) img[x] = static_cast<Point>(layer.apply(x));
  return permutation_parity(Permutation::from_images_unchecked(std::move(img)));
}

GroupHandle round_group(const CipherSpec& spec) {
  if (!spec.key_schedule_surjective())
    throw ModelNotApplicable(
        "round keys do not cover the whole state, so the group is not <rho, T(V)>");
  auto gens = translation_generators(spec.dim());
  gens.insert(gens.begin(), build_round(spec));
  return GroupHandle(std::size_t{1} << spec.dim(), std::move(gens));
}

std::vector<BrickEvidence> brick_evidence(const CipherSpec& spec) {
  if (spec.brick_width() < 3) throw DomainError("the theorem engine requires m >= 3");
  std::map<std::vector<std::uint32_t>, std::size_t> seen;
  std::vector<BrickEvidence> out;
  for (std::size_t i = 0; i < spec.bricks().size(); ++i) {
    const SBox& raw = spec.bricks()[i];
    if (auto it = seen.find(raw.table()); it != seen.end()) {
      out[it->second].positions.push_back(i);
      continue;
    }
    seen.emplace(raw.table(), out.size());
    const SBox f = normalize_zero(raw);
    BrickEvidence e;
    e.positions.push_back(i);
    e.normalized = !raw.fixes_zero();
    const auto prof = differential_uniformity(f);
    e.delta = prof.delta;
    e.min_image_size = prof.min_image_size;
    e.max_r_strong = anti_invariance(f).max_r_strong;
    e.nonlinearity = nonlinearity(f);
    const auto ac = is_anti_crooked(f);
    e.anti_crooked = ac.holds;
    e.non_ac_direction = ac.witness_direction;
    if (f.width() <= kMaxConditionTwoWidth) e.condition_2 = check_condition_2(f);
    out.push_back(std::move(e));
  }
  return out;
}

LayerEvidence layer_evidence(const CipherSpec& spec) {
  LayerEvidence out;
  const auto p = is_proper(spec.layer(), spec.partition());
  out.proper = p.holds;
  out.invariant_wall = p.witness;
  const auto s = is_strongly_proper(spec.layer(), spec.partition());
  out.strongly_proper = s.holds;
  out.wall_pair = s.witness;
  return out;
}

Verdict apply_primitivity_theorems(const CipherSpec& spec) {
  Verdict v;
  v.model_applicable = spec.key_schedule_surjective();
  if (!v.model_applicable) {
    v.trail.push_back("model not applicable: key schedule not surjective");
    return v;
  }
  const unsigned m = spec.brick_width();
  v.layer = layer_evidence(spec);
  v.bricks = brick_evidence(spec);
  if (!v.layer.proper) {
    v.trail.push_back("layer is not proper: no primitivity theorem applies");
    return v;
  }

  const auto all = [&](auto pred) { return std::all_of(v.bricks.begin(), v.bricks.end(), pred); };
  // Both theorems for every r, ordered by r with the weak form first.
  for (unsigned r = 1; r < m; ++r) {
    const std::uint32_t bound = 1u << r;
    const bool weak = all([&](const BrickEvidence& e) {
      return std::uint64_t{bound} * e.min_image_size > (std::uint64_t{1} << (m - 1)) &&
             e.max_r_strong >= r;
    });
    if (weak)
      v.primitivity_rules.push_back(
          {"weak-uniformity-primitivity", r,
           "every brick is weakly " + std::to_string(bound) + "-uniform and strongly " +
               std::to_string(r) + "-anti-invariant; layer proper"});
    if (r >= 2) {
      const bool uni = all([&](const BrickEvidence& e) {
        return e.delta <= bound && e.max_r_strong >= r - 1;
      });
      if (uni)
        v.primitivity_rules.push_back(
            {"uniformity-primitivity", r,
             "every brick is " + std::to_string(bound) + "-uniform and strongly " +
                 std::to_string(r - 1) + "-anti-invariant; layer proper"});
    }
  }
  if (!v.primitivity_rules.empty()) {
    v.primitivity = Primitivity::proven_primitive;
    const auto& first = v.primitivity_rules.front();
    v.trail.push_back("primitive by " + first.rule + " (r=" + std::to_string(first.r) +
                      "): " + first.detail);
  } else {
    v.trail.push_back("no r satisfies the uniformity and anti-invariance hypotheses");
  }
  return v;
}

Verdict apply_alternating_theorems(const CipherSpec& spec, Verdict v) {
  if (v.primitivity != Primitivity::proven_primitive) {
    v.identity = GroupIdentity::unknown;
    return v;
  }
  const unsigned m = spec.brick_width();
  const unsigned n = spec.brick_count();
  std::vector<RuleHit> hits;
  if (m >= 3 && m <= 5 && n >= 2)
    hits.push_back({"small-brick-alt", 0, "m = " + std::to_string(m) + " lies in {3,4,5}"});
  for (const auto& e : v.bricks)
    if (e.condition_2.value_or(false) && m >= 3 && n >= 2) {
      hits.push_back({"brick-alt-condition", 0,
                      "brick " + std::to_string(e.positions.front()) +
                          ": <T, gamma T gamma^-1> contains Alt"});
      break;
    }
  if (std::all_of(v.bricks.begin(), v.bricks.end(),
                  [](const BrickEvidence& e) { return e.anti_crooked; }))
    hits.push_back({"anti-crooked-alt", 0, "every brick is anti-crooked"});

  if (hits.empty()) {
    v.trail.push_back("no rule excludes the affine case");
    return v;
  }
  if (v.layer.strongly_proper) {
    v.identity = GroupIdentity::proven_alt;
    v.identity_rules = std::move(hits);
    v.trail.push_back("layer strongly proper: the primitive group is not a wreath product");
    v.trail.push_back("alternating by " + v.identity_rules.front().rule + ": " +
                      v.identity_rules.front().detail);
    return v;
  }
  // Without strong properness only the affine case is excluded; the
  // small-brick rule needs it outright.
  for (auto& h : hits)
    if (h.rule != "small-brick-alt") v.identity_rules.push_back(std::move(h));
  if (!v.identity_rules.empty()) {
    v.identity = GroupIdentity::not_affine_only;
    v.trail.push_back("not of affine type by " + v.identity_rules.front().rule);
  }
  v.trail.push_back("layer not strongly proper: no alternating conclusion");
  return v;
}

Verdict analyze(const CipherSpec& spec) {
  return apply_alternating_theorems(spec, apply_primitivity_theorems(spec));
}

std::optional<gf2::Subspace> brute_force_imprimitivity(const CipherSpec& spec) {
  const unsigned d = spec.dim();
  if (d > kMaxOracleStateDim)
    throw CapExceeded("imprimitivity oracle limited to m*n <= " +
                      std::to_string(kMaxOracleStateDim));
  const unsigned m = spec.brick_width();
  const unsigned n = spec.brick_count();
  const std::uint32_t size = 1u << m;

  // For a bricklayer map the derivative in direction u is the concatenation
  // of the brick derivatives, so span Im = <r> + sum_i D_i where r is one
  // image point and D_i spans the differences inside brick i's image.
  struct BrickSpan {
    std::uint32_t point;
    std::vector<std::uint32_t> directions;
  };
  std::vector<std::vector<BrickSpan>> tables(n, std::vector<BrickSpan>(size));
  for (unsigned i = 0; i < n; ++i) {
    const SBox& f = spec.bricks()[i];
    for (std::uint32_t u = 1; u < size; ++u) {
      const auto img = derivative_image(f, u);
      gf2::EchelonForm e(m);
      std::vector<std::uint32_t> dirs;
      for (auto y : img)
        if (e.insert(y ^ img.front())) dirs.push_back(y ^ img.front());
      tables[i][u] = {img.front(), std::move(dirs)};
    }
  }

  const auto& L = spec.layer();
  for (gf2::Word start = 1; start < (gf2::Word{1} << d); ++start) {
    gf2::EchelonForm span(d);
    std::vector<gf2::Word> elements{0};
    auto add = [&](gf2::Word w) {
      if (!span.insert(w)) return;
      const std::size_t k = elements.size();
      for (std::size_t j = 0; j < k; ++j) elements.push_back(elements[j] ^ w);
    };
    add(start);
    for (std::size_t next = 1; next < elements.size() && span.rank() < d; ++next) {
      const gf2::Word u = elements[next];
      gf2::Word point = 0;
      for (unsigned i = 0; i < n && span.rank() < d; ++i) {
        const std::uint32_t ui = static_cast<std::uint32_t>(u >> (m * i)) & (size - 1);
        if (ui == 0) continue;
        const auto& t = tables[i][ui];
        point |= gf2::Word{t.point} << (m * i);
        for (auto dir : t.directions) add(L.apply(gf2::Word{dir} << (m * i)));
      }
      add(L.apply(point));
    }
    if (span.rank() < d) return span.subspace();
  }
  return std::nullopt;
}

LinearLayer random_strongly_proper_layer(const BrickPartition& p, Rng& rng,
                                         std::uint64_t& attempts, std::uint64_t max_attempts) {
  const unsigned d = p.dim();
  for (attempts = 1; attempts <= max_attempts; ++attempts) {
    std::vector<gf2::Word> rows(d);
    for (auto& r : rows) r = rng.next() & gf2::low_mask(d);
    gf2::Matrix mat = gf2::Matrix::from_rows(d, std::move(rows));
    if (!mat.is_invertible()) continue;
    LinearLayer layer(std::move(mat));
    if (is_strongly_proper(layer, p).holds) return layer;
  }
  throw Error("no strongly proper layer found in " + std::to_string(max_attempts) + " attempts");
}

ReducedSpec desk_scale_reduction(const CipherSpec& spec, unsigned target_n, std::uint64_t seed,
                                 const std::optional<LinearLayer>& layer) {
  if (target_n < 2) throw DomainError("desk-scale reduction needs target_n >= 2");
  if (target_n > spec.brick_count())
    throw DomainError("desk-scale reduction cannot add bricks");
  const unsigned m = spec.brick_width();
  std::vector<SBox> bricks(spec.bricks().begin(), spec.bricks().begin() + target_n);
  const unsigned d = m * target_n;

  auto make = [&](LinearLayer l, std::string source, std::optional<std::uint64_t> s,
                  std::uint64_t attempts) {
    if (l.dim() != d)
      throw DimensionError("reduced layer has dimension " + std::to_string(l.dim()) +
                           ", expected " + std::to_string(d));
    return ReducedSpec{CipherSpec(m, target_n, bricks, std::move(l), spec.key_schedule_surjective()),
                       std::move(source), s, attempts};
  };
  if (layer) return make(*layer, "explicit", std::nullopt, 0);
  if (target_n == spec.brick_count()) return make(spec.layer(), "spec", std::nullopt, 0);
  if (spec.desk_layer) return make(*spec.desk_layer, "spec", std::nullopt, 0);
  Rng rng(seed);
  std::uint64_t attempts = 0;
  auto l = random_strongly_proper_layer(BrickPartition(m, target_n), rng, attempts);
  return make(std::move(l), "random", seed, attempts);
}

DeskCheck desk_check(const CipherSpec& spec, unsigned target_n, std::uint64_t seed,
                     const BsgsOptions& options) {
  const ReducedSpec reduced = desk_scale_reduction(spec, target_n, seed);
  const CipherSpec& s = reduced.spec;
  DeskCheck out;
  out.n = target_n;
  out.degree = std::size_t{1} << s.dim();
  out.layer_source = reduced.layer_source;
  out.layer_seed = reduced.layer_seed;
  out.layer_strongly_proper = is_strongly_proper(s.layer(), s.partition()).holds;
  const Permutation rho = build_round(s);
  out.round_parity = permutation_parity(rho);
  out.round_affine = is_affine_permutation(rho);
  GroupHandle g = round_group(s);
  out.transitive = g.is_transitive();
  out.order = bsgs_build(g, options);
  out.giant = contains_alternating(g, options);
  if (!out.transitive) return out;
  const auto prim = is_primitive(g);
  out.primitive = prim.primitive;
  out.blocks = prim.blocks;
  if (out.primitive) {
    GroupHandle t(out.degree, translation_generators(s.dim()));
    out.classification = classify_primitive(g, t, options);
  }
  return out;
}

}  // namespace tbc
