#include "tbc/validate.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tbc/error.hpp"
#include "tbc/fixtures.hpp"
#include "tbc/sboxprops.hpp"

namespace tbc::validate {

namespace {

constexpr std::size_t kMaxExamples = 8;

std::string table_string(const SBox& f) {
  std::ostringstream os;
  os << "m=" << f.width() << " [";
  for (std::size_t i = 0; i < f.table().size(); ++i) os << (i ? " " : "") << f.table()[i];
  os << "]";
  return os.str();
}

SBox random_sbox(Rng& rng, unsigned m) {
  const auto img = rng.permutation_images(std::size_t{1} << m);
  return SBox(m, std::vector<std::uint32_t>(img.begin(), img.end()));
}

gf2::Matrix random_invertible(Rng& rng, unsigned d) {
  for (;;) {
    std::vector<gf2::Word> rows(d);
    for (auto& r : rows) r = rng.next() & gf2::low_mask(d);
    auto mat = gf2::Matrix::from_rows(d, std::move(rows));
    if (mat.is_invertible()) return mat;
  }
}

SBox random_affine_sbox(Rng& rng, unsigned m) {
  const auto mat = random_invertible(rng, m);
  const auto c = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << m));
  std::vector<std::uint32_t> t(std::size_t{1} << m);
  for (std::uint32_t x = 0; x < t.size(); ++x) t[x] = static_cast<std::uint32_t>(mat.apply_bits(x)) ^ c;
  return SBox(m, std::move(t));
}

// Sends brick i to brick pi(i) through a random invertible block.
LinearLayer random_brick_permuting_layer(Rng& rng, unsigned m, unsigned n) {
  const auto pi = rng.permutation_images(n);
  gf2::Matrix out(m * n, m * n);
  for (unsigned i = 0; i < n; ++i) {
    const auto block = random_invertible(rng, m);
    for (unsigned r = 0; r < m; ++r)
      for (unsigned c = 0; c < m; ++c)
        if (block.get(r, c)) out.set(m * i + r, m * pi[i] + c, true);
  }
  return LinearLayer(std::move(out));
}

}  // namespace

void SuiteResult::count(const std::string& key, std::uint64_t by) {
  for (auto& [k, v] : counters)
    if (k == key) {
      v += by;
      return;
    }
  counters.emplace_back(key, by);
}

void SuiteResult::violation(std::string description) {
  ++violations;
  if (examples.size() < kMaxExamples) examples.push_back(std::move(description));
}

CipherSpec random_spec(Rng& rng, unsigned max_dim) {
  std::vector<std::pair<unsigned, unsigned>> shapes;
  for (unsigned m = 3; 2 * m <= max_dim; ++m)
    for (unsigned n = 2; m * n <= max_dim; ++n) shapes.emplace_back(m, n);
  if (shapes.empty()) throw DomainError("no shape with m >= 3, n >= 2 fits the dimension bound");
  const auto [m, n] = shapes[rng.below(shapes.size())];

  auto brick = [&]() {
    const auto roll = rng.below(10);
    if (roll < 6) return random_sbox(rng, m);
    if (roll < 9) return random_affine_sbox(rng, m);
    return SBox::identity(m);
  };
  std::vector<SBox> bricks;
  if (rng.coin())
    bricks.push_back(brick());
  else
    for (unsigned i = 0; i < n; ++i) bricks.push_back(brick());

  const auto roll = rng.below(10);
  std::optional<LinearLayer> layer;
  if (roll < 5) {
    layer = LinearLayer(random_invertible(rng, m * n));
  } else if (roll < 6) {
    layer = LinearLayer::identity(m * n);
  } else if (roll < 8) {
    layer = random_brick_permuting_layer(rng, m, n);
  } else {
    std::uint64_t attempts = 0;
    layer = random_strongly_proper_layer(BrickPartition(m, n), rng, attempts);
  }
  return CipherSpec(m, n, std::move(bricks), std::move(*layer));
}

SuiteResult fact_4uniform(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult res{"fact-4uniform", seed, 0, 0, {}, {}};
  Rng rng(seed);
  Fact4Checker checker;
  for (std::uint64_t k = 0; k < trials; ++k) checker.add(random_sbox(rng, 4));
  const auto& rep = checker.report();
  res.cases = rep.examined;
  res.count("four_uniform", rep.four_uniform);
  for (const auto& f : rep.counterexamples)
    res.violation("4-uniform but not strongly 1-anti-invariant: " + table_string(f));
  return res;
}

SuiteResult nonlinearity_equivalence(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult res{"nonlin-equiv", seed, 0, 0, {}, {}};
  auto check = [&](const SBox& raw, const char* bucket) {
    const SBox f = normalize_zero(raw);
    const bool walsh = nonlinearity(f) != 0;
    const bool subspace = is_strongly_r_anti_invariant(f, 1).holds;
    ++res.cases;
    res.count(bucket);
    if (walsh) res.count(std::string(bucket) + "_nonzero_nonlinearity");
    if (walsh != subspace)
      res.violation(std::string("nonlinearity ") + (walsh ? "nonzero" : "zero") +
                    " but strong 1-anti-invariance " + (subspace ? "holds" : "fails") + ": " +
                    table_string(f));
  };
  std::vector<std::uint32_t> t(8);
  std::iota(t.begin(), t.end(), 0u);
  do check(SBox(3, t), "m3_exhaustive");
  while (std::next_permutation(t.begin(), t.end()));
  Rng rng(seed);
  for (unsigned m : {4u, 5u}) {
    const std::string bucket = "m" + std::to_string(m) + "_random";
    for (std::uint64_t k = 0; k < trials; ++k) check(random_sbox(rng, m), bucket.c_str());
  }
  return res;
}

SuiteResult va_hull(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult res{"va-hull", seed, 0, 0, {}, {}};
  Rng rng(seed);
  for (unsigned m : {3u, 4u, 5u}) {
    for (std::uint64_t k = 0; k < trials; ++k) {
      const SBox f = random_sbox(rng, m);
      res.count("sboxes");
      for (std::uint32_t a = 1; a < f.size(); ++a) {
        ++res.cases;
        const auto formula = va_space(f, a).hull();
        const auto image = derivative_image_vecs(f, a);
        const auto direct = gf2::affine_hull(image);
        if (!formula.same_set(direct))
          res.violation("hull mismatch at a=" + std::to_string(a) + ": " + table_string(f));
        if (direct.size() == image.size()) res.count("affine_images");
      }
    }
  }
  return res;
}

SuiteResult affine_proposition(const std::vector<unsigned>& dims, std::uint64_t trials,
                               std::uint64_t seed) {
  SuiteResult res{"affine-prop", seed, 0, 0, {}, {}};
  for (unsigned d : dims) {
    const auto rep = validate_affine_proposition(d, trials, seed + d);
    const std::string tag = "d" + std::to_string(d);
    res.cases += rep.trials;
    res.count(tag + "_primitive", rep.primitive);
    res.count(tag + "_giant", rep.giant);
    for (const auto& g : rep.violations)
      res.violation(tag + ": primitive but not Alt/Sym for g = " + g.to_cycle_string());
  }
  return res;
}

SuiteResult oracle_crosscheck(std::uint64_t trials, std::uint64_t seed, unsigned max_dim) {
  SuiteResult res{"oracle-xcheck", seed, 0, 0, {}, {}};
  Rng rng(seed);
  for (std::uint64_t k = 0; k < trials; ++k) {
    const CipherSpec spec = random_spec(rng, max_dim);
    const GroupHandle g = round_group(spec);
    const bool primitive = is_primitive(g).primitive;
    const auto witness = brute_force_imprimitivity(spec);
    ++res.cases;
    res.count(primitive ? "primitive" : "imprimitive");
    std::ostringstream tag;
    tag << "spec " << k << " (m=" << spec.brick_width() << ", n=" << spec.brick_count() << ")";
    if (primitive == witness.has_value()) {
      res.violation(tag.str() + ": group says " + (primitive ? "primitive" : "imprimitive") +
                    ", oracle disagrees");
      continue;
    }
    if (witness) {
      // The cosets of U must form a block system of the group.
      std::vector<std::uint32_t> block(std::size_t{1} << spec.dim());
      std::vector<std::int64_t> label(block.size(), -1);
      std::uint32_t next = 0;
      for (std::size_t x = 0; x < block.size(); ++x) {
        auto& l = label[witness->reduce(x)];
        if (l < 0) l = next++;
        block[x] = static_cast<std::uint32_t>(l);
      }
      if (!BlockSystem(std::move(block)).is_invariant_under(g.generators()))
        res.violation(tag.str() + ": oracle subspace cosets are not blocks");
    }
  }
  return res;
}

SuiteResult evenness(std::uint64_t trials, std::uint64_t seed) {
  SuiteResult res{"evenness", seed, 0, 0, {}, {}};
  auto expect_even = [&](Parity p, const std::string& what) {
    ++res.cases;
    if (p != Parity::even) res.violation(what + " is odd");
  };
  for (const auto& [name, spec] : fixtures::all_specs()) {
    expect_even(layer_parity(spec.layer()), name + " layer");
    const unsigned target = spec.brick_width() <= 3 ? 3 : 2;
    const auto reduced = desk_scale_reduction(spec, target, seed);
    expect_even(permutation_parity(build_round(reduced.spec)), name + " reduced round");
    expect_even(permutation_parity(bricklayer(reduced.spec)), name + " reduced bricklayer");
  }
  Rng rng(seed);
  for (std::uint64_t k = 0; k < trials; ++k) {
    const CipherSpec spec = random_spec(rng, 12);
    expect_even(permutation_parity(build_round(spec)), "random round " + std::to_string(k));
    const auto v = rng.below((std::uint64_t{1} << spec.dim()) - 1) + 1;
    std::vector<Point> img(std::size_t{1} << spec.dim());
    for (std::size_t x = 0; x < img.size(); ++x) img[x] = static_cast<Point>(x ^ v);
    expect_even(permutation_parity(Permutation::from_images_unchecked(std::move(img))),
                "translation " + std::to_string(v));
  }
  return res;
}

std::vector<std::string> suite_names() {
  return {"fact-4uniform", "nonlin-equiv", "va-hull", "affine-prop", "oracle-xcheck",
          "evenness"};
}

SuiteResult run(const std::string& name, std::optional<std::uint64_t> trials, std::uint64_t seed) {
  if (name == "fact-4uniform") return fact_4uniform(trials.value_or(1000000), seed);
  if (name == "nonlin-equiv") return nonlinearity_equivalence(trials.value_or(10000), seed);
  if (name == "va-hull") return va_hull(trials.value_or(100), seed);
  if (name == "affine-prop") return affine_proposition({3, 4, 5}, trials.value_or(1000), seed);
  if (name == "oracle-xcheck") return oracle_crosscheck(trials.value_or(100), seed);
  if (name == "evenness") return evenness(trials.value_or(1000), seed);
  throw DomainError("unknown suite '" + name + "'");
}

}  // namespace tbc::validate
