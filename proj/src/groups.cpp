#include <bit>
#include <numeric>
#include <string>

#include "tbc/error.hpp"
#include "tbc/permgroup.hpp"

namespace tbc {

namespace {

bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

void require_elementary_abelian_regular(GroupHandle& t, const BsgsOptions& options) {
  const auto& gens = t.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!(gens[i] * gens[i]).is_identity())
      throw DomainError("T is not elementary abelian: a generator has order > 2");
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] * gens[j] != gens[j] * gens[i])
        throw DomainError("T is not elementary abelian: generators do not commute");
  }
  if (!t.is_transitive()) throw DomainError("T is not regular: it is intransitive");
  if (bsgs_build(t, options) != t.degree())
    throw DomainError("T is not regular: its order differs from the degree");
}

}  // namespace

const char* to_string(GiantStatus s) {
  switch (s) {
    case GiantStatus::no: return "no";
    case GiantStatus::alt: return "alt";
    case GiantStatus::sym: return "sym";
  }
  return "?";
}

const char* to_string(PrimitiveClass c) {
  switch (c) {
    case PrimitiveClass::affine: return "affine";
    case PrimitiveClass::giant_alt: return "giant_alt";
    case PrimitiveClass::giant_sym: return "giant_sym";
    case PrimitiveClass::product_action: return "product_action";
  }
  return "?";
}

GiantStatus contains_alternating(GroupHandle& g, const BsgsOptions& options) {
  const BigInt order = bsgs_build(g, options);
  const BigInt full = factorial(static_cast<unsigned>(g.degree()));
  if (order == full) return GiantStatus::sym;
  if (order * 2 == full || (g.degree() <= 2 && order == 1)) return GiantStatus::alt;
  return GiantStatus::no;
}

bool is_affine_permutation(const Permutation& g) {
  const std::size_t n = g.degree();
  if (n == 0 || !std::has_single_bit(n)) throw DomainError("affinity needs degree 2^d");
  const Point c = g(0);
  std::vector<Point> basis;
  for (std::size_t e = 1; e < n; e <<= 1) basis.push_back(g(static_cast<Point>(e)) ^ c);
  for (std::size_t x = 1; x < n; ++x) {
    Point expect = c;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if ((x >> i) & 1u) expect ^= basis[i];
    if (g(static_cast<Point>(x)) != expect) return false;
  }
  return true;
}

PrimitiveClass classify_primitive(GroupHandle& g, GroupHandle& t, const BsgsOptions& options) {
  const std::size_t n = g.degree();
  if (t.degree() != n) throw DomainError("G and T act on different domains");
  if (!std::has_single_bit(n) || n < 2) throw DomainError("degree is not a power of two");
  require_elementary_abelian_regular(t, options);
  const auto& chain = g.bsgs(options);
  for (const auto& s : t.generators())
    if (!chain.contains(s)) throw DomainError("T is not a subgroup of G");
  if (!is_primitive(g).primitive) throw DomainError("G is not primitive");

  bool affine = true;
  for (const auto& s : g.generators()) affine = affine && is_affine_permutation(s);
  if (affine) return PrimitiveClass::affine;
  switch (contains_alternating(g, options)) {
    case GiantStatus::sym: return PrimitiveClass::giant_sym;
    case GiantStatus::alt: return PrimitiveClass::giant_alt;
    case GiantStatus::no: break;
  }
  const unsigned d = static_cast<unsigned>(std::countr_zero(n));
  if (d <= 5)
    throw Error("classification contract violated: product action at d = " + std::to_string(d));
  return PrimitiveClass::product_action;
}

bool check_condition_2(const SBox& f) {
  if (f.width() > kMaxConditionTwoWidth)
    throw CapExceeded("condition (2) check limited to width " +
                      std::to_string(kMaxConditionTwoWidth));
  auto gens = translation_generators(f.width());
  for (auto& c : conjugate_translations(f)) gens.push_back(std::move(c));
  GroupHandle g(f.size(), std::move(gens));
  return contains_alternating(g) != GiantStatus::no;
}

AffinePropositionReport validate_affine_proposition(unsigned d, std::uint64_t trials,
                                                    std::uint64_t seed) {
  if (d < 3 || d > 5) throw DomainError("the affine-type proposition is checked for d in {3,4,5}");
  const std::size_t n = std::size_t{1} << d;
  const BigInt full = factorial(static_cast<unsigned>(n));
  const auto translations = translation_generators(d);
  Rng rng(seed);
  AffinePropositionReport rep;
  rep.dim = d;
  for (std::uint64_t k = 0; k < trials; ++k) {
    const Permutation h = rng.permutation(n, 1);
    auto gens = translations;
    for (auto& c : conjugate_translations(h)) gens.push_back(std::move(c));
    GroupHandle g(n, std::move(gens));
    ++rep.trials;
    if (!is_primitive(g).primitive) continue;
    ++rep.primitive;
    const BigInt order = bsgs_build(g, BsgsOptions{.seed = seed + k});
    if (order == full || order * 2 == full)
      ++rep.giant;
    else
      rep.violations.push_back(h);
  }
  return rep;
}

std::optional<GiantCertificate> giant_certificate(const GroupHandle& g, std::uint64_t seed,
                                                  unsigned tries) {
  const std::size_t n = g.degree();
  if (n < 8 || !g.is_transitive() || !is_primitive(g).primitive) return std::nullopt;
  RandomElements random(n, g.generators(), seed);
  for (unsigned t = 0; t < tries; ++t) {
    const Permutation x = random.next();
    const auto lengths = x.cycle_lengths();
    for (std::size_t p : lengths) {
      if (p > n - 3 || !is_prime(p)) continue;
      // Other cycle lengths must be coprime to p, and p must occur once.
      std::size_t with_p = 0;
      bool coprime = true;
      std::size_t exponent = 1;  // product of the other lengths, mod p
      for (std::size_t l : lengths) {
        if (l % p == 0) {
          ++with_p;
          coprime = coprime && l == p;
        } else {
          exponent = exponent * (l % p) % p;
        }
      }
      if (with_p != 1 || !coprime) continue;
      // x^E with E the product of the other lengths kills every other cycle
      // and advances the p-cycle by E mod p, a unit.
      std::vector<bool> seen(n, false);
      for (Point s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<Point> cycle{s};
        seen[s] = true;
        for (Point y = x(s); y != s; y = x(y)) {
          seen[y] = true;
          cycle.push_back(y);
        }
        if (cycle.size() != p) continue;
        std::vector<Point> img(n);
        std::iota(img.begin(), img.end(), Point{0});
        for (std::size_t k = 0; k < p; ++k) img[cycle[k]] = cycle[(k + exponent) % p];
        return GiantCertificate{Permutation::from_images_unchecked(std::move(img)), p};
      }
    }
  }
  return std::nullopt;
}

}  // namespace tbc
