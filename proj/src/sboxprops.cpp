#include "tbc/sboxprops.hpp"

#include <algorithm>
#include <string>

#include "tbc/error.hpp"

namespace tbc {

namespace {

void check_property_width(const SBox& f) {
  if (f.width() > kMaxPropertyWidth)
    throw CapExceeded("S-box property scans are limited to width " +
                      std::to_string(kMaxPropertyWidth));
}

void check_r(const SBox& f, unsigned r) {
  if (r < 1 || r >= f.width())
    throw DomainError("anti-invariance level r=" + std::to_string(r) + " must satisfy 1 <= r < " +
                      std::to_string(f.width()));
}

std::uint32_t max_ddt_entry(const SBox& f) {
  const std::uint32_t n = f.size();
  std::vector<std::uint32_t> row(n);
  std::uint32_t best = 0;
  for (std::uint32_t u = 1; u < n; ++u) {
    std::fill(row.begin(), row.end(), 0);
    for (std::uint32_t x = 0; x < n; ++x) ++row[f(x ^ u) ^ f(x)];
    best = std::max(best, *std::max_element(row.begin(), row.end()));
  }
  return best;
}

// Scans proper subspaces U of the given dimensions (descending) for one whose
// image is a subspace; `same` restricts to f(U) = U.
std::optional<SubspacePair> find_mapped_subspace(const SBox& f, unsigned lowest_dim,
                                                 bool same) {
  std::optional<SubspacePair> found;
  for (unsigned k = f.width(); k-- > lowest_dim && !found;) {
    gf2::for_each_subspace(f.width(), k, [&](const gf2::Subspace& u) {
      auto w = image_if_subspace(f, u);
      if (w && (!same || *w == u)) {
        found = SubspacePair{u, *w};
        return false;
      }
      return true;
    });
  }
  return found;
}

}  // namespace

UniformityProfile differential_uniformity(const SBox& f) {
  check_property_width(f);
  const std::uint32_t n = f.size();
  UniformityProfile p;
  p.width = f.width();
  p.ddt.assign(std::size_t{n} * n, 0);
  p.image_sizes.assign(n, 0);
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t x = 0; x < n; ++x) ++p.ddt[(std::size_t{u} << p.width) + (f(x ^ u) ^ f(x))];
  p.min_image_size = n;
  for (std::uint32_t u = 1; u < n; ++u) {
    std::uint32_t distinct = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
      const auto c = p.ddt_at(u, v);
      p.delta = std::max(p.delta, c);
      distinct += c != 0;
    }
    p.image_sizes[u] = distinct;
    p.min_image_size = std::min(p.min_image_size, distinct);
  }
  for (std::uint32_t delta = 1; delta <= n; delta <<= 1)
    p.weakly_uniform[delta] = std::uint64_t{delta} * p.min_image_size > (n >> 1);
  return p;
}

bool is_weakly_delta_uniform(const SBox& f, std::uint32_t delta) {
  if (delta < 1) throw DomainError("delta must be positive");
  const std::uint32_t half = f.size() >> 1;
  for (std::uint32_t u = 1; u < f.size(); ++u)
    if (std::uint64_t{delta} * derivative_image(f, u).size() <= half) return false;
  return true;
}

std::optional<gf2::Subspace> image_if_subspace(const SBox& f, const gf2::Subspace& u) {
  if (u.ambient_dim() != f.width()) throw DimensionError("subspace not in the S-box domain");
  // |f(U)| = |U| for a permutation, so f(U) is a subspace iff its span has
  // the same dimension.
  gf2::EchelonForm span(f.width());
  const unsigned k = u.dim();
  for (gf2::Word x : u.elements()) {
    if (span.insert(f(static_cast<std::uint32_t>(x))) && span.rank() > k) return std::nullopt;
  }
  if (!f.is_bijective()) {
    // Duplicates may shrink the image below |U|.
    std::vector<std::uint32_t> img;
    for (gf2::Word x : u.elements()) img.push_back(f(static_cast<std::uint32_t>(x)));
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    if (img.size() != (std::size_t{1} << span.rank())) return std::nullopt;
    if (!std::binary_search(img.begin(), img.end(), 0u)) return std::nullopt;
  }
  return span.subspace();
}

AntiInvarianceCheck is_strongly_r_anti_invariant(const SBox& f, unsigned r) {
  check_property_width(f);
  check_r(f, r);
  const SBox g = normalize_zero(f);
  AntiInvarianceCheck out;
  out.normalized = !f.fixes_zero();
  out.witness = find_mapped_subspace(g, f.width() - r, false);
  out.holds = !out.witness;
  return out;
}

AntiInvarianceCheck is_r_anti_invariant(const SBox& f, unsigned r) {
  check_property_width(f);
  check_r(f, r);
  if (!f.fixes_zero()) throw DomainError("r-anti-invariance requires f(0) = 0; normalize first");
  AntiInvarianceCheck out;
  out.witness = find_mapped_subspace(f, f.width() - r, true);
  out.holds = !out.witness;
  return out;
}

AntiInvarianceReport anti_invariance(const SBox& f) {
  check_property_width(f);
  const SBox g = normalize_zero(f);
  const unsigned m = f.width();
  AntiInvarianceReport rep;
  rep.normalized = !f.fixes_zero();
  // The largest dimension of a proper U with f(U) a subspace bounds r; every
  // 1-dimensional subspace of a map fixing 0 qualifies.
  rep.witness = find_mapped_subspace(g, 1, false);
  const unsigned bad_dim = rep.witness ? rep.witness->domain.dim() : 0;
  rep.max_r_strong = m - 1 - bad_dim;
  const auto fixed = find_mapped_subspace(g, 1, true);
  const unsigned fixed_dim = fixed ? fixed->domain.dim() : 0;
  rep.max_r_plain = m - 1 - fixed_dim;
  return rep;
}

bool derivative_image_is_affine(const SBox& f, std::uint32_t a) {
  const auto image = derivative_image_vecs(f, a);
  return gf2::affine_hull(image).size() == image.size();
}

AntiCrookedCheck is_anti_crooked(const SBox& f) {
  AntiCrookedCheck out{true, std::nullopt};
  for (std::uint32_t a = 1; a < f.size(); ++a) {
    if (derivative_image_is_affine(f, a)) {
      out.holds = false;
      out.witness_direction = a;
      break;
    }
  }
  return out;
}

VaSpace va_space(const SBox& f, std::uint32_t a) {
  if (a == 0) throw DomainError("V_a is undefined for a = 0");
  if (a >= f.size()) throw DimensionError("direction outside (F_2)^m");
  const std::uint32_t n = f.size();
  std::vector<std::uint32_t> deriv(n);
  for (std::uint32_t x = 0; x < n; ++x) deriv[x] = f(x ^ a) ^ f(x);

  std::vector<gf2::Word> constant_components;
  for (std::uint32_t v = 1; v < n; ++v) {
    std::vector<std::uint8_t> t(n);
    for (std::uint32_t x = 0; x < n; ++x) t[x] = static_cast<std::uint8_t>(gf2::dot(v, deriv[x]));
    if (anf_degree(BoolComponent(f.width(), std::move(t))) == 0) constant_components.push_back(v);
  }
  VaSpace out;
  out.direction = a;
  out.va = gf2::Subspace::span(f.width(), constant_components);
  // The set of v making the component constant is closed under addition.
  if ((std::size_t{1} << out.va.dim()) != constant_components.size() + 1)
    throw Error("internal: constant components of a derivative do not form a subspace");
  out.hull_offset = gf2::Vec(f.width(), deriv[0]);
  out.hull_direction = out.va.orthogonal_complement();
  return out;
}

void Fact4Checker::add(const SBox& f) {
  if (f.width() != 4 || !f.is_bijective()) {
    ++report_.skipped;
    return;
  }
  ++report_.examined;
  if (max_ddt_entry(f) > 4) return;
  ++report_.four_uniform;
  if (!is_strongly_r_anti_invariant(f, 1).holds) report_.counterexamples.push_back(f);
}

Fact4Report check_fact_4uniform(std::span<const SBox> corpus) {
  Fact4Checker c;
  for (const auto& f : corpus) c.add(f);
  return c.report();
}

}  // namespace tbc
