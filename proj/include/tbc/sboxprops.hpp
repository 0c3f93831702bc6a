#pragma once

// S-box predicates used by the primitivity and alternating-group criteria:
// differential uniformity (plain and weak), (strong) anti-invariance,
// anti-crookedness and the affine hull of derivative images.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "tbc/gf2.hpp"
#include "tbc/vboolfn.hpp"

namespace tbc {

inline constexpr unsigned kMaxPropertyWidth = gf2::kMaxEnumerationDim;

struct UniformityProfile {
  unsigned width = 0;
  /// Largest DDT entry over u != 0.
  std::uint32_t delta = 0;
  /// Flat 2^m x 2^m table, row u, column v.
  std::vector<std::uint32_t> ddt;
  /// |Im(f^_u)| indexed by u; entry 0 is unused.
  std::vector<std::uint32_t> image_sizes;
  std::uint32_t min_image_size = 0;
  /// Weak delta-uniformity for delta = 1, 2, 4, ..., 2^m.
  std::map<std::uint32_t, bool> weakly_uniform;

  std::uint32_t ddt_at(std::uint32_t u, std::uint32_t v) const {
    return ddt.at((std::size_t{u} << width) + v);
  }
};

UniformityProfile differential_uniformity(const SBox& f);

/// |Im(f^_u)| > 2^(m-1)/delta for every u != 0.
bool is_weakly_delta_uniform(const SBox& f, std::uint32_t delta);

struct SubspacePair {
  gf2::Subspace domain;
  gf2::Subspace image;
};

struct AntiInvarianceCheck {
  bool holds = false;
  /// True when the table had to be translated to fix 0 first.
  bool normalized = false;
  /// On failure, a pair with f(U) = W and m - r <= dim U < m.
  std::optional<SubspacePair> witness;
};

/// f(U) if it is a subspace, otherwise nothing.
std::optional<gf2::Subspace> image_if_subspace(const SBox& f, const gf2::Subspace& u);

/// Strong r-anti-invariance of f normalized to fix 0, 1 <= r < m.
AntiInvarianceCheck is_strongly_r_anti_invariant(const SBox& f, unsigned r);
/// r-anti-invariance; f must already fix 0 (throws DomainError otherwise).
AntiInvarianceCheck is_r_anti_invariant(const SBox& f, unsigned r);

struct AntiInvarianceReport {
  /// Largest r with strong r-anti-invariance, 0 if none.
  unsigned max_r_strong = 0;
  /// Largest r with r-anti-invariance, 0 if none.
  unsigned max_r_plain = 0;
  /// U with f(U) = W of dimension m - (max_r_strong + 1).
  std::optional<SubspacePair> witness;
  bool normalized = false;
};

/// Both anti-invariance levels of f normalized to fix 0.
AntiInvarianceReport anti_invariance(const SBox& f);

struct AntiCrookedCheck {
  bool holds = false;
  /// A direction a whose derivative image is an affine subspace.
  std::optional<std::uint32_t> witness_direction;
};

AntiCrookedCheck is_anti_crooked(const SBox& f);
/// Im(f^_a) is itself an affine subspace.
bool derivative_image_is_affine(const SBox& f, std::uint32_t a);

struct VaSpace {
  std::uint32_t direction = 0;
  /// {v : <v, f^_a(.)> is constant}.
  gf2::Subspace va;
  gf2::Vec hull_offset;
  /// Orthogonal complement of va.
  gf2::Subspace hull_direction;

  gf2::AffineHull hull() const { return {hull_offset, hull_direction}; }
};

/// Affine hull of Im(f^_a) built from the constant components of the
/// derivative. The offset is f^_a(0), which is f(a) when f fixes 0.
/// Throws DomainError for a = 0.
VaSpace va_space(const SBox& f, std::uint32_t a);

struct Fact4Report {
  std::uint64_t examined = 0;
  std::uint64_t skipped = 0;
  std::uint64_t four_uniform = 0;
  std::vector<SBox> counterexamples;
};

/// Checks that every 4-uniform 4-bit permutation is strongly 1-anti-invariant.
class Fact4Checker {
 public:
  void add(const SBox& f);
  const Fact4Report& report() const noexcept { return report_; }

 private:
  Fact4Report report_;
};

Fact4Report check_fact_4uniform(std::span<const SBox> corpus);

}  // namespace tbc
