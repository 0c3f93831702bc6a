#pragma once

// Permutation groups on {0, ..., N-1}: stabilizer chains, block systems,
// primitivity and recognition of the alternating and symmetric groups.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tbc/permutation.hpp"
#include "tbc/rng.hpp"
#include "tbc/vboolfn.hpp"

namespace tbc {

using BigInt = boost::multiprecision::cpp_int;

BigInt factorial(unsigned n);

inline constexpr std::size_t kDefaultBsgsDegreeCap = 4096;
inline constexpr std::size_t kMaxExplicitDegree = std::size_t{1} << 16;

/// Translations x -> x + e_i on (F_2)^d, i = 0..d-1.
std::vector<Permutation> translation_generators(unsigned d);
/// f sigma_{e_i} f^-1 read left to right: x -> f^-1(f(x) + e_i).
std::vector<Permutation> conjugate_translations(const Permutation& f);
std::vector<Permutation> conjugate_translations(const SBox& f);

struct BsgsOptions {
  std::size_t degree_cap = kDefaultBsgsDegreeCap;
  /// Seed of the random phase; the resulting order never depends on it.
  std::uint64_t seed = 0x5eed;
  /// Consecutive random elements sifting to the identity before switching
  /// to the deterministic Schreier-generator check.
  unsigned random_streak = 24;
};

/// Base and strong generating set with Schreier-vector transversals.
///
/// Construction sifts random group elements until either the product of the
/// basic orbit lengths reaches a proven upper bound on the order (N!, or
/// N!/2 when every generator is even), or a streak of trivial sifts occurs,
/// after which all Schreier generators are sifted. Either way the final chain
/// is complete and the order exact.
class StabilizerChain {
 public:
  static StabilizerChain build(std::size_t degree, std::span<const Permutation> generators,
                               const BsgsOptions& options = {});

  std::size_t degree() const noexcept { return degree_; }
  std::vector<Point> base() const;
  std::size_t base_length() const noexcept { return levels_.size(); }
  std::vector<std::size_t> basic_orbit_lengths() const;
  std::size_t strong_generator_count() const noexcept { return strong_.size(); }
  const BigInt& order() const noexcept { return order_; }
  /// True when completion was proven by reaching the order upper bound.
  bool completed_by_bound() const noexcept { return completed_by_bound_; }

  bool contains(const Permutation& g) const;
  /// Strong generators fixing the first `level` base points.
  std::vector<Permutation> stabilizer_generators(std::size_t level) const;

 private:
  struct Level {
    Point base_point = 0;
    std::vector<std::uint32_t> gens;  // indices into strong_
    // Per point: -1 outside the orbit, -2 the base point, otherwise the local
    // index of the generator labelling the tree edge into the point.
    std::vector<std::int32_t> edge;
    std::vector<Point> orbit;
  };

  struct SiftResult {
    Permutation residue;
    std::size_t level;  // first level where sifting stopped
  };

  explicit StabilizerChain(std::size_t degree) : degree_(degree) {}

  SiftResult sift(Permutation g, std::size_t from_level) const;
  Permutation coset_representative(std::size_t level, Point p) const;
  void add_strong_generator(Permutation g, std::size_t level);
  void extend_orbit(Level& level, std::uint32_t local_gen);
  BigInt orbit_product() const;
  bool verify_schreier_generators(const std::optional<BigInt>& bound);

  std::size_t degree_;
  std::vector<Permutation> strong_;
  std::vector<Permutation> strong_inv_;
  std::vector<Level> levels_;
  BigInt order_ = 1;
  bool completed_by_bound_ = false;
};

/// Group given by generators, with an optional cached stabilizer chain.
class GroupHandle {
 public:
  GroupHandle(std::size_t degree, std::vector<Permutation> generators);

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return gens_; }

  bool is_transitive() const;
  bool all_generators_even() const;
  /// Points in the orbit of `p`.
  std::vector<Point> orbit(Point p) const;

  /// Builds (once) the stabilizer chain; throws CapExceeded over the cap.
  const StabilizerChain& bsgs(const BsgsOptions& options = {});
  bool has_bsgs() const noexcept { return chain_ != nullptr; }
  /// Requires a built chain.
  const StabilizerChain& chain() const;

 private:
  std::size_t degree_;
  std::vector<Permutation> gens_;
  std::shared_ptr<const StabilizerChain> chain_;
};

/// Order of the group; builds the chain as needed.
BigInt bsgs_build(GroupHandle& g, const BsgsOptions& options = {});

class BlockSystem {
 public:
  explicit BlockSystem(std::vector<std::uint32_t> block_of);

  const std::vector<std::uint32_t>& block_map() const noexcept { return block_of_; }
  std::uint32_t block_of(Point p) const { return block_of_.at(p); }
  std::size_t block_size() const noexcept { return block_size_; }
  std::size_t block_count() const noexcept { return block_count_; }
  bool is_trivial() const noexcept { return block_count_ == 1 || block_size_ == 1; }
  std::vector<Point> block_containing(Point p) const;
  /// Every generator maps every block onto a block.
  bool is_invariant_under(std::span<const Permutation> generators) const;

 private:
  std::vector<std::uint32_t> block_of_;
  std::size_t block_size_ = 0;
  std::size_t block_count_ = 0;
};

/// Finest invariant partition with `a` and `b` in one block. Throws
/// DomainError for an intransitive group.
BlockSystem minimal_block_system(const GroupHandle& g, Point a, Point b);

struct PrimitivityResult {
  bool primitive = false;
  std::optional<BlockSystem> blocks;
};

/// Uses the point stabilizer's orbits as seeds when a chain is available.
PrimitivityResult is_primitive(const GroupHandle& g);

enum class GiantStatus { no, alt, sym };
const char* to_string(GiantStatus s);

/// Whether the group contains Alt(N), by exact order comparison.
GiantStatus contains_alternating(GroupHandle& g, const BsgsOptions& options = {});

enum class PrimitiveClass { affine, giant_alt, giant_sym, product_action };
const char* to_string(PrimitiveClass c);

/// x -> g(x) + g(0) is linear on (F_2)^d where N = 2^d.
bool is_affine_permutation(const Permutation& g);

/// Classifies a primitive group containing the elementary abelian regular
/// subgroup `t`. Throws DomainError naming the failed hypothesis.
PrimitiveClass classify_primitive(GroupHandle& g, GroupHandle& t, const BsgsOptions& options = {});

inline constexpr unsigned kMaxConditionTwoWidth = 5;

/// Alt((F_2)^m) lies in <T, f T f^-1>.
bool check_condition_2(const SBox& f);

struct AffinePropositionReport {
  unsigned dim = 0;
  std::uint64_t trials = 0;
  std::uint64_t primitive = 0;
  std::uint64_t giant = 0;
  std::vector<Permutation> violations;
};

/// Random g fixing 0: every primitive <T, g T g^-1> must be Alt or Sym.
AffinePropositionReport validate_affine_proposition(unsigned d, std::uint64_t trials,
                                                    std::uint64_t seed);

struct GiantCertificate {
  Permutation element;
  std::size_t prime = 0;
};

/// By Jordan's theorem a primitive group containing a p-cycle with p prime
/// and p <= N - 3 contains Alt(N). Searches random elements for a power that
/// is such a cycle. Nothing is returned for imprimitive groups.
std::optional<GiantCertificate> giant_certificate(const GroupHandle& g, std::uint64_t seed,
                                                  unsigned tries = 200);

/// Random elements by product replacement.
class RandomElements {
 public:
  RandomElements(std::size_t degree, std::span<const Permutation> generators, std::uint64_t seed);
  Permutation next();

 private:
  std::vector<Permutation> slots_;
  Permutation accumulator_;
  Rng rng_;
};

}  // namespace tbc
