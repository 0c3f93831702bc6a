#pragma once

// Translation-based cipher model: a round rho = gamma lambda (bricklayer, then
// mixing layer), the group <rho, T(V)> and the theorem engine deciding
// primitivity and the alternating-group conclusion from brick and layer facts.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tbc/mixlayer.hpp"
#include "tbc/permgroup.hpp"
#include "tbc/vboolfn.hpp"

namespace tbc {

inline constexpr unsigned kMaxExplicitStateDim = 16;
inline constexpr unsigned kMaxOracleStateDim = 12;

class CipherSpec {
 public:
  /// `bricks` holds either one S-box (used for every brick) or n of them.
  CipherSpec(unsigned m, unsigned n, std::vector<SBox> bricks, LinearLayer layer,
             bool key_schedule_surjective = true);

  unsigned brick_width() const noexcept { return partition_.brick_width(); }
  unsigned brick_count() const noexcept { return partition_.brick_count(); }
  unsigned dim() const noexcept { return partition_.dim(); }
  const BrickPartition& partition() const noexcept { return partition_; }
  const std::vector<SBox>& bricks() const noexcept { return bricks_; }
  const LinearLayer& layer() const noexcept { return layer_; }
  bool key_schedule_surjective() const noexcept { return surjective_; }

  /// Layer to use for desk-scale reductions instead of a random one.
  std::optional<LinearLayer> desk_layer;

 private:
  BrickPartition partition_;
  std::vector<SBox> bricks_;
  LinearLayer layer_;
  bool surjective_;
};

/// The bricklayer map with every brick normalized to fix 0, as a permutation
/// of (F_2)^(mn).
Permutation bricklayer(const CipherSpec& spec);
/// x -> (x gamma) lambda with normalized bricks; fixes 0.
Permutation build_round(const CipherSpec& spec);
/// Sign of the layer as a permutation of (F_2)^d. Bit permutations of any
/// d <= 64 are handled by counting orbits of the induced cyclic group;
/// other matrices need d <= 20.
Parity layer_parity(const LinearLayer& layer);
/// <rho, T(V)>; throws ModelNotApplicable when the key schedule is not
/// surjective.
GroupHandle round_group(const CipherSpec& spec);

enum class Primitivity { proven_primitive, unknown };
enum class GroupIdentity { proven_alt, not_affine_only, unknown };
const char* to_string(Primitivity p);
const char* to_string(GroupIdentity g);

struct BrickEvidence {
  std::vector<std::size_t> positions;  // brick indices sharing this table
  bool normalized = false;             // normalization changed the table
  std::uint32_t delta = 0;
  std::uint32_t min_image_size = 0;
  /// Largest r with strong r-anti-invariance, 0 if none.
  unsigned max_r_strong = 0;
  std::uint32_t nonlinearity = 0;
  bool anti_crooked = false;
  std::optional<std::uint32_t> non_ac_direction;
  /// Evaluated for m <= kMaxConditionTwoWidth only.
  std::optional<bool> condition_2;
};

struct RuleHit {
  std::string rule;
  unsigned r = 0;  // 0 for rules without a level
  std::string detail;
};

struct LayerEvidence {
  bool proper = false;
  std::optional<Wall> invariant_wall;
  bool strongly_proper = false;
  std::optional<std::pair<Wall, Wall>> wall_pair;
};

struct Verdict {
  bool model_applicable = true;
  LayerEvidence layer;
  std::vector<BrickEvidence> bricks;
  Primitivity primitivity = Primitivity::unknown;
  /// Every (rule, r) whose hypotheses hold, primary rule first.
  std::vector<RuleHit> primitivity_rules;
  GroupIdentity identity = GroupIdentity::unknown;
  std::vector<RuleHit> identity_rules;
  std::vector<std::string> trail;
};

/// Per-brick evidence, one entry per distinct table. Requires m >= 3.
std::vector<BrickEvidence> brick_evidence(const CipherSpec& spec);
LayerEvidence layer_evidence(const CipherSpec& spec);

/// Fills layer, bricks, primitivity and, when not yet proven, trail entries
/// explaining which hypotheses failed.
Verdict apply_primitivity_theorems(const CipherSpec& spec);
/// Extends a verdict from apply_primitivity_theorems with the alternating
/// group conclusion.
Verdict apply_alternating_theorems(const CipherSpec& spec, Verdict v);
/// Both stages.
Verdict analyze(const CipherSpec& spec);

/// A nontrivial proper subspace U with (u + v) gamma + v gamma in U lambda^-1
/// for all u in U and v in V, found without group computations. Exists iff
/// <rho, T(V)> is imprimitive. Requires m*n <= kMaxOracleStateDim.
std::optional<gf2::Subspace> brute_force_imprimitivity(const CipherSpec& spec);

struct ReducedSpec {
  CipherSpec spec;
  std::string layer_source;  // "spec", "explicit" or "random"
  std::optional<std::uint64_t> layer_seed;
  std::uint64_t layer_attempts = 0;
};

/// Keeps m and the first `target_n` bricks. The layer is `layer` if given,
/// then the spec's desk layer, then a random strongly proper one.
ReducedSpec desk_scale_reduction(const CipherSpec& spec, unsigned target_n, std::uint64_t seed,
                                 const std::optional<LinearLayer>& layer = std::nullopt);

/// Uniformly random invertible matrix that is also strongly proper for the
/// partition. Throws Error after `max_attempts` rejections.
LinearLayer random_strongly_proper_layer(const BrickPartition& p, Rng& rng,
                                         std::uint64_t& attempts,
                                         std::uint64_t max_attempts = 100000);

struct DeskCheck {
  unsigned n = 0;
  std::size_t degree = 0;
  std::string layer_source;
  std::optional<std::uint64_t> layer_seed;
  bool layer_strongly_proper = false;
  Parity round_parity = Parity::even;
  bool transitive = false;
  bool primitive = false;
  std::optional<BlockSystem> blocks;
  BigInt order = 0;
  GiantStatus giant = GiantStatus::no;
  std::optional<PrimitiveClass> classification;
  bool round_affine = false;
};

DeskCheck desk_check(const CipherSpec& spec, unsigned target_n, std::uint64_t seed,
                     const BsgsOptions& options = {});

}  // namespace tbc
