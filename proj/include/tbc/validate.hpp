#pragma once

// Seeded property suites over random and exhaustive samples. Each suite
// checks one computational claim two independent ways and counts the cases
// where they disagree.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tbc/rng.hpp"
#include "tbc/tbcipher.hpp"

namespace tbc::validate {

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  /// Suite-specific counters, in insertion order.
  std::vector<std::pair<std::string, std::uint64_t>> counters;
  /// Human-readable descriptions of the first few violations.
  std::vector<std::string> examples;

  bool passed() const noexcept { return violations == 0; }
  void count(const std::string& key, std::uint64_t by = 1);
  void violation(std::string description);
};

/// Random 4-bit permutations: every 4-uniform one is strongly
/// 1-anti-invariant.
SuiteResult fact_4uniform(std::uint64_t trials, std::uint64_t seed);

/// Nonzero nonlinearity (Walsh path) versus strong 1-anti-invariance
/// (subspace path): every 3-bit table, normalized, plus `trials` random
/// tables for each of m = 4 and m = 5.
SuiteResult nonlinearity_equivalence(std::uint64_t trials, std::uint64_t seed);

/// The hull formula f^_a(0) + V_a^perp against the direct affine hull of
/// Im(f^_a), for `trials` random S-boxes per width in {3, 4, 5}.
SuiteResult va_hull(std::uint64_t trials, std::uint64_t seed);

/// Every primitive <T, g T g^-1> with g random fixing 0 is Alt or Sym.
SuiteResult affine_proposition(const std::vector<unsigned>& dims, std::uint64_t trials,
                               std::uint64_t seed);

/// Random specs with m n <= max_dim: the imprimitivity oracle and the block
/// algorithm on <rho, T(V)> agree.
SuiteResult oracle_crosscheck(std::uint64_t trials, std::uint64_t seed, unsigned max_dim = 10);

/// Rounds of desk-scale reductions of the bundled ciphers, their full-size
/// layers, and `trials` random specs are all even permutations.
SuiteResult evenness(std::uint64_t trials, std::uint64_t seed);

/// Random spec with n >= 2 and m >= 3, mixing random, affine and identity
/// components so that both primitive and imprimitive groups occur.
CipherSpec random_spec(Rng& rng, unsigned max_dim);

std::vector<std::string> suite_names();
/// Runs a suite by name with its default parameters overridden by `trials`.
SuiteResult run(const std::string& name, std::optional<std::uint64_t> trials, std::uint64_t seed);

}  // namespace tbc::validate
