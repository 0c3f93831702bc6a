#include <algorithm>
#include <string>

#include "tbc/error.hpp"
#include "tbc/permgroup.hpp"

namespace tbc {

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

RandomElements::RandomElements(std::size_t degree, std::span<const Permutation> generators,
                               std::uint64_t seed)
    : accumulator_(degree), rng_(seed) {
  for (const auto& g : generators) slots_.push_back(g);
  if (slots_.empty()) slots_.emplace_back(degree);
  const std::size_t given = slots_.size();
  while (slots_.size() < 10) slots_.push_back(slots_[slots_.size() % given]);
  for (int i = 0; i < 60; ++i) next();
}

Permutation RandomElements::next() {
  const std::size_t k = slots_.size();
  const std::size_t s = rng_.below(k);
  std::size_t t = rng_.below(k - 1);
  if (t >= s) ++t;
  if (rng_.coin())
    slots_[s] *= slots_[t];
  else
    slots_[s] = slots_[t] * slots_[s];
  accumulator_ *= slots_[s];
  return accumulator_;
}

StabilizerChain StabilizerChain::build(std::size_t degree,
                                       std::span<const Permutation> generators,
                                       const BsgsOptions& options) {
  if (degree > options.degree_cap)
    throw CapExceeded("stabilizer chain refused: degree " + std::to_string(degree) +
                      " exceeds the cap of " + std::to_string(options.degree_cap));
  StabilizerChain chain(degree);
  std::vector<Permutation> gens;
  bool all_even = true;
  for (const auto& g : generators) {
    if (g.degree() != degree) throw DomainError("generator degree does not match the group");
    if (g.is_identity()) continue;
    gens.push_back(g);
    all_even = all_even && permutation_parity(g) == Parity::even;
  }
  if (gens.empty()) return chain;

  for (const auto& g : gens) {
    auto r = chain.sift(g, 0);
    if (!r.residue.is_identity()) chain.add_strong_generator(std::move(r.residue), r.level);
  }

  BigInt bound = factorial(static_cast<unsigned>(degree));
  if (all_even && degree > 1) bound /= 2;

  RandomElements random(degree, gens, options.seed);
  unsigned streak = 0;
  while (chain.orbit_product() < bound && streak < options.random_streak) {
    auto r = chain.sift(random.next(), 0);
    if (r.residue.is_identity()) {
      ++streak;
    } else {
      streak = 0;
      chain.add_strong_generator(std::move(r.residue), r.level);
    }
  }

  if (chain.orbit_product() == bound) {
    chain.completed_by_bound_ = true;
  } else {
    chain.completed_by_bound_ = chain.verify_schreier_generators(bound);
  }
  chain.order_ = chain.orbit_product();
  return chain;
}

StabilizerChain::SiftResult StabilizerChain::sift(Permutation g, std::size_t from_level) const {
  std::vector<Point> img = g.images();
  auto done = [&](std::size_t level) {
    return SiftResult{Permutation::from_images_unchecked(std::move(img)), level};
  };
  for (std::size_t i = from_level; i < levels_.size(); ++i) {
    const Level& lv = levels_[i];
    Point p = img[lv.base_point];
    if (lv.edge[p] == -1) return done(i);
    while (p != lv.base_point) {
      const auto& inv = strong_inv_[lv.gens[static_cast<std::size_t>(lv.edge[p])]];
      for (auto& y : img) y = inv(y);
      p = img[lv.base_point];
    }
  }
  return done(levels_.size());
}

Permutation StabilizerChain::coset_representative(std::size_t level, Point p) const {
  const Level& lv = levels_.at(level);
  if (lv.edge.at(p) == -1) throw DomainError("point outside the basic orbit");
  // Walking back to the base point yields the path generators in reverse.
  Permutation r(degree_);
  while (p != lv.base_point) {
    const std::uint32_t gi = lv.gens[static_cast<std::size_t>(lv.edge[p])];
    r = strong_[gi] * r;
    p = strong_inv_[gi](p);
  }
  return r;
}

void StabilizerChain::extend_orbit(Level& lv, std::uint32_t local_gen) {
  std::vector<Point> fresh;
  const Permutation& h = strong_[lv.gens[local_gen]];
  for (Point p : lv.orbit) {
    const Point q = h(p);
    if (lv.edge[q] == -1) {
      lv.edge[q] = static_cast<std::int32_t>(local_gen);
      fresh.push_back(q);
    }
  }
  for (std::size_t k = 0; k < fresh.size(); ++k) {
    const Point p = fresh[k];
    for (std::size_t j = 0; j < lv.gens.size(); ++j) {
      const Point q = strong_[lv.gens[j]](p);
      if (lv.edge[q] == -1) {
        lv.edge[q] = static_cast<std::int32_t>(j);
        fresh.push_back(q);
      }
    }
  }
  lv.orbit.insert(lv.orbit.end(), fresh.begin(), fresh.end());
}

void StabilizerChain::add_strong_generator(Permutation g, std::size_t level) {
  const auto index = static_cast<std::uint32_t>(strong_.size());
  strong_inv_.push_back(g.inverse());
  strong_.push_back(std::move(g));
  const Permutation& h = strong_.back();
  if (level == levels_.size()) {
    Point b = 0;
    while (h(b) == b) ++b;
    Level lv;
    lv.base_point = b;
    lv.edge.assign(degree_, -1);
    lv.edge[b] = -2;
    lv.orbit.push_back(b);
    levels_.push_back(std::move(lv));
  }
  for (std::size_t i = 0; i <= level; ++i) {
    Level& lv = levels_[i];
    lv.gens.push_back(index);
    extend_orbit(lv, static_cast<std::uint32_t>(lv.gens.size() - 1));
  }
}

BigInt StabilizerChain::orbit_product() const {
  BigInt r = 1;
  for (const auto& lv : levels_) r *= lv.orbit.size();
  return r;
}

bool StabilizerChain::verify_schreier_generators(const std::optional<BigInt>& bound) {
  // Level i is correct once every Schreier generator u_p s u_{ps}^-1 sifts
  // to the identity through the levels above it. Sifting u_p s from level i
  // forms that generator in its first step.
  std::size_t i = levels_.size();
  while (i-- > 0) {
    bool restarted = false;
    const Level& lv = levels_[i];
    const std::vector<Point> orbit = lv.orbit;
    const std::vector<std::uint32_t> gens = lv.gens;
    for (Point p : orbit) {
      const Permutation u = coset_representative(i, p);
      for (std::size_t j = 0; j < gens.size(); ++j) {
        const Permutation& s = strong_[gens[j]];
        const Point q = s(p);
        // Tree edge: u_q = u_p s, so the Schreier generator is trivial.
        if (levels_[i].edge[q] == static_cast<std::int32_t>(j)) continue;
        auto r = sift(u * s, i);
        if (r.residue.is_identity()) continue;
        const std::size_t level = r.level;
        add_strong_generator(std::move(r.residue), level);
        if (bound && orbit_product() == *bound) return true;
        i = level + 1;
        restarted = true;
        break;
      }
      if (restarted) break;
    }
  }
  return false;
}

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> b;
  for (const auto& lv : levels_) b.push_back(lv.base_point);
  return b;
}

std::vector<std::size_t> StabilizerChain::basic_orbit_lengths() const {
  std::vector<std::size_t> out;
  for (const auto& lv : levels_) out.push_back(lv.orbit.size());
  return out;
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  return sift(g, 0).residue.is_identity();
}

std::vector<Permutation> StabilizerChain::stabilizer_generators(std::size_t level) const {
  std::vector<Permutation> out;
  if (level >= levels_.size()) return out;
  for (auto gi : levels_[level].gens) out.push_back(strong_[gi]);
  return out;
}

}  // namespace tbc
