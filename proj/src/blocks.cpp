#include <bit>
#include <algorithm>
#include <numeric>
#include <string>

#include "tbc/error.hpp"
#include "tbc/permgroup.hpp"

namespace tbc {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }

  Point find(Point x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns false when already joined.
  bool unite(Point a, Point b, Point& root, Point& absorbed) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    root = a;
    absorbed = b;
    return true;
  }

 private:
  std::vector<Point> parent_;
};

std::vector<std::vector<Point>> orbits_of(std::size_t degree, std::span<const Permutation> gens) {
  std::vector<bool> seen(degree, false);
  std::vector<std::vector<Point>> out;
  for (Point s = 0; s < degree; ++s) {
    if (seen[s]) continue;
    std::vector<Point> orbit{s};
    seen[s] = true;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (const auto& g : gens) {
        const Point q = g(orbit[k]);
        if (!seen[q]) {
          seen[q] = true;
          orbit.push_back(q);
        }
      }
    out.push_back(std::move(orbit));
  }
  return out;
}

}  // namespace

std::vector<Permutation> translation_generators(unsigned d) {
  if (d < 1 || d > 16) throw DomainError("translation generators need 1 <= d <= 16");
  const std::size_t n = std::size_t{1} << d;
  std::vector<Permutation> out;
  for (unsigned i = 0; i < d; ++i) {
    std::vector<Point> img(n);
    for (std::size_t x = 0; x < n; ++x) img[x] = static_cast<Point>(x ^ (std::size_t{1} << i));
    out.push_back(Permutation::from_images_unchecked(std::move(img)));
  }
  return out;
}

std::vector<Permutation> conjugate_translations(const Permutation& f) {
  const std::size_t n = f.degree();
  if (n < 2 || !std::has_single_bit(n)) throw DomainError("degree must be a power of two");
  const Permutation inv = f.inverse();
  std::vector<Permutation> out;
  for (std::size_t e = 1; e < n; e <<= 1) {
    std::vector<Point> img(n);
    for (std::size_t x = 0; x < n; ++x) img[x] = inv(static_cast<Point>(f(static_cast<Point>(x)) ^ e));
    out.push_back(Permutation::from_images_unchecked(std::move(img)));
  }
  return out;
}

std::vector<Permutation> conjugate_translations(const SBox& f) {
  return conjugate_translations(f.as_permutation());
}

GroupHandle::GroupHandle(std::size_t degree, std::vector<Permutation> generators)
    : degree_(degree), gens_(std::move(generators)) {
  if (degree_ == 0) throw DomainError("a permutation group needs at least one point");
  if (degree_ > kMaxExplicitDegree)
    throw CapExceeded("explicit permutation groups are limited to degree " +
                      std::to_string(kMaxExplicitDegree));
  for (const auto& g : gens_)
    if (g.degree() != degree_) throw DomainError("generator degree does not match the group");
}

std::vector<Point> GroupHandle::orbit(Point p) const {
  if (p >= degree_) throw DomainError("point outside the domain");
  std::vector<bool> seen(degree_, false);
  std::vector<Point> out{p};
  seen[p] = true;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (const auto& g : gens_) {
      const Point q = g(out[k]);
      if (!seen[q]) {
        seen[q] = true;
        out.push_back(q);
      }
    }
  return out;
}

bool GroupHandle::is_transitive() const { return orbit(0).size() == degree_; }

bool GroupHandle::all_generators_even() const {
  return std::all_of(gens_.begin(), gens_.end(),
                     [](const Permutation& g) { return permutation_parity(g) == Parity::even; });
}

const StabilizerChain& GroupHandle::bsgs(const BsgsOptions& options) {
  if (!chain_)
    chain_ = std::make_shared<const StabilizerChain>(
        StabilizerChain::build(degree_, gens_, options));
  return *chain_;
}

const StabilizerChain& GroupHandle::chain() const {
  if (!chain_) throw Error("stabilizer chain has not been built");
  return *chain_;
}

BigInt bsgs_build(GroupHandle& g, const BsgsOptions& options) { return g.bsgs(options).order(); }

BlockSystem::BlockSystem(std::vector<std::uint32_t> block_of) : block_of_(std::move(block_of)) {
  if (block_of_.empty()) throw DomainError("empty block map");
  const auto count = *std::max_element(block_of_.begin(), block_of_.end()) + 1;
  std::vector<std::size_t> sizes(count, 0);
  for (auto b : block_of_) ++sizes[b];
  if (std::any_of(sizes.begin(), sizes.end(), [&](std::size_t s) { return s != sizes[0]; }))
    throw DomainError("blocks of a block system must have equal size");
  block_count_ = count;
  block_size_ = sizes[0];
}

std::vector<Point> BlockSystem::block_containing(Point p) const {
  const auto b = block_of(p);
  std::vector<Point> out;
  for (Point x = 0; x < block_of_.size(); ++x)
    if (block_of_[x] == b) out.push_back(x);
  return out;
}

bool BlockSystem::is_invariant_under(std::span<const Permutation> generators) const {
  // g maps blocks onto blocks iff points sharing a block keep sharing one; as
  // g is a bijection with equal block sizes, the induced map is well defined.
  const std::size_t n = block_of_.size();
  for (const auto& g : generators) {
    if (g.degree() != n) return false;
    std::vector<std::int64_t> target(block_count_, -1);
    for (Point x = 0; x < n; ++x) {
      auto& t = target[block_of_[x]];
      const auto img = static_cast<std::int64_t>(block_of_[g(x)]);
      if (t == -1)
        t = img;
      else if (t != img)
        return false;
    }
  }
  return true;
}

BlockSystem minimal_block_system(const GroupHandle& g, Point a, Point b) {
  const std::size_t n = g.degree();
  if (a >= n || b >= n) throw DomainError("seed point outside the domain");
  if (!g.is_transitive()) throw DomainError("block systems require a transitive group");
  UnionFind uf(n);
  std::vector<std::pair<Point, Point>> queue;
  Point root = 0, absorbed = 0;
  if (uf.unite(a, b, root, absorbed)) queue.emplace_back(root, absorbed);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const auto [x, y] = queue[k];
    for (const auto& s : g.generators()) {
      if (uf.unite(s(x), s(y), root, absorbed)) queue.emplace_back(root, absorbed);
    }
  }
  std::vector<std::uint32_t> label(n, UINT32_MAX), block_of(n);
  std::uint32_t next = 0;
  for (Point x = 0; x < n; ++x) {
    const Point r = uf.find(x);
    if (label[r] == UINT32_MAX) label[r] = next++;
    block_of[x] = label[r];
  }
  return BlockSystem(std::move(block_of));
}

PrimitivityResult is_primitive(const GroupHandle& g) {
  const std::size_t n = g.degree();
  if (!g.is_transitive()) throw DomainError("primitivity is defined for transitive groups");
  if (n <= 2) return {true, std::nullopt};
  // Every block system is the minimal one of some pair {0, beta}, and beta
  // can be taken up to the action of the stabilizer of 0.
  std::vector<Point> seeds;
  if (g.has_bsgs() && g.chain().base_length() > 0 && g.chain().base().front() == 0) {
    const auto stab = g.chain().stabilizer_generators(1);
    for (const auto& orbit : orbits_of(n, stab))
      if (orbit.front() != 0) seeds.push_back(orbit.front());
  } else {
    for (Point beta = 1; beta < n; ++beta) seeds.push_back(beta);
  }
  for (Point beta : seeds) {
    BlockSystem bs = minimal_block_system(g, 0, beta);
    if (bs.block_count() > 1) return {false, std::move(bs)};
  }
  return {true, std::nullopt};
}

}  // namespace tbc
