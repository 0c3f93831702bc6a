#pragma once

// Slow, direct computations used as references by the unit tests. None of
// them calls into the library's algorithms beyond plain data types.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "tbc/mixlayer.hpp"
#include "tbc/permutation.hpp"
#include "tbc/vboolfn.hpp"

namespace oracle {

using Word = std::uint64_t;

inline unsigned popcount(Word x) { return static_cast<unsigned>(__builtin_popcountll(x)); }

// Rank by elimination on the lowest set bit.
inline unsigned rank(std::vector<Word> rows) {
  unsigned r = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] == 0) continue;
    const Word low = rows[i] & (~rows[i] + 1);
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (rows[j] & low) rows[j] ^= rows[i];
    ++r;
  }
  return r;
}

// Number of j-dimensional subspaces of (F_2)^k.
inline std::uint64_t gaussian_binomial(unsigned k, unsigned j) {
  std::uint64_t num = 1, den = 1;
  for (unsigned i = 0; i < j; ++i) {
    num *= (std::uint64_t{1} << (k - i)) - 1;
    den *= (std::uint64_t{1} << (i + 1)) - 1;
  }
  return num / den;
}

// All members of span(gens) by repeated closure under addition.
inline std::set<Word> span_set(const std::vector<Word>& gens) {
  std::set<Word> s{0};
  for (Word g : gens) {
    std::set<Word> next = s;
    for (Word x : s) next.insert(x ^ g);
    s = std::move(next);
  }
  return s;
}

inline std::vector<std::uint32_t> ddt_row(const tbc::SBox& f, std::uint32_t u) {
  std::vector<std::uint32_t> row(f.size(), 0);
  for (std::uint32_t x = 0; x < f.size(); ++x) ++row[f(x) ^ f(x ^ u)];
  return row;
}

inline std::uint32_t delta(const tbc::SBox& f) {
  std::uint32_t best = 0;
  for (std::uint32_t u = 1; u < f.size(); ++u) {
    const auto row = ddt_row(f, u);
    best = std::max(best, *std::max_element(row.begin(), row.end()));
  }
  return best;
}

inline std::uint32_t image_size(const tbc::SBox& f, std::uint32_t u) {
  const auto row = ddt_row(f, u);
  return static_cast<std::uint32_t>(std::count_if(row.begin(), row.end(), [](auto c) { return c; }));
}

inline int walsh(const tbc::SBox& f, std::uint32_t v, std::uint32_t a) {
  int s = 0;
  for (std::uint32_t x = 0; x < f.size(); ++x)
    s += ((popcount(v & f(x)) + popcount(a & x)) & 1u) ? -1 : 1;
  return s;
}

// Minimum over components of the distance to all 2^(m+1) affine functions.
inline std::uint32_t nonlinearity(const tbc::SBox& f) {
  std::uint32_t best = f.size();
  for (std::uint32_t v = 1; v < f.size(); ++v)
    for (std::uint32_t a = 0; a < f.size(); ++a)
      for (unsigned c = 0; c < 2; ++c) {
        std::uint32_t dist = 0;
        for (std::uint32_t x = 0; x < f.size(); ++x)
          dist += ((popcount(v & f(x)) & 1u) != ((popcount(a & x) + c) & 1u));
        best = std::min(best, dist);
      }
  return best;
}

// ANF degree of x -> <v, f(x)> from the subset-sum definition.
inline unsigned anf_degree(const tbc::SBox& f, std::uint32_t v) {
  unsigned deg = 0;
  for (std::uint32_t s = 0; s < f.size(); ++s) {
    unsigned coeff = 0;
    for (std::uint32_t x = 0; x < f.size(); ++x)
      if ((x & s) == x) coeff ^= popcount(v & f(x)) & 1u;
    if (coeff) deg = std::max(deg, popcount(s));
  }
  return deg;
}

// Image of a coordinate set under a layer given by its rows.
inline std::set<Word> layer_image(const tbc::LinearLayer& l, const std::set<Word>& s) {
  std::set<Word> out;
  for (Word x : s) {
    Word y = 0;
    for (unsigned i = 0; i < l.dim(); ++i)
      if ((x >> i) & 1u) y ^= l.matrix().row_bits(i);
    out.insert(y);
  }
  return out;
}

inline std::set<Word> wall_set(unsigned m, unsigned n, std::uint32_t bricks) {
  std::vector<Word> gens;
  for (unsigned i = 0; i < n; ++i)
    if ((bricks >> i) & 1u)
      for (unsigned k = 0; k < m; ++k) gens.push_back(Word{1} << (m * i + k));
  return span_set(gens);
}

// Every (W, W') with W lambda = W', by comparing explicit point sets.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> wall_pairs(const tbc::LinearLayer& l,
                                                                        unsigned m, unsigned n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  const std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t a = 1; a < full; ++a) {
    const auto img = layer_image(l, wall_set(m, n, a));
    for (std::uint32_t b = 1; b < full; ++b)
      if (img == wall_set(m, n, b)) out.emplace_back(a, b);
  }
  return out;
}

// Round evaluated step by step: every brick through its own table, then the
// layer bit by bit. Bricks are translated to fix 0 first.
inline Word round(const std::vector<tbc::SBox>& bricks, unsigned m, unsigned n,
                  const tbc::LinearLayer& l, Word x) {
  Word y = 0;
  for (unsigned i = 0; i < n; ++i) {
    const auto& f = bricks.size() == 1 ? bricks[0] : bricks[i];
    const auto in = static_cast<std::uint32_t>((x >> (m * i)) & ((Word{1} << m) - 1));
    y |= Word{f(in) ^ f(0)} << (m * i);
  }
  Word z = 0;
  for (unsigned i = 0; i < l.dim(); ++i)
    for (unsigned j = 0; j < l.dim(); ++j)
      if (((y >> i) & 1u) && l.matrix().get(i, j)) z ^= Word{1} << j;
  return z;
}

// Closure of the generators by breadth-first multiplication. Only for groups
// whose elements all fit in memory.
inline std::set<std::vector<tbc::Point>> closure(const std::vector<tbc::Permutation>& gens,
                                                 std::size_t degree) {
  std::set<std::vector<tbc::Point>> seen;
  std::vector<std::vector<tbc::Point>> frontier;
  std::vector<tbc::Point> id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<tbc::Point>(i);
  seen.insert(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    std::vector<std::vector<tbc::Point>> next;
    for (const auto& e : frontier)
      for (const auto& g : gens) {
        std::vector<tbc::Point> p(degree);
        for (std::size_t i = 0; i < degree; ++i) p[i] = g(e[i]);
        if (seen.insert(p).second) next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  return seen;
}

// Sign from the inversion count.
inline bool is_even(const tbc::Permutation& p) {
  std::uint64_t inv = 0;
  for (std::size_t i = 0; i < p.degree(); ++i)
    for (std::size_t j = i + 1; j < p.degree(); ++j) inv += p(static_cast<tbc::Point>(i)) > p(static_cast<tbc::Point>(j));
  return inv % 2 == 0;
}

}  // namespace oracle
