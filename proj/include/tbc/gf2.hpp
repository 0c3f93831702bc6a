#pragma once

// Bit-packed linear algebra over F_2.
//
// Vectors of (F_2)^k, k <= 64, are packed into one machine word: coordinate i
// is bit i. Matrices act on row vectors (v -> vM), so row i of a matrix is the
// image of the basis vector e_i.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tbc::gf2 {

using Word = std::uint64_t;

inline constexpr unsigned kMaxDim = 64;
/// Largest ambient dimension accepted by exhaustive subspace enumeration.
inline constexpr unsigned kMaxEnumerationDim = 8;

/// Mask with the low `k` bits set.
constexpr Word low_mask(unsigned k) { return k >= 64 ? ~Word{0} : ((Word{1} << k) - 1); }

/// Parity of the bitwise AND, i.e. the standard inner product.
constexpr unsigned dot(Word a, Word b) {
  return static_cast<unsigned>(__builtin_parityll(a & b));
}

/// Element of (F_2)^k.
class Vec {
 public:
  Vec() = default;
  Vec(unsigned dim, Word bits);

  static Vec zero(unsigned dim) { return Vec(dim, 0); }
  static Vec unit(unsigned dim, unsigned i);

  unsigned dim() const noexcept { return dim_; }
  Word bits() const noexcept { return bits_; }
  bool get(unsigned i) const noexcept { return (bits_ >> i) & 1u; }
  bool is_zero() const noexcept { return bits_ == 0; }
  unsigned weight() const noexcept { return static_cast<unsigned>(__builtin_popcountll(bits_)); }

  Vec operator+(const Vec& other) const;
  Vec& operator+=(const Vec& other);

  friend bool operator==(const Vec&, const Vec&) = default;
  /// Orders by integer reading of the bits (dimension first).
  friend auto operator<=>(const Vec& a, const Vec& b) {
    if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

  /// Coordinates as a string of '0'/'1', coordinate 0 first.
  std::string to_string() const;

 private:
  unsigned dim_ = 0;
  Word bits_ = 0;
};

unsigned dot(const Vec& a, const Vec& b);

/// Dense r x c matrix over F_2 with c <= 64.
class Matrix {
 public:
  Matrix() = default;
  Matrix(unsigned rows, unsigned cols);

  static Matrix identity(unsigned n);
  static Matrix from_rows(unsigned cols, std::vector<Word> rows);
  static Matrix from_rows(std::span<const Vec> rows);
  /// Permutation matrix moving coordinate i to coordinate perm[i].
  static Matrix from_bit_permutation(std::span<const unsigned> perm);

  unsigned rows() const noexcept { return static_cast<unsigned>(rows_.size()); }
  unsigned cols() const noexcept { return cols_; }
  Word row_bits(unsigned i) const { return rows_.at(i); }
  Vec row(unsigned i) const { return Vec(cols_, rows_.at(i)); }
  const std::vector<Word>& row_words() const noexcept { return rows_; }

  bool get(unsigned i, unsigned j) const { return (rows_.at(i) >> j) & 1u; }
  void set(unsigned i, unsigned j, bool value);

  /// Row-vector product vM.
  Vec apply(const Vec& v) const;
  Word apply_bits(Word v) const noexcept {
    Word out = 0;
    for (unsigned i = 0; v != 0; ++i, v >>= 1)
      if (v & 1u) out ^= rows_[i];
    return out;
  }

  /// Product such that v(AB) = (vA)B.
  Matrix operator*(const Matrix& other) const;
  Matrix transpose() const;
  unsigned rank() const;
  bool is_square() const noexcept { return rows() == cols_; }
  bool is_invertible() const;
  /// Throws DomainError when singular.
  Matrix inverse() const;

  /// If the matrix is a permutation matrix, returns i -> image coordinate.
  std::optional<std::vector<unsigned>> as_bit_permutation() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::vector<Word> rows_;
  unsigned cols_ = 0;
};

/// Subspace of (F_2)^k held as a canonical reduced row-echelon basis.
///
/// The pivot of a basis row is its highest set bit; rows are sorted by pivot
/// ascending and no pivot bit appears in any other row. Two subspaces are
/// equal iff their basis lists are equal.
class Subspace {
 public:
  Subspace() = default;
  /// The zero subspace of (F_2)^ambient.
  explicit Subspace(unsigned ambient);

  static Subspace full(unsigned ambient);
  static Subspace span(unsigned ambient, std::span<const Word> vectors);
  /// Coordinate span of the bits set in `mask`.
  static Subspace coordinate(unsigned ambient, Word mask);

  unsigned ambient_dim() const noexcept { return ambient_; }
  unsigned dim() const noexcept { return static_cast<unsigned>(basis_.size()); }
  bool is_zero() const noexcept { return basis_.empty(); }
  bool is_full() const noexcept { return dim() == ambient_; }
  const std::vector<Word>& basis_bits() const noexcept { return basis_; }
  std::vector<Vec> basis() const;

  /// Reduces v modulo the subspace; zero iff v is a member.
  Word reduce(Word v) const noexcept;
  bool contains_bits(Word v) const noexcept { return reduce(v) == 0; }
  bool contains(const Vec& v) const;

  /// All 2^dim members; element i is the combination of basis rows selected by
  /// the bits of i. dim must be <= 30.
  std::vector<Word> elements() const;

  Subspace operator+(const Subspace& other) const;
  Subspace orthogonal_complement() const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

  std::string to_string() const;

 private:
  static Subspace from_canonical(unsigned ambient, std::vector<Word> basis);
  unsigned ambient_ = 0;
  std::vector<Word> basis_;

  friend class EchelonForm;
  friend void for_each_subspace(unsigned, std::optional<unsigned>,
                                const std::function<bool(const Subspace&)>&);
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept;
};

/// Incremental Gaussian elimination; produces canonical subspaces.
class EchelonForm {
 public:
  explicit EchelonForm(unsigned ambient);

  /// Inserts v; returns true iff it was independent of the rows so far.
  bool insert(Word v);
  unsigned rank() const noexcept { return rank_; }
  Word reduce(Word v) const noexcept;
  Subspace subspace() const;

 private:
  unsigned ambient_;
  unsigned rank_ = 0;
  Word slot_[kMaxDim] = {};
};

/// Span of `vectors` in canonical form. Throws DimensionError on mixed lengths.
Subspace rref(std::span<const Vec> vectors);
Subspace rref(unsigned ambient, std::span<const Vec> vectors);

/// {vM : v in S}.
Subspace subspace_image(const Subspace& s, const Matrix& m);

/// Visits every subspace of (F_2)^k exactly once in canonical form, optionally
/// restricted to one dimension. Stops early when `visit` returns false.
/// Throws CapExceeded when k > kMaxEnumerationDim.
void for_each_subspace(unsigned k, std::optional<unsigned> dim,
                       const std::function<bool(const Subspace&)>& visit);
std::vector<Subspace> enumerate_subspaces(unsigned k, std::optional<unsigned> dim = std::nullopt);

struct AffineHull {
  Vec offset;
  Subspace direction;

  bool contains(const Vec& v) const { return direction.contains(v + offset); }
  /// Number of points, 2^dim(direction).
  std::uint64_t size() const { return std::uint64_t{1} << direction.dim(); }
  /// Same point set, regardless of the chosen offset.
  bool same_set(const AffineHull& other) const;
};

/// Smallest affine subspace containing `points`. The offset is the point with
/// the smallest integer encoding. Throws DomainError on an empty set.
AffineHull affine_hull(std::span<const Vec> points);

}  // namespace tbc::gf2
