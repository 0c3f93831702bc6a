#include "tbc/gf2.hpp"

#include <algorithm>
#include <bit>

#include "tbc/error.hpp"

namespace tbc::gf2 {

namespace {

void check_dim(unsigned k) {
  if (k > kMaxDim) throw DimensionError("ambient dimension " + std::to_string(k) + " exceeds 64");
}

unsigned pivot_of(Word row) { return 63u - static_cast<unsigned>(std::countl_zero(row)); }

}  // namespace

// ---------------------------------------------------------------- Vec

Vec::Vec(unsigned dim, Word bits) : dim_(dim), bits_(bits) {
  check_dim(dim);
  if ((bits & ~low_mask(dim)) != 0)
    throw DimensionError("vector bits exceed dimension " + std::to_string(dim));
}

Vec Vec::unit(unsigned dim, unsigned i) {
  if (i >= dim) throw DimensionError("unit vector index out of range");
  return Vec(dim, Word{1} << i);
}

Vec Vec::operator+(const Vec& other) const {
  Vec out = *this;
  out += other;
  return out;
}

Vec& Vec::operator+=(const Vec& other) {
  if (dim_ != other.dim_) throw DimensionError("vector dimension mismatch");
  bits_ ^= other.bits_;
  return *this;
}

std::string Vec::to_string() const {
  std::string s(dim_, '0');
  for (unsigned i = 0; i < dim_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

unsigned dot(const Vec& a, const Vec& b) {
  if (a.dim() != b.dim()) throw DimensionError("vector dimension mismatch");
  return dot(a.bits(), b.bits());
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(unsigned rows, unsigned cols) : rows_(rows, 0), cols_(cols) { check_dim(cols); }

Matrix Matrix::identity(unsigned n) {
  Matrix m(n, n);
  for (unsigned i = 0; i < n; ++i) m.rows_[i] = Word{1} << i;
  return m;
}

Matrix Matrix::from_rows(unsigned cols, std::vector<Word> rows) {
  check_dim(cols);
  for (Word r : rows)
    if ((r & ~low_mask(cols)) != 0) throw DimensionError("matrix row exceeds column count");
  Matrix m;
  m.rows_ = std::move(rows);
  m.cols_ = cols;
  return m;
}

Matrix Matrix::from_rows(std::span<const Vec> rows) {
  if (rows.empty()) return Matrix();
  std::vector<Word> words;
  words.reserve(rows.size());
  for (const Vec& r : rows) {
    if (r.dim() != rows.front().dim()) throw DimensionError("matrix rows of mixed length");
    words.push_back(r.bits());
  }
  return from_rows(rows.front().dim(), std::move(words));
}

Matrix Matrix::from_bit_permutation(std::span<const unsigned> perm) {
  const auto n = static_cast<unsigned>(perm.size());
  check_dim(n);
  Word seen = 0;
  Matrix m(n, n);
  for (unsigned i = 0; i < n; ++i) {
    if (perm[i] >= n || ((seen >> perm[i]) & 1u))
      throw DomainError("bit permutation is not a bijection on 0.." + std::to_string(n - 1));
    seen |= Word{1} << perm[i];
    m.rows_[i] = Word{1} << perm[i];
  }
  return m;
}

void Matrix::set(unsigned i, unsigned j, bool value) {
  if (j >= cols_) throw DimensionError("column index out of range");
  Word& r = rows_.at(i);
  r = value ? (r | (Word{1} << j)) : (r & ~(Word{1} << j));
}

Vec Matrix::apply(const Vec& v) const {
  if (v.dim() != rows()) throw DimensionError("vector length does not match matrix rows");
  return Vec(cols_, apply_bits(v.bits()));
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows()) throw DimensionError("matrix product dimension mismatch");
  Matrix out(rows(), other.cols_);
  for (unsigned i = 0; i < rows(); ++i) out.rows_[i] = other.apply_bits(rows_[i]);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows());
  for (unsigned i = 0; i < rows(); ++i)
    for (unsigned j = 0; j < cols_; ++j)
      if (get(i, j)) out.rows_[j] |= Word{1} << i;
  return out;
}

unsigned Matrix::rank() const {
  EchelonForm e(cols_);
  for (Word r : rows_) e.insert(r);
  return e.rank();
}

bool Matrix::is_invertible() const { return is_square() && rank() == cols_; }

Matrix Matrix::inverse() const {
  if (!is_square()) throw DimensionError("inverse of a non-square matrix");
  const unsigned n = cols_;
  std::vector<Word> a = rows_;
  std::vector<Word> inv = identity(n).rows_;
  for (unsigned col = 0; col < n; ++col) {
    unsigned p = col;
    while (p < n && !((a[p] >> col) & 1u)) ++p;
    if (p == n) throw DomainError("matrix is singular");
    std::swap(a[p], a[col]);
    std::swap(inv[p], inv[col]);
    for (unsigned r = 0; r < n; ++r) {
      if (r != col && ((a[r] >> col) & 1u)) {
        a[r] ^= a[col];
        inv[r] ^= inv[col];
      }
    }
  }
  return from_rows(n, std::move(inv));
}

std::optional<std::vector<unsigned>> Matrix::as_bit_permutation() const {
  if (!is_square()) return std::nullopt;
  std::vector<unsigned> perm(rows());
  Word seen = 0;
  for (unsigned i = 0; i < rows(); ++i) {
    if (std::popcount(rows_[i]) != 1) return std::nullopt;
    perm[i] = pivot_of(rows_[i]);
    if ((seen >> perm[i]) & 1u) return std::nullopt;
    seen |= rows_[i];
  }
  return perm;
}

// ---------------------------------------------------------------- EchelonForm

EchelonForm::EchelonForm(unsigned ambient) : ambient_(ambient) { check_dim(ambient); }

Word EchelonForm::reduce(Word v) const noexcept {
  while (v != 0) {
    const unsigned p = pivot_of(v);
    if (slot_[p] == 0) return v;
    v ^= slot_[p];
  }
  return 0;
}

bool EchelonForm::insert(Word v) {
  if ((v & ~low_mask(ambient_)) != 0) throw DimensionError("vector exceeds ambient dimension");
  v = reduce(v);
  if (v == 0) return false;
  slot_[pivot_of(v)] = v;
  ++rank_;
  return true;
}

Subspace EchelonForm::subspace() const {
  std::vector<Word> basis;
  basis.reserve(rank_);
  // Back-substitute: clear every lower pivot bit from each row.
  Word reduced[kMaxDim] = {};
  for (unsigned p = 0; p < kMaxDim; ++p) {
    Word row = slot_[p];
    if (row == 0) continue;
    for (unsigned q = p; q-- > 0;)
      if (reduced[q] != 0 && ((row >> q) & 1u)) row ^= reduced[q];
    reduced[p] = row;
    basis.push_back(row);
  }
  return Subspace::from_canonical(ambient_, std::move(basis));
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(unsigned ambient) : ambient_(ambient) { check_dim(ambient); }

Subspace Subspace::from_canonical(unsigned ambient, std::vector<Word> basis) {
  Subspace s(ambient);
  s.basis_ = std::move(basis);
  return s;
}

Subspace Subspace::full(unsigned ambient) { return coordinate(ambient, low_mask(ambient)); }

Subspace Subspace::coordinate(unsigned ambient, Word mask) {
  check_dim(ambient);
  if ((mask & ~low_mask(ambient)) != 0) throw DimensionError("coordinate mask exceeds dimension");
  std::vector<Word> basis;
  for (unsigned i = 0; i < ambient; ++i)
    if ((mask >> i) & 1u) basis.push_back(Word{1} << i);
  return from_canonical(ambient, std::move(basis));
}

Subspace Subspace::span(unsigned ambient, std::span<const Word> vectors) {
  EchelonForm e(ambient);
  for (Word v : vectors) e.insert(v);
  return e.subspace();
}

std::vector<Vec> Subspace::basis() const {
  std::vector<Vec> out;
  out.reserve(basis_.size());
  for (Word w : basis_) out.emplace_back(ambient_, w);
  return out;
}

Word Subspace::reduce(Word v) const noexcept {
  for (auto it = basis_.rbegin(); it != basis_.rend(); ++it)
    if ((v >> pivot_of(*it)) & 1u) v ^= *it;
  return v;
}

bool Subspace::contains(const Vec& v) const {
  if (v.dim() != ambient_) throw DimensionError("vector not in the ambient space");
  return contains_bits(v.bits());
}

std::vector<Word> Subspace::elements() const {
  if (dim() > 30) throw CapExceeded("refusing to list a subspace of dimension > 30");
  const std::size_t count = std::size_t{1} << dim();
  std::vector<Word> out(count, 0);
  for (std::size_t i = 1; i < count; ++i) {
    const unsigned low = static_cast<unsigned>(std::countr_zero(i));
    out[i] = out[i & (i - 1)] ^ basis_[low];
  }
  return out;
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw DimensionError("subspace sum across ambient spaces");
  EchelonForm e(ambient_);
  for (Word w : basis_) e.insert(w);
  for (Word w : other.basis_) e.insert(w);
  return e.subspace();
}

Subspace Subspace::orthogonal_complement() const {
  // For each free column j the kernel vector has bit j set and, for each row
  // with pivot p, bit p equal to that row's bit j.
  Word pivots = 0;
  for (Word r : basis_) pivots |= Word{1} << pivot_of(r);
  std::vector<Word> kernel;
  for (unsigned j = 0; j < ambient_; ++j) {
    if ((pivots >> j) & 1u) continue;
    Word v = Word{1} << j;
    for (Word r : basis_)
      if ((r >> j) & 1u) v |= Word{1} << pivot_of(r);
    kernel.push_back(v);
  }
  return span(ambient_, kernel);
}

std::string Subspace::to_string() const {
  std::string s = "<";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) s += ",";
    s += Vec(ambient_, basis_[i]).to_string();
  }
  return s + ">";
}

std::size_t SubspaceHash::operator()(const Subspace& s) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull ^ s.ambient_dim();
  for (Word w : s.basis_bits()) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0x100000001b3ull;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------- free functions

Subspace rref(unsigned ambient, std::span<const Vec> vectors) {
  EchelonForm e(ambient);
  for (const Vec& v : vectors) {
    if (v.dim() != ambient) throw DimensionError("rref over vectors of mixed length");
    e.insert(v.bits());
  }
  return e.subspace();
}

Subspace rref(std::span<const Vec> vectors) {
  if (vectors.empty()) throw DomainError("rref of an empty list has no ambient dimension");
  return rref(vectors.front().dim(), vectors);
}

Subspace subspace_image(const Subspace& s, const Matrix& m) {
  if (s.ambient_dim() != m.rows()) throw DimensionError("subspace and matrix dimensions differ");
  EchelonForm e(m.cols());
  for (Word w : s.basis_bits()) e.insert(m.apply_bits(w));
  return e.subspace();
}

void for_each_subspace(unsigned k, std::optional<unsigned> dim,
                       const std::function<bool(const Subspace&)>& visit) {
  if (k > kMaxEnumerationDim)
    throw CapExceeded("subspace enumeration limited to ambient dimension " +
                      std::to_string(kMaxEnumerationDim) + " (requested " + std::to_string(k) +
                      ")");
  if (dim && *dim > k) return;
  // A canonical basis is determined by its pivot set plus arbitrary bits at
  // the non-pivot positions below each pivot.
  for (Word pivots = 0; pivots < (Word{1} << k); ++pivots) {
    const auto r = static_cast<unsigned>(std::popcount(pivots));
    if (dim && r != *dim) continue;
    std::vector<unsigned> pivot_list;
    std::vector<std::vector<unsigned>> free_cols;
    unsigned total_free = 0;
    for (unsigned p = 0; p < k; ++p) {
      if (!((pivots >> p) & 1u)) continue;
      pivot_list.push_back(p);
      std::vector<unsigned> f;
      for (unsigned j = 0; j < p; ++j)
        if (!((pivots >> j) & 1u)) f.push_back(j);
      total_free += static_cast<unsigned>(f.size());
      free_cols.push_back(std::move(f));
    }
    for (Word fill = 0; fill < (Word{1} << total_free); ++fill) {
      std::vector<Word> basis(r);
      unsigned used = 0;
      for (unsigned i = 0; i < r; ++i) {
        Word row = Word{1} << pivot_list[i];
        for (unsigned j : free_cols[i]) {
          if ((fill >> used) & 1u) row |= Word{1} << j;
          ++used;
        }
        basis[i] = row;
      }
      if (!visit(Subspace::from_canonical(k, std::move(basis)))) return;
    }
  }
}

std::vector<Subspace> enumerate_subspaces(unsigned k, std::optional<unsigned> dim) {
  std::vector<Subspace> out;
  for_each_subspace(k, dim, [&](const Subspace& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

bool AffineHull::same_set(const AffineHull& other) const {
  return direction == other.direction && direction.contains(offset + other.offset);
}

AffineHull affine_hull(std::span<const Vec> points) {
  if (points.empty()) throw DomainError("affine hull of an empty set");
  const Vec offset = *std::min_element(points.begin(), points.end());
  EchelonForm e(offset.dim());
  for (const Vec& p : points) {
    if (p.dim() != offset.dim()) throw DimensionError("affine hull over points of mixed length");
    e.insert(p.bits() ^ offset.bits());
  }
  return AffineHull{offset, e.subspace()};
}

}  // namespace tbc::gf2
