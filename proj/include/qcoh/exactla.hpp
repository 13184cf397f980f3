#ifndef QCOH_EXACTLA_HPP
#define QCOH_EXACTLA_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "qcoh/ff.hpp"

namespace qcoh {

using Vec = std::vector<FieldElem>;

Vec zero_vec(const FieldCtx& F, std::size_t n);
bool is_zero_vec(std::span<const FieldElem> v);

/// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const FieldCtx& F, std::size_t rows, std::size_t cols);
  static Matrix identity(const FieldCtx& F, std::size_t n);
  static Matrix from_rows(const FieldCtx& F, std::size_t cols, const std::vector<Vec>& rows);
  /// Convenience for tests: integer entries reduced mod p.
  static Matrix from_ints(const FieldCtx& F, const std::vector<std::vector<std::int64_t>>& rows);

  const FieldCtx& ctx() const { return *ctx_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  FieldElem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const FieldElem& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<FieldElem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const FieldElem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vec row_vec(std::size_t r) const;
  Vec col_vec(std::size_t c) const;

  Matrix operator*(const Matrix& o) const;
  Vec operator*(std::span<const FieldElem> v) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const FieldElem& s) const;
  Matrix pow(std::uint64_t e) const;
  Matrix transpose() const;
  bool is_zero() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Appends the rows of o (same column count).
  void append_rows(const Matrix& o);
  void append_row(std::span<const FieldElem> v);

  nlohmann::json to_json() const;

 private:
  const FieldCtx* ctx_ = nullptr;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<FieldElem> data_;
};

struct RrefResult {
  Matrix form;  ///< reduced row-echelon form, zero rows dropped
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Leftmost-pivot Gauss-Jordan elimination.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/**
 * A linear subspace of F^n in canonical form: the nonzero rows of its RREF basis
 * matrix. Two Subspace values are equal iff they describe the same subspace.
 */
class Subspace {
 public:
  Subspace(const FieldCtx& F, std::size_t ambient);
  /// Span of arbitrary (possibly dependent) vectors.
  static Subspace span(const FieldCtx& F, std::size_t ambient, const std::vector<Vec>& vecs);
  static Subspace full(const FieldCtx& F, std::size_t ambient);

  const FieldCtx& ctx() const { return *ctx_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  Vec vector(std::size_t i) const { return basis_.row_vec(i); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(std::span<const FieldElem> v) const;
  bool contains(const Subspace& o) const;
  /// Subtracts the basis components at the pivot columns; result is zero iff v lies in the subspace.
  Vec reduce(std::span<const FieldElem> v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  nlohmann::json to_json() const;

 private:
  friend Subspace sum(const Subspace&, const Subspace&);
  const FieldCtx* ctx_;
  std::size_t ambient_;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Right null space {v : m v = 0}.
Subspace kernel_basis(const Matrix& m);
/// Column space of m (image of m acting on column vectors).
Subspace image(const Matrix& m);

Subspace sum(const Subspace& a, const Subspace& b);
/// Zassenhaus block intersection.
Subspace intersect(const Subspace& a, const Subspace& b);
/// dim a - dim b; throws std::invalid_argument unless b is contained in a.
std::size_t quotient_dim(const Subspace& a, const Subspace& b);

/// Incrementally grown row-echelon basis.
class EchelonBuilder {
 public:
  EchelonBuilder(const FieldCtx& F, std::size_t ambient) : ctx_(&F), ambient_(ambient) {}
  /// Adds v; returns true iff it was independent of the vectors added so far.
  bool add(std::span<const FieldElem> v);
  bool contains(std::span<const FieldElem> v) const;
  std::size_t dim() const { return rows_.size(); }
  Subspace subspace() const;

 private:
  Vec reduce(std::span<const FieldElem> v) const;
  const FieldCtx* ctx_;
  std::size_t ambient_;
  std::vector<Vec> rows_;  // each normalised to 1 at its pivot
  std::vector<std::size_t> pivot_;
};

/**
 * Coordinates modulo a subspace, with complement coordinates chosen as the
 * earliest possible indices: pivots of the elimination are taken from the
 * right, so the retained coordinates are the lex-least basis labels.
 */
class QuotientMap {
 public:
  explicit QuotientMap(const Subspace& sub);
  std::size_t dim() const { return kept_.size(); }
  /// Ambient indices of the retained basis vectors, increasing.
  const std::vector<std::size_t>& kept() const { return kept_; }
  /// Image of v in quotient coordinates.
  Vec project(std::span<const FieldElem> v) const;

 private:
  const FieldCtx* ctx_;
  std::size_t ambient_;
  // Rows normalised with 1 at pivot_[i] and zeros at the other pivots.
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivot_;
  std::vector<std::size_t> kept_;
};

}  // namespace qcoh

#endif  // QCOH_EXACTLA_HPP
