#include "qcoh/exactla.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcoh {

Vec zero_vec(const FieldCtx& F, std::size_t n) { return Vec(n, F.zero()); }

bool is_zero_vec(std::span<const FieldElem> v) {
  return std::all_of(v.begin(), v.end(), [](const FieldElem& x) { return x.is_zero(); });
}

Matrix::Matrix(const FieldCtx& F, std::size_t rows, std::size_t cols)
    : ctx_(&F), rows_(rows), cols_(cols), data_(rows * cols, F.zero()) {}

Matrix Matrix::identity(const FieldCtx& F, std::size_t n) {
  Matrix m(F, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = F.one();
  return m;
}

Matrix Matrix::from_rows(const FieldCtx& F, std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(F, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("Matrix::from_rows: row length mismatch");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

Matrix Matrix::from_ints(const FieldCtx& F, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  Matrix m(F, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("Matrix::from_ints: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = F.from_int(rows[r][c]);
  }
  return m;
}

Vec Matrix::row_vec(std::size_t r) const {
  auto s = row(r);
  return Vec(s.begin(), s.end());
}

Vec Matrix::col_vec(std::size_t c) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("Matrix product: dimension mismatch");
  Matrix r(*ctx_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const FieldElem& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const FieldElem& b = o(k, j);
        if (!b.is_zero()) r(i, j).add_mul(a, b);
      }
    }
  }
  return r;
}

Vec Matrix::operator*(std::span<const FieldElem> v) const {
  if (v.size() != cols_) throw std::invalid_argument("Matrix-vector product: dimension mismatch");
  Vec r = zero_vec(*ctx_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const FieldElem& a = (*this)(i, k);
      if (!a.is_zero() && !v[k].is_zero()) r[i].add_mul(a, v[k]);
    }
  }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix sum: dimension mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix difference: dimension mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

Matrix Matrix::scaled(const FieldElem& s) const {
  Matrix r = *this;
  for (auto& x : r.data_) x *= s;
  return r;
}

Matrix Matrix::pow(std::uint64_t e) const {
  if (rows_ != cols_) throw std::invalid_argument("Matrix::pow: not square");
  Matrix r = identity(*ctx_, rows_);
  Matrix b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix t(*ctx_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

bool Matrix::is_zero() const { return is_zero_vec(data_); }

void Matrix::append_rows(const Matrix& o) {
  if (o.rows_ == 0) return;
  if (rows_ == 0 && cols_ == 0) {
    *this = o;
    return;
  }
  if (o.cols_ != cols_) throw std::invalid_argument("append_rows: column mismatch");
  data_.insert(data_.end(), o.data_.begin(), o.data_.end());
  rows_ += o.rows_;
}

void Matrix::append_row(std::span<const FieldElem> v) {
  if (v.size() != cols_) throw std::invalid_argument("append_row: column mismatch");
  data_.insert(data_.end(), v.begin(), v.end());
  ++rows_;
}

nlohmann::json Matrix::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < rows_; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : this->row(r)) row.push_back(x.to_json());
    rows.push_back(std::move(row));
  }
  return rows;
}

RrefResult rref(const Matrix& m) {
  Matrix a = m;
  const std::size_t R = a.rows(), C = a.cols();
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> nz;
  std::size_t row = 0;
  for (std::size_t col = 0; col < C && row < R; ++col) {
    std::size_t piv = row;
    while (piv < R && a(piv, col).is_zero()) ++piv;
    if (piv == R) continue;
    if (piv != row) {
      auto pr = a.row(piv), rr = a.row(row);
      std::swap_ranges(pr.begin(), pr.end(), rr.begin());
    }
    const FieldElem inv = a(row, col).inverse();
    nz.clear();
    for (std::size_t c = col; c < C; ++c) {
      if (!a(row, c).is_zero()) {
        a(row, c) *= inv;
        nz.push_back(c);
      }
    }
    for (std::size_t r = 0; r < R; ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      const FieldElem factor = -a(r, col);
      for (std::size_t c : nz) a(r, c).add_mul(factor, a(row, c));
    }
    pivots.push_back(col);
    ++row;
  }
  RrefResult res;
  res.rank = row;
  res.pivots = std::move(pivots);
  res.form = Matrix(m.ctx(), row, C);
  for (std::size_t r = 0; r < row; ++r) {
    auto src = a.row(r);
    std::copy(src.begin(), src.end(), res.form.row(r).begin());
  }
  return res;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Subspace::Subspace(const FieldCtx& F, std::size_t ambient) : ctx_(&F), ambient_(ambient), basis_(F, 0, ambient) {}

Subspace Subspace::span(const FieldCtx& F, std::size_t ambient, const std::vector<Vec>& vecs) {
  Subspace s(F, ambient);
  if (vecs.empty()) return s;
  RrefResult r = rref(Matrix::from_rows(F, ambient, vecs));
  s.basis_ = std::move(r.form);
  s.pivots_ = std::move(r.pivots);
  return s;
}

Subspace Subspace::full(const FieldCtx& F, std::size_t ambient) {
  Subspace s(F, ambient);
  s.basis_ = Matrix::identity(F, ambient);
  for (std::size_t i = 0; i < ambient; ++i) s.pivots_.push_back(i);
  return s;
}

Vec Subspace::reduce(std::span<const FieldElem> v) const {
  if (v.size() != ambient_) throw std::invalid_argument("Subspace::reduce: dimension mismatch");
  Vec w(v.begin(), v.end());
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const FieldElem c = w[pivots_[i]];
    if (c.is_zero()) continue;
    const FieldElem neg = -c;
    auto b = basis_.row(i);
    for (std::size_t j = pivots_[i]; j < ambient_; ++j) {
      if (!b[j].is_zero()) w[j].add_mul(neg, b[j]);
    }
  }
  return w;
}

bool Subspace::contains(std::span<const FieldElem> v) const { return is_zero_vec(reduce(v)); }

bool Subspace::contains(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw std::invalid_argument("Subspace::contains: ambient mismatch");
  for (std::size_t i = 0; i < o.dim(); ++i) {
    if (!contains(o.basis_.row(i))) return false;
  }
  return true;
}

nlohmann::json Subspace::to_json() const {
  return nlohmann::json{{"ambient", ambient_}, {"basis", basis_.to_json()}};
}

Subspace kernel_basis(const Matrix& m) {
  const FieldCtx& F = m.ctx();
  const std::size_t C = m.cols();
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(C, false);
  for (auto c : r.pivots) is_pivot[c] = true;
  std::vector<Vec> vecs;
  for (std::size_t f = 0; f < C; ++f) {
    if (is_pivot[f]) continue;
    Vec v = zero_vec(F, C);
    v[f] = F.one();
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = -r.form(i, f);
    vecs.push_back(std::move(v));
  }
  return Subspace::span(F, C, vecs);
}

Subspace image(const Matrix& m) {
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.col_vec(c));
  return Subspace::span(m.ctx(), m.rows(), cols);
}

static void check_compatible(const Subspace& a, const Subspace& b, const char* what) {
  if (a.ambient() != b.ambient() || &a.ctx() != &b.ctx()) {
    throw std::invalid_argument(std::string(what) + ": subspaces live in different spaces");
  }
}

Subspace sum(const Subspace& a, const Subspace& b) {
  check_compatible(a, b, "sum");
  std::vector<Vec> vecs;
  for (std::size_t i = 0; i < a.dim(); ++i) vecs.push_back(a.vector(i));
  for (std::size_t i = 0; i < b.dim(); ++i) vecs.push_back(b.vector(i));
  return Subspace::span(a.ctx(), a.ambient(), vecs);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  check_compatible(a, b, "intersect");
  const FieldCtx& F = a.ctx();
  const std::size_t n = a.ambient();
  // [a | a] over [b | 0]: rows with vanishing left block carry the intersection.
  Matrix z(F, a.dim() + b.dim(), 2 * n);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    auto src = a.basis().row(i);
    for (std::size_t j = 0; j < n; ++j) z(i, j) = z(i, n + j) = src[j];
  }
  for (std::size_t i = 0; i < b.dim(); ++i) {
    auto src = b.basis().row(i);
    for (std::size_t j = 0; j < n; ++j) z(a.dim() + i, j) = src[j];
  }
  RrefResult r = rref(z);
  std::vector<Vec> vecs;
  for (std::size_t i = 0; i < r.rank; ++i) {
    if (r.pivots[i] < n) continue;
    auto row = r.form.row(i);
    vecs.emplace_back(row.begin() + n, row.end());
  }
  return Subspace::span(F, n, vecs);
}

std::size_t quotient_dim(const Subspace& a, const Subspace& b) {
  check_compatible(a, b, "quotient_dim");
  if (!a.contains(b)) throw std::invalid_argument("quotient_dim: second subspace is not contained in the first");
  return a.dim() - b.dim();
}

QuotientMap::QuotientMap(const Subspace& sub) : ctx_(&sub.ctx()), ambient_(sub.ambient()) {
  const FieldCtx& F = sub.ctx();
  const std::size_t n = ambient_;
  Matrix rev(F, sub.dim(), n);
  for (std::size_t i = 0; i < sub.dim(); ++i) {
    for (std::size_t j = 0; j < n; ++j) rev(i, n - 1 - j) = sub.basis()(i, j);
  }
  RrefResult r = rref(rev);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t i = 0; i < r.rank; ++i) {
    Vec row(n, F.zero());
    for (std::size_t j = 0; j < n; ++j) row[n - 1 - j] = r.form(i, j);
    const std::size_t piv = n - 1 - r.pivots[i];
    is_pivot[piv] = true;
    pivot_.push_back(piv);
    rows_.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) kept_.push_back(j);
  }
}

Vec QuotientMap::project(std::span<const FieldElem> v) const {
  if (v.size() != ambient_) throw std::invalid_argument("QuotientMap::project: dimension mismatch");
  Vec w(v.begin(), v.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const FieldElem c = w[pivot_[i]];
    if (c.is_zero()) continue;
    const FieldElem neg = -c;
    for (std::size_t j = 0; j < ambient_; ++j) {
      if (!rows_[i][j].is_zero()) w[j].add_mul(neg, rows_[i][j]);
    }
  }
  Vec out;
  out.reserve(kept_.size());
  for (auto j : kept_) out.push_back(w[j]);
  return out;
}

}  // namespace qcoh

namespace qcoh {

Vec EchelonBuilder::reduce(std::span<const FieldElem> v) const {
  if (v.size() != ambient_) throw std::invalid_argument("EchelonBuilder: dimension mismatch");
  Vec w(v.begin(), v.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const FieldElem c = w[pivot_[i]];
    if (c.is_zero()) continue;
    const FieldElem neg = -c;
    for (std::size_t j = pivot_[i]; j < ambient_; ++j) {
      if (!rows_[i][j].is_zero()) w[j].add_mul(neg, rows_[i][j]);
    }
  }
  return w;
}

bool EchelonBuilder::add(std::span<const FieldElem> v) {
  Vec w = reduce(v);
  std::size_t piv = 0;
  while (piv < ambient_ && w[piv].is_zero()) ++piv;
  if (piv == ambient_) return false;
  const FieldElem inv = w[piv].inverse();
  for (auto& x : w) x *= inv;
  // Keep earlier rows free of the new pivot so reduce() stays order-independent.
  for (auto& r : rows_) {
    if (r[piv].is_zero()) continue;
    const FieldElem neg = -r[piv];
    for (std::size_t j = piv; j < ambient_; ++j) {
      if (!w[j].is_zero()) r[j].add_mul(neg, w[j]);
    }
  }
  rows_.push_back(std::move(w));
  pivot_.push_back(piv);
  return true;
}

bool EchelonBuilder::contains(std::span<const FieldElem> v) const { return is_zero_vec(reduce(v)); }

Subspace EchelonBuilder::subspace() const { return Subspace::span(*ctx_, ambient_, rows_); }

}  // namespace qcoh
