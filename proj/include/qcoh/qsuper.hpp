#ifndef QCOH_QSUPER_HPP
#define QCOH_QSUPER_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qcoh/exactla.hpp"

namespace qcoh {

/// Superdimension even|odd of a Z/2-graded space.
struct Sdim {
  std::size_t even = 0;
  std::size_t odd = 0;
  friend bool operator==(const Sdim&, const Sdim&) = default;
  Sdim operator+(const Sdim& o) const { return {even + o.even, odd + o.odd}; }
  Sdim operator-(const Sdim& o) const { return {even - o.even, odd - o.odd}; }
  std::string str() const { return std::to_string(even) + "|" + std::to_string(odd); }
  std::size_t total() const { return even + odd; }
  std::size_t& operator[](int parity) { return parity ? odd : even; }
  std::size_t operator[](int parity) const { return parity ? odd : even; }
};

/// Integer weight label (w1, w2) with respect to h1, h2.
struct IntWeight {
  int w1 = 0;
  int w2 = 0;
  friend bool operator==(const IntWeight&, const IntWeight&) = default;
  IntWeight operator+(const IntWeight& o) const { return {w1 + o.w1, w2 + o.w2}; }
};

/// Index positions of the q(2) basis [h1, h2, e, f, H1, H2, E, F].
namespace q2 {
inline constexpr std::size_t h1 = 0, h2 = 1, e = 2, f = 3, H1 = 4, H2 = 5, E = 6, F = 7;
}

/**
 * A finite-dimensional Lie superalgebra given by structure constants in a
 * homogeneous basis: [x_i, x_j] = sum_z c(i, j, z) x_z.
 */
class SuperAlgebra {
 public:
  /// Unvalidated structure-constant input; c is indexed [x][y][z].
  SuperAlgebra(Field F, std::vector<std::string> names, std::vector<int> parities, std::vector<IntWeight> weights,
               std::vector<FieldElem> c);

  const FieldCtx& ctx() const { return *field_; }
  const Field& field() const { return field_; }
  std::size_t dim() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  int parity(std::size_t i) const { return parities_[i]; }
  const IntWeight& weight(std::size_t i) const { return weights_[i]; }
  const FieldElem& c(std::size_t x, std::size_t y, std::size_t z) const { return c_[(x * dim() + y) * dim() + z]; }
  FieldElem& c_mut(std::size_t x, std::size_t y, std::size_t z) { return c_[(x * dim() + y) * dim() + z]; }
  std::size_t index_of(const std::string& name) const;

  /// Bracket of two coordinate vectors, extended bilinearly from the basis.
  Vec bracket(std::span<const FieldElem> x, std::span<const FieldElem> y) const;
  Vec bracket_basis(std::size_t x, std::size_t y) const;
  Vec unit(std::size_t i) const;

  /// Matrix realization, when the algebra was built from one.
  bool has_realization() const { return !realization_.empty(); }
  const Matrix& realization(std::size_t i) const { return realization_.at(i); }
  /// Matrix of a coordinate vector under the realization.
  Matrix realize(std::span<const FieldElem> x) const;
  /// Coordinates of a matrix in the realization basis; nullopt if it leaves the span.
  std::optional<Vec> expand(const Matrix& m) const;

  /// p-mapping of an even coordinate vector: the p-th matrix power re-expanded.
  Vec p_map(std::span<const FieldElem> x) const;
  /// Precomputed p-map images of the even basis elements (empty entries for odd ones).
  const std::vector<Vec>& p_map_table() const { return p_map_; }

  /// Closed sub-collection of basis elements; throws if brackets leave it.
  SuperAlgebra restrict_to(const std::vector<std::size_t>& idx) const;

  nlohmann::json to_json() const;

 private:
  friend SuperAlgebra build_q2(const Field& F);
  Field field_;
  std::vector<std::string> names_;
  std::vector<int> parities_;
  std::vector<IntWeight> weights_;
  std::vector<FieldElem> c_;
  std::vector<Matrix> realization_;
  std::vector<Vec> p_map_;
};

/// q(2) inside 4x4 matrices; brackets are supercommutators of the matrix units.
SuperAlgebra build_q2(const Field& F);

struct JacobiResult {
  bool ok = true;
  std::optional<std::array<std::size_t, 3>> first_violation;
};

JacobiResult validate_super_jacobi(const SuperAlgebra& alg);
/// c[y][x] = -(-1)^{|x||y|} c[x][y] for all pairs.
bool validate_super_skew(const SuperAlgebra& alg);
/// [g_a, g_b] lands in g_{a+b} for all basis pairs.
bool validate_weights(const SuperAlgebra& alg);
/// [x^[p], y] = ad(x)^p y for even basis x and all basis y.
bool validate_restrictedness(const SuperAlgebra& alg);

/// sdim of g/[g,g].
Sdim abelianization_sdim(const SuperAlgebra& alg);

}  // namespace qcoh

#endif  // QCOH_QSUPER_HPP
