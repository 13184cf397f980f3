#include "qcoh/qsuper.hpp"

#include <stdexcept>

namespace qcoh {

SuperAlgebra::SuperAlgebra(Field F, std::vector<std::string> names, std::vector<int> parities,
                           std::vector<IntWeight> weights, std::vector<FieldElem> c)
    : field_(std::move(F)),
      names_(std::move(names)),
      parities_(std::move(parities)),
      weights_(std::move(weights)),
      c_(std::move(c)) {
  const std::size_t n = names_.size();
  if (parities_.size() != n || weights_.size() != n || c_.size() != n * n * n) {
    throw std::invalid_argument("SuperAlgebra: inconsistent structure data sizes");
  }
  for (int par : parities_) {
    if (par != 0 && par != 1) throw std::invalid_argument("SuperAlgebra: parity must be 0 or 1");
  }
}

std::size_t SuperAlgebra::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  throw std::out_of_range("SuperAlgebra: no basis element named " + name);
}

Vec SuperAlgebra::unit(std::size_t i) const {
  Vec v = zero_vec(ctx(), dim());
  v[i] = ctx().one();
  return v;
}

Vec SuperAlgebra::bracket_basis(std::size_t x, std::size_t y) const {
  Vec v(c_.begin() + (x * dim() + y) * dim(), c_.begin() + (x * dim() + y + 1) * dim());
  return v;
}

Vec SuperAlgebra::bracket(std::span<const FieldElem> x, std::span<const FieldElem> y) const {
  const std::size_t n = dim();
  Vec r = zero_vec(ctx(), n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      const FieldElem s = x[i] * y[j];
      for (std::size_t z = 0; z < n; ++z) {
        if (!c(i, j, z).is_zero()) r[z].add_mul(s, c(i, j, z));
      }
    }
  }
  return r;
}

Matrix SuperAlgebra::realize(std::span<const FieldElem> x) const {
  if (!has_realization()) throw std::logic_error("SuperAlgebra::realize: no matrix realization");
  const std::size_t m = realization_[0].rows();
  Matrix r(ctx(), m, m);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!x[i].is_zero()) r = r + realization_[i].scaled(x[i]);
  }
  return r;
}

std::optional<Vec> SuperAlgebra::expand(const Matrix& target) const {
  if (!has_realization()) throw std::logic_error("SuperAlgebra::expand: no matrix realization");
  const std::size_t n = dim();
  const std::size_t cells = target.rows() * target.cols();
  // Augmented system [B | t] with the flattened basis matrices as columns.
  Matrix aug(ctx(), cells, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix& b = realization_[i];
    for (std::size_t r = 0; r < b.rows(); ++r) {
      for (std::size_t c = 0; c < b.cols(); ++c) aug(r * b.cols() + c, i) = b(r, c);
    }
  }
  for (std::size_t r = 0; r < target.rows(); ++r) {
    for (std::size_t c = 0; c < target.cols(); ++c) aug(r * target.cols() + c, n) = target(r, c);
  }
  RrefResult rr = rref(aug);
  Vec coords = zero_vec(ctx(), n);
  for (std::size_t i = 0; i < rr.rank; ++i) {
    if (rr.pivots[i] == n) return std::nullopt;
    coords[rr.pivots[i]] = rr.form(i, n);
  }
  return coords;
}

Vec SuperAlgebra::p_map(std::span<const FieldElem> x) const {
  for (std::size_t i = 0; i < dim(); ++i) {
    if (parities_[i] == 1 && !x[i].is_zero()) throw std::invalid_argument("p_map: argument is not even");
  }
  auto r = expand(realize(x).pow(ctx().p()));
  if (!r) throw std::logic_error("p_map: p-th power leaves the algebra");
  return *r;
}

SuperAlgebra SuperAlgebra::restrict_to(const std::vector<std::size_t>& idx) const {
  const std::size_t m = idx.size();
  std::vector<std::string> names;
  std::vector<int> par;
  std::vector<IntWeight> wts;
  for (auto i : idx) {
    names.push_back(names_[i]);
    par.push_back(parities_[i]);
    wts.push_back(weights_[i]);
  }
  std::vector<FieldElem> c(m * m * m, ctx().zero());
  std::vector<bool> inside(dim(), false);
  for (auto i : idx) inside[i] = true;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      for (std::size_t z = 0; z < dim(); ++z) {
        const FieldElem& v = this->c(idx[a], idx[b], z);
        if (v.is_zero()) continue;
        if (!inside[z]) throw std::invalid_argument("restrict_to: basis subset is not closed under the bracket");
        for (std::size_t t = 0; t < m; ++t) {
          if (idx[t] == z) c[(a * m + b) * m + t] = v;
        }
      }
    }
  }
  return SuperAlgebra(field_, std::move(names), std::move(par), std::move(wts), std::move(c));
}

nlohmann::json SuperAlgebra::to_json() const {
  nlohmann::json brackets = nlohmann::json::array();
  for (std::size_t x = 0; x < dim(); ++x) {
    for (std::size_t y = 0; y < dim(); ++y) {
      nlohmann::json terms = nlohmann::json::object();
      for (std::size_t z = 0; z < dim(); ++z) {
        if (!c(x, y, z).is_zero()) terms[names_[z]] = c(x, y, z).to_json();
      }
      if (!terms.empty()) brackets.push_back({{"x", names_[x]}, {"y", names_[y]}, {"bracket", terms}});
    }
  }
  nlohmann::json weights = nlohmann::json::array();
  for (const auto& w : weights_) weights.push_back({w.w1, w.w2});
  nlohmann::json pmap = nlohmann::json::object();
  for (std::size_t i = 0; i < p_map_.size(); ++i) {
    if (p_map_[i].empty()) continue;
    nlohmann::json terms = nlohmann::json::object();
    for (std::size_t z = 0; z < dim(); ++z) {
      if (!p_map_[i][z].is_zero()) terms[names_[z]] = p_map_[i][z].to_json();
    }
    pmap[names_[i]] = terms;
  }
  return {{"field", ctx().to_json()}, {"basis", names_},  {"parities", parities_},
          {"weights", weights},       {"brackets", brackets}, {"p_map", pmap}};
}

SuperAlgebra build_q2(const Field& F) {
  if (!F || F->p() < 3) throw std::invalid_argument("build_q2: characteristic must be odd");
  const FieldCtx& K = *F;
  // 1-based matrix units; rows/columns 3, 4 are the dotted indices.
  auto unit = [&](std::size_t i, std::size_t j) {
    Matrix m(K, 4, 4);
    m(i - 1, j - 1) = K.one();
    return m;
  };
  std::vector<Matrix> basis{
      unit(1, 1) + unit(3, 3),  // h1
      unit(2, 2) + unit(4, 4),  // h2
      unit(1, 2) + unit(3, 4),  // e
      unit(2, 1) + unit(4, 3),  // f
      unit(1, 3) + unit(3, 1),  // H1
      unit(2, 4) + unit(4, 2),  // H2
      unit(1, 4) + unit(3, 2),  // E
      unit(2, 3) + unit(4, 1),  // F
  };
  std::vector<std::string> names{"h1", "h2", "e", "f", "H1", "H2", "E", "F"};
  std::vector<int> par{0, 0, 0, 0, 1, 1, 1, 1};
  std::vector<IntWeight> wts{{0, 0}, {0, 0}, {1, -1}, {-1, 1}, {0, 0}, {0, 0}, {1, -1}, {-1, 1}};

  const std::size_t n = basis.size();
  SuperAlgebra alg(F, names, par, wts, std::vector<FieldElem>(n * n * n, K.zero()));
  alg.realization_ = basis;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      Matrix xy = basis[x] * basis[y];
      Matrix yx = basis[y] * basis[x];
      Matrix br = (par[x] && par[y]) ? xy + yx : xy - yx;
      auto coords = alg.expand(br);
      if (!coords) {
        throw std::logic_error("build_q2: supercommutator [" + names[x] + "," + names[y] +
                               "] leaves the span of the basis");
      }
      for (std::size_t z = 0; z < n; ++z) alg.c_mut(x, y, z) = (*coords)[z];
    }
  }
  alg.p_map_.assign(n, Vec{});
  for (std::size_t i = 0; i < n; ++i) {
    if (par[i] == 0) alg.p_map_[i] = alg.p_map(alg.unit(i));
  }
  return alg;
}

static int sign(int e) { return (e & 1) ? -1 : 1; }

JacobiResult validate_super_jacobi(const SuperAlgebra& alg) {
  const std::size_t n = alg.dim();
  const FieldCtx& K = alg.ctx();
  JacobiResult res;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        const int px = alg.parity(x), py = alg.parity(y), pz = alg.parity(z);
        const Vec ux = alg.unit(x), uy = alg.unit(y), uz = alg.unit(z);
        Vec t1 = alg.bracket(ux, alg.bracket_basis(y, z));
        Vec t2 = alg.bracket(uy, alg.bracket_basis(z, x));
        Vec t3 = alg.bracket(uz, alg.bracket_basis(x, y));
        const FieldElem s1 = K.from_int(sign(px * pz)), s2 = K.from_int(sign(py * px)), s3 = K.from_int(sign(pz * py));
        for (std::size_t i = 0; i < n; ++i) {
          if (!(s1 * t1[i] + s2 * t2[i] + s3 * t3[i]).is_zero()) {
            res.ok = false;
            res.first_violation = std::array<std::size_t, 3>{x, y, z};
            return res;
          }
        }
      }
    }
  }
  return res;
}

bool validate_super_skew(const SuperAlgebra& alg) {
  const std::size_t n = alg.dim();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const int s = sign(alg.parity(x) * alg.parity(y));
      for (std::size_t z = 0; z < n; ++z) {
        const FieldElem expect = s > 0 ? -alg.c(x, y, z) : alg.c(x, y, z);
        if (alg.c(y, x, z) != expect) return false;
      }
    }
  }
  return true;
}

bool validate_weights(const SuperAlgebra& alg) {
  const std::size_t n = alg.dim();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const IntWeight target = alg.weight(x) + alg.weight(y);
      for (std::size_t z = 0; z < n; ++z) {
        if (!alg.c(x, y, z).is_zero() && !(alg.weight(z) == target)) return false;
      }
    }
  }
  return true;
}

bool validate_restrictedness(const SuperAlgebra& alg) {
  const std::size_t n = alg.dim();
  const auto& pm = alg.p_map_table();
  if (pm.size() != n) return false;
  for (std::size_t x = 0; x < n; ++x) {
    if (alg.parity(x) != 0) continue;
    for (std::size_t y = 0; y < n; ++y) {
      Vec lhs = alg.bracket(pm[x], alg.unit(y));
      Vec rhs = alg.unit(y);
      for (std::uint32_t i = 0; i < alg.ctx().p(); ++i) rhs = alg.bracket(alg.unit(x), rhs);
      if (lhs != rhs) return false;
    }
  }
  return true;
}

Sdim abelianization_sdim(const SuperAlgebra& alg) {
  const std::size_t n = alg.dim();
  const FieldCtx& K = alg.ctx();
  std::vector<Vec> parts[2];
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      Vec b = alg.bracket_basis(x, y);
      for (int par = 0; par < 2; ++par) {
        Vec proj = zero_vec(K, n);
        for (std::size_t z = 0; z < n; ++z) {
          if (alg.parity(z) == par) proj[z] = b[z];
        }
        if (!is_zero_vec(proj)) parts[par].push_back(std::move(proj));
      }
    }
  }
  Sdim total;
  for (std::size_t z = 0; z < n; ++z) total[alg.parity(z)]++;
  Sdim derived{Subspace::span(K, n, parts[0]).dim(), Subspace::span(K, n, parts[1]).dim()};
  return total - derived;
}

}  // namespace qcoh
