#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "qcoh/repmod.hpp"

namespace qcoh {

std::string to_string(PCharKind k) {
  switch (k) {
    case PCharKind::Zero:
      return "zero";
    case PCharKind::Nilpotent:
      return "nilpotent";
    case PCharKind::Semisimple:
      return "semisimple";
    case PCharKind::Mixed:
      return "mixed";
  }
  return "?";
}

std::string to_string(ModuleKind k) {
  switch (k) {
    case ModuleKind::Verma:
      return "verma";
    case ModuleKind::Simple:
      return "simple";
    case ModuleKind::Quotient:
      return "quotient";
    case ModuleKind::Trivial:
      return "trivial";
    case ModuleKind::Custom:
      return "custom";
  }
  return "?";
}

PChar PChar::semisimple(std::int64_t a, std::int64_t b) { return {PCharKind::Semisimple, a, b}; }

PChar PChar::mixed(std::int64_t a) { return {PCharKind::Mixed, a, a}; }

FieldElem PChar::f_val(const FieldCtx& F) const {
  return (kind == PCharKind::Nilpotent || kind == PCharKind::Mixed) ? F.one() : F.zero();
}

FieldElem PChar::h1_val(const FieldCtx& F) const {
  return (kind == PCharKind::Semisimple || kind == PCharKind::Mixed) ? F.from_int(a) : F.zero();
}

FieldElem PChar::h2_val(const FieldCtx& F) const {
  return (kind == PCharKind::Semisimple || kind == PCharKind::Mixed) ? F.from_int(b) : F.zero();
}

FieldElem PChar::value(const FieldCtx& F, std::span<const FieldElem> x) const {
  return h1_val(F) * x[q2::h1] + h2_val(F) * x[q2::h2] + f_val(F) * x[q2::f];
}

bool PChar::is_zero(std::uint32_t p) const {
  switch (kind) {
    case PCharKind::Zero:
      return true;
    case PCharKind::Semisimple:
      return (a % p + p) % p == 0 && (b % p + p) % p == 0;
    default:
      return false;
  }
}

bool PChar::needs_extension(std::uint32_t p) const {
  if (kind != PCharKind::Semisimple && kind != PCharKind::Mixed) return false;
  return (a % p + p) % p != 0 || (b % p + p) % p != 0;
}

std::string PChar::str() const {
  switch (kind) {
    case PCharKind::Zero:
      return "0";
    case PCharKind::Nilpotent:
      return "nilpotent";
    case PCharKind::Semisimple:
      return "semisimple:" + std::to_string(a) + "," + std::to_string(b);
    case PCharKind::Mixed:
      return "mixed:" + std::to_string(a);
  }
  return "?";
}

std::string PChar::params() const {
  if (kind == PCharKind::Semisimple) return std::to_string(a) + "," + std::to_string(b);
  if (kind == PCharKind::Mixed) return std::to_string(a);
  return "";
}

Weight int_weight(const FieldCtx& F, std::int64_t l1, std::int64_t l2) { return {F.from_int(l1), F.from_int(l2)}; }

bool in_lambda_set(const PChar& chi, const Weight& lam) {
  const FieldCtx& F = lam.l1.ctx();
  const std::uint32_t p = F.p();
  return lam.l1.pow(p) - lam.l1 == chi.h1_val(F).pow(p) && lam.l2.pow(p) - lam.l2 == chi.h2_val(F).pow(p);
}

std::vector<Weight> lambda_set(const PChar& chi, const FieldCtx& F) {
  const std::uint32_t p = F.p();
  const auto r1 = artin_schreier_roots(chi.h1_val(F).pow(p));
  const auto r2 = artin_schreier_roots(chi.h2_val(F).pow(p));
  std::vector<Weight> out;
  for (const auto& x : r1) {
    for (const auto& y : r2) out.push_back({x, y});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Label::str() const {
  std::ostringstream os;
  os << (h2_based ? "[" : "(") << a << "," << j << "," << k << (h2_based ? "]" : ")");
  return os.str();
}

Sdim GModule::sdim() const {
  Sdim s;
  for (int par : parities) s[par]++;
  return s;
}

Vec GModule::unit(std::size_t i) const {
  Vec v = zero_vec(ctx(), dim());
  v[i] = ctx().one();
  return v;
}

std::optional<std::size_t> GModule::index_of(const Label& l) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == l) return i;
  }
  return std::nullopt;
}

Vec GModule::vector_of(const Label& l) const {
  if (from_parent) {
    for (std::size_t i = 0; i < parent_labels.size(); ++i) {
      if (parent_labels[i] == l) {
        Vec u = zero_vec(ctx(), parent_labels.size());
        u[i] = ctx().one();
        return from_parent->project(u);
      }
    }
    return zero_vec(ctx(), dim());
  }
  if (auto i = index_of(l)) return unit(*i);
  return zero_vec(ctx(), dim());
}

int verma_case(const Weight& lam) {
  if ((lam.l1 + lam.l2).is_zero()) return 4;
  if (lam.l1.is_zero()) return 1;
  if (lam.l2.is_zero()) return 2;
  return 3;
}

std::vector<FieldElem> verma_mu_candidates(const Weight& lam) {
  if (verma_case(lam) != 3) return {};
  // mu^2 = -1 when lambda1 = lambda2; mu*lambda2 + lambda1/mu = 0 otherwise. Both read mu^2 = -lambda1/lambda2.
  return square_roots(-(lam.l1 / lam.l2));
}

namespace {

// Accumulates action matrices together with the formula that produced each column.
class TableBuilder {
 public:
  TableBuilder(const GModule& m, std::uint32_t p) : m_(m), p_(p) {
    const std::size_t n = m.dim();
    actions_.assign(8, Matrix(m.ctx(), n, n));
    formulas_.assign(8, std::vector<std::set<std::string>>(n));
  }

  // Adds coef * target to generator x applied to basis vector src.
  void add(std::size_t x, std::size_t src, const FieldElem& coef, int a, int j, int k, const char* formula) {
    formulas_[x][src].insert(formula);
    if (coef.is_zero()) return;
    Label t{((a % static_cast<int>(p_)) + static_cast<int>(p_)) % static_cast<int>(p_), j, k,
            m_.labels[src].h2_based};
    auto idx = m_.index_of(t);
    if (!idx) {
      throw ModuleError(std::string("formula ") + formula + " maps " + m_.labels[src].str() + " to " + t.str() +
                        ", which is not a basis vector");
    }
    actions_[x](*idx, src) += coef;
  }

  std::vector<Matrix> take() { return std::move(actions_); }
  const std::vector<std::vector<std::set<std::string>>>& formulas() const { return formulas_; }

 private:
  const GModule& m_;
  std::uint32_t p_;
  std::vector<Matrix> actions_;
  std::vector<std::vector<std::set<std::string>>> formulas_;
};

int sgn(int e) { return (e & 1) ? -1 : 1; }

}  // namespace

GModule build_verma(std::shared_ptr<const SuperAlgebra> alg, const PChar& chi, const Weight& lam, int mu_choice) {
  const FieldCtx& F = alg->ctx();
  const std::uint32_t p = F.p();
  if (&lam.l1.ctx() != &F || &lam.l2.ctx() != &F) {
    throw std::invalid_argument("build_verma: weight and algebra live over different fields");
  }
  if (!in_lambda_set(chi, lam)) {
    throw std::invalid_argument("build_verma: lambda = " + lam.str() + " is not in Lambda_chi for chi = " + chi.str());
  }

  GModule m;
  m.alg = alg;
  m.kind = ModuleKind::Verma;
  m.pchar = chi;
  m.lam = lam;
  m.verma_case = verma_case(lam);
  const int vc = m.verma_case;
  const bool zero_weight = lam.is_zero();
  const bool h2_based = vc == 1;

  FieldElem mu = F.one();
  if (vc == 3) {
    auto roots = verma_mu_candidates(lam);
    if (roots.empty()) {
      throw std::invalid_argument("build_verma: no mu with mu^2 = -lambda1/lambda2 in " + F.describe() +
                                  " for lambda = " + lam.str());
    }
    if (mu_choice < 0 || mu_choice >= static_cast<int>(roots.size())) {
      throw std::invalid_argument("build_verma: mu_choice out of range");
    }
    mu = roots[mu_choice];
    m.mu = mu;
  }

  for (int a = 0; a < static_cast<int>(p); ++a) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < (zero_weight ? 1 : 2); ++k) {
        m.labels.push_back({a, j, k, h2_based});
        m.parities.push_back((j + k) % 2);
        m.weights.push_back({lam.l1 - F.from_int(a + j), lam.l2 + F.from_int(a + j)});
      }
    }
  }

  const FieldElem chi_f_p = chi.f_val(F).pow(p);
  const FieldElem l1 = lam.l1, l2 = lam.l2;
  const FieldElem one = F.one();
  auto I = [&](std::int64_t v) { return F.from_int(v); };
  auto d = [&](bool b) { return b ? one : F.zero(); };
  TableBuilder tb(m, p);

  for (std::size_t s = 0; s < m.dim(); ++s) {
    const int a = m.labels[s].a, j = m.labels[s].j, k = m.labels[s].k;
    const int nk = k == 0 ? 1 : 0;
    const FieldElem A = I(a);
    const bool last = a == static_cast<int>(p) - 1;

    tb.add(q2::h1, s, m.weights[s].l1, a, j, k, "h_i diagonal");
    tb.add(q2::h2, s, m.weights[s].l2, a, j, k, "h_i diagonal");
    if (j == 0) tb.add(q2::F, s, one, a, 1, k, "F");
    if (!last) {
      tb.add(q2::f, s, one, a + 1, j, k, "f");
    } else {
      tb.add(q2::f, s, chi_f_p, 0, j, k, "f");
    }

    // Shared by the H_i(a,1,k) formulas of every case.
    auto raise_to_even = [&](std::size_t Hi, const char* id) {
      if (!last) {
        tb.add(Hi, s, one, a + 1, 0, k, id);
      } else {
        tb.add(Hi, s, chi_f_p, 0, 0, k, id);
      }
    };

    if (vc == 1) {
      const FieldElem t = d(k == 0) + l2 * d(k == 1);
      for (int i = 1; i <= 2; ++i) {
        const std::size_t Hi = i == 1 ? q2::H1 : q2::H2;
        if (j == 0) {
          tb.add(Hi, s, I(sgn(i)) * A, a - 1, 1, k, "case1:H_i[a,0,k]");
          if (i == 2) tb.add(Hi, s, t, a, 0, nk, "case1:H_i[a,0,k]");
        } else {
          raise_to_even(Hi, "case1:H_i[a,1,k]");
          if (i == 2) tb.add(Hi, s, -t, a, 1, nk, "case1:H_i[a,1,k]");
        }
      }
      if (j == 1) {
        tb.add(q2::E, s, A * t, a - 1, 1, nk, "case1:E[a,1,k]");
        tb.add(q2::E, s, l2, a, 0, k, "case1:E[a,1,k]");
      } else {
        tb.add(q2::E, s, -(A * t), a - 1, 0, nk, "case1:E[a,0,k]");
        tb.add(q2::E, s, -(A * I(a - 1)), a - 2, 1, k, "case1:E[a,0,k]");
      }
      tb.add(q2::e, s, -(A * (A - I(sgn(j)) + l2)), a - 1, j, k, "case1:e[a,j,k]");
      if (j == 1 && k == 0) tb.add(q2::e, s, -one, a, 0, 1, "case1:e[a,j,k]");
      if (j == 1 && k == 1) tb.add(q2::e, s, -l2, a, 0, 0, "case1:e[a,j,k]");
    } else if (vc == 2) {
      const FieldElem t = d(k == 0) + l1 * d(k == 1);
      for (int i = 1; i <= 2; ++i) {
        const std::size_t Hi = i == 1 ? q2::H1 : q2::H2;
        if (j == 0) {
          tb.add(Hi, s, I(sgn(i)) * A, a - 1, 1, k, "case2:H_i(a,0,k)");
          if (i == 1) tb.add(Hi, s, t, a, 0, nk, "case2:H_i(a,0,k)");
        } else {
          raise_to_even(Hi, "case2:H_i(a,1,k)");
          if (i == 1) tb.add(Hi, s, -t, a, 1, nk, "case2:H_i(a,1,k)");
        }
      }
      if (j == 1) {
        tb.add(q2::E, s, -(A * t), a - 1, 1, nk, "case2:E(a,1,k)");
        tb.add(q2::E, s, l1, a, 0, k, "case2:E(a,1,k)");
      } else {
        tb.add(q2::E, s, A * t, a - 1, 0, nk, "case2:E(a,0,k)");
        tb.add(q2::E, s, -(A * I(a - 1)), a - 2, 1, k, "case2:E(a,0,k)");
      }
      tb.add(q2::e, s, A * (l1 - A + I(sgn(j))), a - 1, j, k, "case2:e(a,j,k)");
      if (j == 1 && k == 0) tb.add(q2::e, s, one, a, 0, 1, "case2:e(a,j,k)");
      if (j == 1 && k == 1) tb.add(q2::e, s, l1, a, 0, 0, "case2:e(a,j,k)");
    } else if (vc == 3) {
      const FieldElem mu_inv = mu.inverse();
      const FieldElem c = d(k == 0) * (one + mu_inv) + (l1 + mu * l2) * d(k == 1);
      const FieldElem t1 = d(k == 0) + l1 * d(k == 1);
      const FieldElem t2 = d(k == 0) * mu_inv + mu * l2 * d(k == 1);
      if (j == 1) {
        tb.add(q2::E, s, -(A * c), a - 1, 1, nk, "case3:E(a,1,k)");
        tb.add(q2::E, s, l1 + l2, a, 0, k, "case3:E(a,1,k)");
      } else {
        tb.add(q2::E, s, A * c, a - 1, 0, nk, "case3:E(a,0,k)");
        tb.add(q2::E, s, -(A * I(a - 1)), a - 2, 1, k, "case3:E(a,0,k)");
      }
      if (j == 1 && k == 1) tb.add(q2::e, s, l1 + mu * l2, a, 0, 0, "case3:e(a,j,k)");
      if (j == 1 && k == 0) tb.add(q2::e, s, one + mu_inv, a, 0, 1, "case3:e(a,j,k)");
      tb.add(q2::e, s, A * (l1 - l2 - A + I(sgn(j))), a - 1, j, k, "case3:e(a,j,k)");
      for (int i = 1; i <= 2; ++i) {
        const std::size_t Hi = i == 1 ? q2::H1 : q2::H2;
        if (j == 0) {
          tb.add(Hi, s, I(sgn(i)) * A, a - 1, 1, k, "case3:H_i(a,0,k)");
          if (i == 1) tb.add(Hi, s, t1, a, 0, nk, "case3:H_i(a,0,k)");
          if (i == 2) tb.add(Hi, s, -t2, a, 0, nk, "case3:H_i(a,0,k)");
        } else {
          raise_to_even(Hi, "case3:H_i(a,1,k)");
          if (i == 1) tb.add(Hi, s, -t1, a, 1, nk, "case3:H_i(a,1,k)");
          if (i == 2) tb.add(Hi, s, t2, a, 1, nk, "case3:H_i(a,1,k)");
        }
      }
    } else if (!zero_weight) {
      // lambda = (l1, -l1), l1 != 0.
      tb.add(q2::e, s, A * (I(2) * l1 - A + I(sgn(j))), a - 1, j, k, "case4:e(a,j,k)");
      if (j == 1 && k == 0) tb.add(q2::e, s, I(2), a, 0, 1, "case4:e(a,j,k)");
      for (int i = 1; i <= 2; ++i) {
        const std::size_t Hi = i == 1 ? q2::H1 : q2::H2;
        if (j == 1) {
          tb.add(Hi, s, I(sgn(i)) * d(k == 0) - l1 * d(k == 1), a, 1, nk, "case4:H_i(a,1,k)");
          raise_to_even(Hi, "case4:H_i(a,1,k)");
        } else {
          tb.add(Hi, s, I(sgn(i + 1)) * d(k == 0) + l1 * d(k == 1), a, 0, nk, "case4:H_i(a,0,k)");
          tb.add(Hi, s, I(sgn(i)) * A, a - 1, 1, k, "case4:H_i(a,0,k)");
        }
      }
      if (!(j == 1 && k == 1)) {
        if (k == 0) tb.add(q2::E, s, I(sgn(j)) * I(2) * A, a - 1, j, 1, "case4:E(a,j,k)");
        if (j == 0) tb.add(q2::E, s, -(A * I(a - 1)), a - 2, 1, k, "case4:E(a,j,k)");
      }
    } else {
      // lambda = 0.
      tb.add(q2::e, s, -(A * (A - I(sgn(j)))), a - 1, j, 0, "case4,lambda=0:e(a,j,0)");
      for (std::size_t Hi : {q2::H1, q2::H2}) {
        const int i = Hi == q2::H1 ? 1 : 2;
        if (j == 1) {
          raise_to_even(Hi, "case4,lambda=0:H_i(a,1,0)");
        } else {
          tb.add(Hi, s, I(sgn(i)) * A, a - 1, 1, 0, "case4,lambda=0:H_i(a,0,0)");
        }
      }
      if (j == 0) tb.add(q2::E, s, -(A * I(a - 1)), a - 2, 1, 0, "case4,lambda=0:E(a,j,0)");
    }
  }

  const auto formulas = tb.formulas();
  m.actions = tb.take();

  CheckResult ax = check_module_axiom(m);
  if (!ax.ok) {
    // Name the formulas feeding the failing pair.
    std::ostringstream os;
    os << "module axiom fails for Z_" << chi.str() << lam.str() << " (case " << vc << "): " << ax.detail;
    if (ax.where) {
      const auto [x, y, c] = *ax.where;
      std::set<std::string> ids = formulas[x][c];
      ids.insert(formulas[y][c].begin(), formulas[y][c].end());
      os << "; formulas involved:";
      for (const auto& id : ids) os << " " << id;
    }
    throw ModuleError(os.str());
  }
  return m;
}

GModule trivial_module(std::shared_ptr<const SuperAlgebra> alg, Sdim sdim) {
  GModule m;
  const FieldCtx& F = alg->ctx();
  m.alg = alg;
  m.kind = ModuleKind::Trivial;
  const std::size_t n = sdim.total();
  for (std::size_t i = 0; i < n; ++i) {
    m.labels.push_back({static_cast<int>(i), 0, 0, false});
    m.parities.push_back(i < sdim.even ? 0 : 1);
    m.weights.push_back({F.zero(), F.zero()});
  }
  m.actions.assign(alg->dim(), Matrix(F, n, n));
  return m;
}

CheckResult check_module_axiom(const GModule& m) {
  const SuperAlgebra& g = *m.alg;
  const std::size_t n = g.dim();
  const FieldCtx& F = m.ctx();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      Matrix lhs(F, m.dim(), m.dim());
      for (std::size_t z = 0; z < n; ++z) {
        if (!g.c(x, y, z).is_zero()) lhs = lhs + m.actions[z].scaled(g.c(x, y, z));
      }
      const Matrix xy = m.actions[x] * m.actions[y];
      const Matrix yx = m.actions[y] * m.actions[x];
      const Matrix rhs = (g.parity(x) && g.parity(y)) ? xy + yx : xy - yx;
      if (!(lhs == rhs)) {
        for (std::size_t r = 0; r < m.dim(); ++r) {
          for (std::size_t c = 0; c < m.dim(); ++c) {
            if (lhs(r, c) != rhs(r, c)) {
              std::ostringstream os;
              os << "[" << g.name(x) << "," << g.name(y) << "] acting on " << m.labels[c].str()
                 << ": component " << m.labels[r].str() << " is " << lhs(r, c).str() << " via the bracket but "
                 << rhs(r, c).str() << " via the actions";
              return {false, os.str(), std::array<std::size_t, 3>{x, y, c}};
            }
          }
        }
      }
    }
  }
  return {};
}

CheckResult check_grading(const GModule& m) {
  const SuperAlgebra& g = *m.alg;
  const FieldCtx& F = m.ctx();
  for (std::size_t x = 0; x < g.dim(); ++x) {
    const FieldElem w1 = F.from_int(g.weight(x).w1), w2 = F.from_int(g.weight(x).w2);
    for (std::size_t c = 0; c < m.dim(); ++c) {
      for (std::size_t r = 0; r < m.dim(); ++r) {
        if (m.actions[x](r, c).is_zero()) continue;
        const bool par_ok = m.parities[r] == (m.parities[c] + g.parity(x)) % 2;
        const bool wt_ok = m.weights[r].l1 == m.weights[c].l1 + w1 && m.weights[r].l2 == m.weights[c].l2 + w2;
        if (!par_ok || !wt_ok) {
          return {false, g.name(x) + " maps " + m.labels[c].str() + " to " + m.labels[r].str() +
                             (par_ok ? " with the wrong weight" : " with the wrong parity"), std::nullopt};
        }
      }
    }
  }
  return {};
}

CheckResult validate_p_character(const GModule& m, int random_samples, std::uint64_t seed) {
  const SuperAlgebra& g = *m.alg;
  const FieldCtx& F = m.ctx();
  const std::uint32_t p = F.p();
  const PChar chi = m.pchar.value_or(PChar::zero());
  std::vector<std::size_t> even;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    if (g.parity(i) == 0) even.push_back(i);
  }
  auto check = [&](const Vec& x) -> CheckResult {
    Matrix Ax(F, m.dim(), m.dim());
    for (std::size_t i = 0; i < g.dim(); ++i) {
      if (!x[i].is_zero()) Ax = Ax + m.actions[i].scaled(x[i]);
    }
    const Vec xp = g.has_realization() ? g.p_map(x) : zero_vec(F, g.dim());
    Matrix Axp(F, m.dim(), m.dim());
    for (std::size_t i = 0; i < g.dim(); ++i) {
      if (!xp[i].is_zero()) Axp = Axp + m.actions[i].scaled(xp[i]);
    }
    const Matrix lhs = Ax.pow(p) - Axp;
    const Matrix rhs = Matrix::identity(F, m.dim()).scaled(chi.value(F, x).pow(p));
    if (lhs == rhs) return {};
    std::ostringstream os;
    os << "x^p - x^[p] does not act as chi(x)^p for x = (";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i].str();
    os << ")";
    return {false, os.str(), std::nullopt};
  };
  for (auto i : even) {
    if (auto r = check(g.unit(i)); !r.ok) return r;
  }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < random_samples; ++t) {
    Vec x = zero_vec(F, g.dim());
    for (auto i : even) x[i] = F.element(rng() % F.order());
    if (auto r = check(x); !r.ok) return r;
  }
  return {};
}

}  // namespace qcoh
