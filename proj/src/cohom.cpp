#include "qcoh/cohom.hpp"

#include <algorithm>

namespace qcoh {

namespace {

int sign_exp(int e) { return (e & 1) ? -1 : 1; }

Weight alg_weight(const GModule& m, std::size_t x) {
  const IntWeight& w = m.alg->weight(x);
  return {m.ctx().from_int(w.w1), m.ctx().from_int(w.w2)};
}

bool admissible(const GModule& m, int parity, bool weight_only, std::size_t x, std::size_t i) {
  if (m.parities[i] != (m.alg->parity(x) + parity) % 2) return false;
  return !weight_only || m.weights[i] == alg_weight(m, x);
}

Sdim sdim_pair(const std::optional<Subspace>& even, const std::optional<Subspace>& odd) {
  return {even ? even->dim() : 0, odd ? odd->dim() : 0};
}

nlohmann::json pair_json(const std::array<std::optional<Subspace>, 2>& s) {
  nlohmann::json j = nlohmann::json::object();
  if (s[0]) j["even"] = s[0]->to_json();
  if (s[1]) j["odd"] = s[1]->to_json();
  return j;
}

nlohmann::json sdim_json(const Sdim& s) { return {s.even, s.odd}; }

Weight as_weight(const FieldCtx& F, std::int64_t a, std::int64_t b) { return {F.from_int(a), F.from_int(b)}; }

bool chi_is_zero(const PChar& chi, const FieldCtx& F) { return chi.is_zero(F.p()); }

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::Full:
      return "full";
    case Method::Weight:
      return "weight";
    case Method::Both:
      return "both";
  }
  return "?";
}

Vec flatten(const Cocycle& c) {
  Vec out;
  for (const auto& v : c.values) out.insert(out.end(), v.begin(), v.end());
  return out;
}

Cocycle unflatten(const GModule& m, int parity, std::span<const FieldElem> v) {
  Cocycle c{parity, {}};
  const std::size_t n = m.dim();
  for (std::size_t x = 0; x < m.alg->dim(); ++x) c.values.emplace_back(v.begin() + x * n, v.begin() + (x + 1) * n);
  return c;
}

Cocycle zero_cochain(const GModule& m, int parity) {
  return {parity, std::vector<Vec>(m.alg->dim(), zero_vec(m.ctx(), m.dim()))};
}

Cocycle inner_derivation(const GModule& m, const Vec& v, int parity) {
  Cocycle c{parity, {}};
  for (std::size_t x = 0; x < m.alg->dim(); ++x) {
    Vec w = m.actions[x] * v;
    if (m.alg->parity(x) * parity % 2) {
      for (auto& e : w) e = -e;
    }
    c.values.push_back(std::move(w));
  }
  return c;
}

H0Result h0(const GModule& m) {
  const std::size_t n = m.dim();
  Matrix stacked(m.ctx(), 0, n);
  for (const auto& A : m.actions) stacked.append_rows(A);
  Subspace k = kernel_basis(stacked);
  Sdim s;
  for (auto piv : k.pivots()) s[m.parities[piv]]++;
  return {s, k};
}

Subspace der_space(const GModule& m, int parity, bool weight_only) {
  const SuperAlgebra& g = *m.alg;
  const FieldCtx& F = m.ctx();
  const std::size_t n = m.dim(), N = g.dim() * n;
  std::vector<long> col(N, -1);
  std::vector<std::size_t> cols;
  for (std::size_t x = 0; x < g.dim(); ++x) {
    for (std::size_t i = 0; i < n; ++i) {
      if (admissible(m, parity, weight_only, x, i)) {
        col[x * n + i] = static_cast<long>(cols.size());
        cols.push_back(x * n + i);
      }
    }
  }
  Matrix sys(F, 0, cols.size());
  Vec row = zero_vec(F, cols.size());
  for (std::size_t x = 0; x < g.dim(); ++x) {
    for (std::size_t y = x; y < g.dim(); ++y) {
      if (x == y && g.parity(x) == 0) continue;
      const int s1 = sign_exp(parity * g.parity(x));
      const int s2 = sign_exp(g.parity(y) * (parity + g.parity(x)));
      for (std::size_t r = 0; r < n; ++r) {
        std::fill(row.begin(), row.end(), F.zero());
        bool any = false;
        for (std::size_t z = 0; z < g.dim(); ++z) {
          const FieldElem& c = g.c(x, y, z);
          if (c.is_zero() || col[z * n + r] < 0) continue;
          row[col[z * n + r]] += c;
          any = true;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const FieldElem& ax = m.actions[x](r, i);
          if (!ax.is_zero() && col[y * n + i] >= 0) {
            if (s1 > 0) {
              row[col[y * n + i]] -= ax;
            } else {
              row[col[y * n + i]] += ax;
            }
            any = true;
          }
          const FieldElem& ay = m.actions[y](r, i);
          if (!ay.is_zero() && col[x * n + i] >= 0) {
            if (s2 > 0) {
              row[col[x * n + i]] += ay;
            } else {
              row[col[x * n + i]] -= ay;
            }
            any = true;
          }
        }
        if (any && !is_zero_vec(row)) sys.append_row(row);
      }
    }
  }
  const Subspace k = kernel_basis(sys);
  std::vector<Vec> full;
  for (std::size_t b = 0; b < k.dim(); ++b) {
    Vec v = zero_vec(F, N);
    const Vec kb = k.vector(b);
    for (std::size_t c = 0; c < cols.size(); ++c) v[cols[c]] = kb[c];
    full.push_back(std::move(v));
  }
  return Subspace::span(F, N, full);
}

Subspace ider_space(const GModule& m, int parity) {
  std::vector<Vec> vecs;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (m.parities[i] == parity) vecs.push_back(flatten(inner_derivation(m, m.unit(i), parity)));
  }
  return Subspace::span(m.ctx(), m.alg->dim() * m.dim(), vecs);
}

H1Result h1(const GModule& m, Method method) {
  H1Result r;
  r.method = method;
  const bool full = method != Method::Weight, weight = method != Method::Full;
  std::array<std::optional<Subspace>, 2> cap;
  for (int par = 0; par < 2; ++par) {
    r.ider_basis[par] = ider_space(m, par);
    if (full) r.der_basis[par] = der_space(m, par, false);
    if (weight) {
      r.der0_basis[par] = der_space(m, par, true);
      cap[par] = intersect(*r.der0_basis[par], *r.ider_basis[par]);
    }
  }
  r.ider = sdim_pair(r.ider_basis[0], r.ider_basis[1]);
  r.der = sdim_pair(r.der_basis[0], r.der_basis[1]);
  r.der0 = sdim_pair(r.der0_basis[0], r.der0_basis[1]);
  r.der0_cap_ider = sdim_pair(cap[0], cap[1]);
  const Sdim h_full = r.der - r.ider;
  const Sdim h_weight = r.der0 - r.der0_cap_ider;
  r.h1 = full ? h_full : h_weight;
  if (full && weight && !(h_full == h_weight)) {
    nlohmann::json cert = h1_to_json(r);
    cert["module"] = module_to_json(m);
    throw MethodDisagreement("H^1 methods disagree: full " + h_full.str() + ", weight " + h_weight.str(),
                             std::move(cert));
  }
  return r;
}

CheckResult check_structural_identities(const GModule& m, const H0Result& h0r, const H1Result& h1r) {
  const std::size_t n = m.dim();
  if (!(h1r.ider + h0r.sdim == m.sdim())) {
    return {false, "sdim Ider + sdim H0 = " + (h1r.ider + h0r.sdim).str() + " != sdim M = " + m.sdim().str(),
            std::nullopt};
  }
  for (int par = 0; par < 2; ++par) {
    const std::string tag = par ? " (odd)" : " (even)";
    if (h1r.der_basis[par] && !h1r.der_basis[par]->contains(*h1r.ider_basis[par])) {
      return {false, "Ider is not contained in Der" + tag, std::nullopt};
    }
    if (h1r.der_basis[par] && h1r.der0_basis[par] &&
        !(sum(*h1r.der0_basis[par], *h1r.ider_basis[par]) == *h1r.der_basis[par])) {
      return {false, "Der != Der0 + Ider" + tag, std::nullopt};
    }
    if (h1r.der0_basis[par]) {
      const Subspace& d0 = *h1r.der0_basis[par];
      for (std::size_t b = 0; b < d0.dim(); ++b) {
        const Vec v = d0.vector(b);
        for (std::size_t h : {q2::h1, q2::h2}) {
          std::span<const FieldElem> seg(v.data() + h * n, n);
          if (!h0r.basis.contains(seg)) {
            return {false, "a weight-derivation sends " + m.alg->name(h) + " outside H0" + tag, std::nullopt};
          }
        }
      }
    }
  }
  return {};
}

bool h1_vanishes_by_weights(const Weight& lam) {
  const FieldElem s = lam.l1 + lam.l2;
  return !s.is_zero() || !lam.l1.in_prime_field();
}

Sdim trivial_h1_oracle(const SuperAlgebra& alg, Sdim module_sdim) {
  const Sdim ab = abelianization_sdim(alg);
  return {ab.even * module_sdim.even + ab.odd * module_sdim.odd, ab.even * module_sdim.odd + ab.odd * module_sdim.even};
}

Classification classify_cochain(const GModule& m, const Cocycle& c) {
  const SuperAlgebra& g = *m.alg;
  const FieldCtx& F = m.ctx();
  Classification out;
  for (std::size_t x = 0; x < g.dim(); ++x) {
    for (std::size_t i = 0; i < m.dim(); ++i) {
      if (c.values[x][i].is_zero()) continue;
      if (m.parities[i] != (g.parity(x) + c.parity) % 2) out.parity_ok = false;
    }
  }
  out.is_weight_map = true;
  for (std::size_t x = 0; x < g.dim(); ++x) {
    for (std::size_t i = 0; i < m.dim(); ++i) {
      if (!c.values[x][i].is_zero() && !(m.weights[i] == alg_weight(m, x))) out.is_weight_map = false;
    }
  }
  out.is_derivation = out.parity_ok;
  for (std::size_t x = 0; x < g.dim() && out.is_derivation; ++x) {
    for (std::size_t y = 0; y < g.dim() && out.is_derivation; ++y) {
      Vec lhs = zero_vec(F, m.dim());
      for (std::size_t z = 0; z < g.dim(); ++z) {
        const FieldElem& k = g.c(x, y, z);
        if (k.is_zero()) continue;
        for (std::size_t i = 0; i < m.dim(); ++i) lhs[i].add_mul(k, c.values[z][i]);
      }
      const Vec a = m.actions[x] * c.values[y];
      const Vec b = m.actions[y] * c.values[x];
      const int s1 = sign_exp(c.parity * g.parity(x));
      const int s2 = sign_exp(g.parity(y) * (c.parity + g.parity(x)));
      for (std::size_t i = 0; i < m.dim(); ++i) {
        FieldElem rhs = s1 > 0 ? a[i] : -a[i];
        rhs = s2 > 0 ? rhs - b[i] : rhs + b[i];
        if (lhs[i] != rhs) {
          out.is_derivation = false;
          out.first_failure = "(" + g.name(x) + "," + g.name(y) + ")";
          break;
        }
      }
    }
  }
  out.is_inner = out.parity_ok && ider_space(m, c.parity).contains(flatten(c));
  return out;
}

bool are_cohomologous(const GModule& m, const Cocycle& a, const Cocycle& b) {
  if (a.parity != b.parity) return false;
  Cocycle d = a;
  for (std::size_t x = 0; x < d.values.size(); ++x) {
    for (std::size_t i = 0; i < d.values[x].size(); ++i) d.values[x][i] -= b.values[x][i];
  }
  return classify_cochain(m, d).is_inner;
}

namespace {

enum class Spot { None, ZeroVerma, ZeroSimple, SimpleMinus, SimplePlus };

// Which named-cochain family a module carries: Z_0(0), L_0(0), L_0((p-1,1)), L_0((1,p-1)).
Spot spot_of(const GModule& m) {
  if (!m.pchar || !m.lam) return Spot::None;
  const FieldCtx& F = m.ctx();
  if (!chi_is_zero(*m.pchar, F)) return Spot::None;
  const std::int64_t p = F.p();
  const Weight& lam = *m.lam;
  if (m.kind == ModuleKind::Verma) return lam.is_zero() ? Spot::ZeroVerma : Spot::None;
  if (m.kind != ModuleKind::Simple) return Spot::None;
  if (lam.is_zero()) return Spot::ZeroSimple;
  if (lam == as_weight(F, p - 1, 1)) return Spot::SimpleMinus;
  if (lam == as_weight(F, 1, p - 1)) return Spot::SimplePlus;
  return Spot::None;
}

Vec scaled(const Vec& v, const FieldElem& s) {
  Vec out = v;
  for (auto& e : out) e *= s;
  return out;
}

}  // namespace

std::vector<std::string> named_cochains_for(const GModule& m) {
  switch (spot_of(m)) {
    case Spot::ZeroVerma:
      return {"phi", "psi"};
    case Spot::ZeroSimple:
      return {"phi1", "phi2", "psi1", "psi2"};
    case Spot::SimpleMinus:
      return {"phi3", "phi4"};
    case Spot::SimplePlus:
      return {"psi3"};
    default:
      return {};
  }
}

Cocycle named_cochain(const GModule& m, const std::string& name) {
  const auto names = named_cochains_for(m);
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw std::invalid_argument("named cochain " + name + " is not defined on this module");
  }
  const FieldCtx& F = m.ctx();
  const int p = static_cast<int>(F.p());
  auto v = [&](int a, int j, int k) { return m.vector_of({((a % p) + p) % p, j, k, false}); };
  const FieldElem neg = -F.one();
  if (name == "phi") {
    Cocycle c = zero_cochain(m, 0);
    c.values[q2::H1] = c.values[q2::H2] = v(p - 1, 1, 0);
    return c;
  }
  if (name == "psi") {
    Cocycle c = zero_cochain(m, 1);
    c.values[q2::H1] = c.values[q2::H2] = scaled(v(0, 0, 0), neg);
    c.values[q2::f] = v(0, 1, 0);
    return c;
  }
  if (name == "phi1" || name == "phi2") {
    Cocycle c = zero_cochain(m, 0);
    c.values[name == "phi1" ? q2::h1 : q2::h2] = v(0, 0, 0);
    return c;
  }
  if (name == "psi1" || name == "psi2") {
    Cocycle c = zero_cochain(m, 1);
    c.values[name == "psi1" ? q2::H1 : q2::H2] = v(0, 0, 0);
    return c;
  }
  if (name == "phi3") {
    Cocycle c = zero_cochain(m, 0);
    c.values[q2::f] = scaled(v(0, 0, 0), neg);
    c.values[q2::F] = v(0, 0, 1);
    return c;
  }
  if (name == "phi4") {
    Cocycle c = zero_cochain(m, 0);
    c.values[q2::e] = v(p - 2, 0, 0);
    c.values[q2::E] = v(p - 3, 1, 0);
    return c;
  }
  // psi3
  Cocycle c = zero_cochain(m, 1);
  c.values[q2::E] = scaled(v(0, 0, 0), F.from_int(-2));
  c.values[q2::F] = v(2, 0, 0);
  c.values[q2::H1] = v(1, 0, 0);
  c.values[q2::H2] = scaled(v(1, 0, 0), neg);
  return c;
}

std::optional<Sdim> paper_h0_verma(const PChar& chi, const Weight& lam) {
  const FieldCtx& F = lam.l1.ctx();
  return (lam.is_zero() && chi_is_zero(chi, F)) ? Sdim{0, 1} : Sdim{0, 0};
}

std::optional<Sdim> paper_h1_verma(const PChar& chi, const Weight& lam) {
  const FieldCtx& F = lam.l1.ctx();
  return (lam.is_zero() && chi_is_zero(chi, F)) ? Sdim{1, 1} : Sdim{0, 0};
}

std::optional<Sdim> paper_h1_simple(const PChar& chi, const Weight& lam) {
  const FieldCtx& F = lam.l1.ctx();
  const std::int64_t p = F.p();
  if (chi_is_zero(chi, F)) {
    if (lam.is_zero()) return Sdim{2, 2};
    if (lam == as_weight(F, 1, p - 1)) return Sdim{0, 1};
    if (lam == as_weight(F, p - 1, 1)) return Sdim{2, 0};
  }
  return Sdim{0, 0};
}

std::string paper_target_branch(const PChar& chi, const Weight& lam, bool simple) {
  const FieldCtx& F = lam.l1.ctx();
  const std::int64_t p = F.p();
  if (h1_vanishes_by_weights(lam)) return simple ? "L:no target weights" : "Z:no target weights";
  if (!simple) return lam.is_zero() ? "Z:lambda=0" : "Z:lambda1=-lambda2 in F_p*";
  const bool zero = chi_is_zero(chi, F);
  if (lam.is_zero()) {
    if (zero) return "L:lambda=chi=0";
    if (chi.kind == PCharKind::Nilpotent) return "L:lambda=0, nilpotent (L=Z)";
    return "";
  }
  const std::int64_t l1 = lam.l1.to_uint();
  if (chi.kind == PCharKind::Nilpotent) return "L:nilpotent, lambda1!=0";
  if (!zero) return "";
  if (l1 == 1) return "L:lambda1=1";
  if (l1 == p - 1) return "L:lambda1=p-1";
  if (p >= 5 && 2 <= l1 && l1 <= (p - 1) / 2) return "L:2<=lambda1<=(p-1)/2";
  if (p >= 5 && (p + 1) / 2 <= l1 && l1 <= p - 2) return "L:(p+1)/2<=lambda1<=p-2";
  return "";
}

std::optional<std::map<TargetWeight, Sdim>> paper_target_weights(const PChar& chi, const Weight& lam, bool simple) {
  const std::string b = paper_target_branch(chi, lam, simple);
  auto all = [](Sdim s) {
    return std::map<TargetWeight, Sdim>{{TargetWeight::Zero, s}, {TargetWeight::Plus, s}, {TargetWeight::Minus, s}};
  };
  if (b.empty()) return std::nullopt;
  if (b == "Z:no target weights" || b == "L:no target weights" || b == "L:(p+1)/2<=lambda1<=p-2") return all({0, 0});
  if (b == "Z:lambda1=-lambda2 in F_p*") return all({2, 2});
  if (b == "Z:lambda=0" || b == "L:lambda=0, nilpotent (L=Z)") return all({1, 1});
  if (b == "L:lambda=chi=0") {
    return std::map<TargetWeight, Sdim>{
        {TargetWeight::Zero, {1, 0}}, {TargetWeight::Plus, {0, 0}}, {TargetWeight::Minus, {0, 0}}};
  }
  if (b == "L:lambda1=p-1") {
    return std::map<TargetWeight, Sdim>{
        {TargetWeight::Zero, {0, 0}}, {TargetWeight::Plus, {1, 1}}, {TargetWeight::Minus, {1, 1}}};
  }
  return all({1, 1});
}

std::optional<std::array<std::vector<Cocycle>, 2>> claimed_der0_basis(const GModule& m) {
  if (!m.pchar || !m.lam) return std::nullopt;
  if (m.kind != ModuleKind::Verma && m.kind != ModuleKind::Simple) return std::nullopt;
  const FieldCtx& F = m.ctx();
  const int p = static_cast<int>(F.p());
  const Weight& lam = *m.lam;
  const bool zero = chi_is_zero(*m.pchar, F);
  const bool nilpotent = m.pchar->kind == PCharKind::Nilpotent;
  std::array<std::vector<Cocycle>, 2> out;
  auto D = [&](int a, int j, int k) {
    const int par = (j + k) % 2;
    out[par].push_back(inner_derivation(m, m.vector_of({((a % p) + p) % p, j, k, false}), par));
  };
  auto named = [&](const std::string& n) {
    Cocycle c = named_cochain(m, n);
    out[c.parity].push_back(std::move(c));
  };
  const bool fp_opposite = !h1_vanishes_by_weights(lam);
  if (!fp_opposite || !(zero || nilpotent)) return out;
  const int l1 = static_cast<int>(lam.l1.to_uint());
  if (m.kind == ModuleKind::Verma) {
    if (!lam.is_zero()) {
      D(l1 - 1, 1, 1);
      D(l1, 0, 0);
      D(l1 - 1, 1, 0);
      D(l1, 0, 1);
    } else if (zero) {
      D(0, 0, 0);
      named("phi");
      named("psi");
    } else {
      D(0, 0, 0);
      D(p - 1, 1, 0);
    }
    return out;
  }
  if (nilpotent) {
    // The listed nilpotent row; lambda = 0 included, where L = Z.
    D(l1, 0, 0);
    D(l1 - 1, 1, 0);
  } else if (lam.is_zero()) {
    for (const auto* n : {"phi1", "phi2", "psi1", "psi2"}) named(n);
  } else if (l1 == 1) {
    D(1, 0, 0);
    D(0, 1, 0);
    named("psi3");
  } else if (l1 == p - 1) {
    named("phi3");
    named("phi4");
  } else {
    D(l1 + 1, 0, 0);
    D(l1 - 1, 1, 0);
  }
  return out;
}

nlohmann::json h1_to_json(const H1Result& r) {
  nlohmann::json j;
  j["method"] = to_string(r.method);
  j["h1_sdim"] = sdim_json(r.h1);
  j["ider_sdim"] = sdim_json(r.ider);
  if (r.method != Method::Weight) j["der_sdim"] = sdim_json(r.der);
  if (r.method != Method::Full) {
    j["der0_sdim"] = sdim_json(r.der0);
    j["der0_cap_ider_sdim"] = sdim_json(r.der0_cap_ider);
  }
  j["der_basis"] = pair_json(r.der_basis);
  j["ider_basis"] = pair_json(r.ider_basis);
  j["der0_basis"] = pair_json(r.der0_basis);
  return j;
}

}  // namespace qcoh
