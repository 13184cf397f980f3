#include <deque>
#include <functional>
#include <map>
#include <sstream>

#include "qcoh/repmod.hpp"

namespace qcoh {

std::string to_string(PropSubmodule w) {
  switch (w) {
    case PropSubmodule::M1:
      return "M1";
    case PropSubmodule::M2:
      return "M2";
    case PropSubmodule::M3:
      return "M3";
  }
  return "?";
}

std::string to_string(TargetWeight t) {
  switch (t) {
    case TargetWeight::Zero:
      return "0";
    case TargetWeight::Plus:
      return "(1,-1)";
    case TargetWeight::Minus:
      return "(-1,1)";
  }
  return "?";
}

IntWeight int_weight_of(TargetWeight t) {
  switch (t) {
    case TargetWeight::Plus:
      return {1, -1};
    case TargetWeight::Minus:
      return {-1, 1};
    default:
      return {0, 0};
  }
}

namespace {

bool is_prime_field_weight(const Weight& lam) { return lam.l1.in_prime_field() && lam.l2.in_prime_field(); }

// Smallest closed subspace containing seed; stops early (returning nullopt) once `stop` is contained.
std::optional<Subspace> spin_impl(const GModule& m, const std::vector<Vec>& seed, const Vec* stop) {
  const FieldCtx& F = m.ctx();
  EchelonBuilder eb(F, m.dim());
  std::deque<Vec> todo;
  for (const auto& v : seed) {
    if (eb.add(v)) todo.push_back(v);
  }
  if (stop && eb.contains(*stop)) return std::nullopt;
  while (!todo.empty()) {
    Vec v = std::move(todo.front());
    todo.pop_front();
    for (const auto& A : m.actions) {
      Vec w = A * v;
      if (eb.add(w)) {
        if (stop && eb.contains(*stop)) return std::nullopt;
        todo.push_back(std::move(w));
      }
    }
  }
  return eb.subspace();
}

struct Block {
  Weight weight;
  int parity;
  std::vector<std::size_t> idx;
};

std::vector<Block> homogeneous_blocks(const GModule& m) {
  std::map<std::pair<Weight, int>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < m.dim(); ++i) groups[{m.weights[i], m.parities[i]}].push_back(i);
  std::vector<Block> out;
  for (auto& [key, idx] : groups) out.push_back({key.first, key.second, idx});
  return out;
}

std::string block_name(const Block& b) {
  return "weight " + b.weight.str() + ", parity " + std::to_string(b.parity) + " (dim " +
         std::to_string(b.idx.size()) + ")";
}

void check_budget(const GModule& m, const std::vector<Block>& blocks, std::uint64_t budget) {
  const std::uint64_t q = m.ctx().order();
  for (const auto& b : blocks) {
    // (q^d - 1)/(q - 1) = 1 + q + ... + q^(d-1), with overflow saturating past the budget.
    std::uint64_t count = 0, term = 1;
    bool over = false;
    for (std::size_t i = 0; i < b.idx.size(); ++i) {
      count += term;
      if (count > budget) {
        over = true;
        break;
      }
      if (i + 1 < b.idx.size()) {
        if (term > budget / q + 1) {
          over = true;
          break;
        }
        term *= q;
      }
    }
    if (over) {
      throw BudgetExceeded("enumeration budget " + std::to_string(budget) + " exceeded by " + block_name(b) +
                           " over " + m.ctx().describe());
    }
  }
}

// Calls fn on one representative of each projective point of the block; stops when fn returns false.
bool for_each_point(const GModule& m, const Block& b, const std::function<bool(const Vec&)>& fn) {
  const FieldCtx& F = m.ctx();
  const std::uint64_t q = F.order();
  const std::size_t d = b.idx.size();
  for (std::size_t lead = 0; lead < d; ++lead) {
    const std::size_t tail = d - 1 - lead;
    std::uint64_t total = 1;
    for (std::size_t t = 0; t < tail; ++t) total *= q;
    for (std::uint64_t code = 0; code < total; ++code) {
      Vec v = zero_vec(F, m.dim());
      v[b.idx[lead]] = F.one();
      std::uint64_t c = code;
      for (std::size_t t = 0; t < tail; ++t) {
        v[b.idx[lead + 1 + t]] = F.element(c % q);
        c /= q;
      }
      if (!fn(v)) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<PropSubmodule> applicable_prop_submodule(const GModule& verma) {
  if (verma.kind != ModuleKind::Verma || !verma.lam || !verma.pchar) return std::nullopt;
  const Weight& lam = *verma.lam;
  if (verma.verma_case != 4 || !is_prime_field_weight(lam)) return std::nullopt;
  const PCharKind k = verma.pchar->kind;
  const bool chi_zero = k == PCharKind::Zero || (k == PCharKind::Semisimple && verma.pchar->is_zero(verma.ctx().p()));
  if (chi_zero) return lam.is_zero() ? PropSubmodule::M3 : PropSubmodule::M1;
  if (k == PCharKind::Nilpotent && !lam.is_zero()) return PropSubmodule::M2;
  return std::nullopt;
}

Subspace prop_submodule(const GModule& verma, PropSubmodule which) {
  auto ok = applicable_prop_submodule(verma);
  if (!ok || *ok != which) {
    throw std::invalid_argument("prop_submodule: " + to_string(which) + " does not apply to this module");
  }
  const FieldCtx& F = verma.ctx();
  const int p = static_cast<int>(F.p());
  const FieldElem l1 = verma.lam->l1;
  auto v = [&](int a, int j, int k) { return verma.vector_of({((a % p) + p) % p, j, k, false}); };
  auto comb = [&](const Vec& x, const Vec& y) {
    Vec r = x;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= l1 * y[i];
    return r;
  };
  std::vector<Vec> vecs;
  if (which == PropSubmodule::M1) {
    const int u = static_cast<int>(l1.to_uint() * 2 % F.p());
    for (int a = 0; a < p; ++a) vecs.push_back(v(a, 1, 1));
    for (int c = u + 1; c <= p - 1; ++c) {
      vecs.push_back(v(c, 0, 0));
      vecs.push_back(v(c, 0, 1));
      vecs.push_back(v(c, 1, 0));
    }
    for (int b = 0; b <= u - 1; ++b) vecs.push_back(comb(v(b + 1, 0, 1), v(b, 1, 0)));
    vecs.push_back(v(u, 1, 0));
  } else if (which == PropSubmodule::M2) {
    for (int a = 0; a < p; ++a) {
      vecs.push_back(v(a, 1, 1));
      vecs.push_back(comb(v(a + 1, 0, 1), v(a, 1, 0)));
    }
  } else {
    for (int a = 1; a <= p - 1; ++a) {
      vecs.push_back(v(a, 0, 0));
      vecs.push_back(v(a, 1, 0));
    }
    vecs.push_back(v(0, 1, 0));
  }
  Subspace s = Subspace::span(F, verma.dim(), vecs);
  if (s.dim() != vecs.size()) {
    throw ModuleError("prop_submodule: the listed basis of " + to_string(which) + " is linearly dependent");
  }
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const Vec b = s.vector(i);
    for (std::size_t x = 0; x < verma.actions.size(); ++x) {
      if (!s.contains(verma.actions[x] * b)) {
        throw ModuleError("prop_submodule: " + to_string(which) + " is not closed under " + verma.alg->name(x));
      }
    }
  }
  return s;
}

Subspace spin(const GModule& m, const std::vector<Vec>& seed) { return *spin_impl(m, seed, nullptr); }

Subspace maximal_submodule(const GModule& m, std::uint64_t budget) {
  const FieldCtx& F = m.ctx();
  const auto blocks = homogeneous_blocks(m);
  check_budget(m, blocks, budget);
  const Vec top = m.unit(0);
  if (spin(m, {top}).dim() != m.dim()) {
    throw ModuleError("maximal_submodule: the first basis vector does not generate the module");
  }
  Subspace N(F, m.dim());
  for (const auto& b : blocks) {
    for_each_point(m, b, [&](const Vec& w) {
      if (N.contains(w)) return true;
      if (auto s = spin_impl(m, {w}, &top)) N = sum(N, *s);
      return true;
    });
  }
  if (N.contains(top)) throw ModuleError("maximal_submodule: candidate contains the highest weight vector");
  for (std::size_t i = 0; i < N.dim(); ++i) {
    for (const auto& A : m.actions) {
      if (!N.contains(A * N.vector(i))) throw ModuleError("maximal_submodule: candidate is not action-closed");
    }
  }
  GModule L = quotient(m, N, ModuleKind::Quotient);
  if (!is_simple(L, budget)) throw ModuleError("maximal_submodule: quotient is not simple");
  return N;
}

GModule quotient(const GModule& m, const Subspace& sub, ModuleKind kind) {
  auto qm = std::make_shared<const QuotientMap>(sub);
  GModule out;
  out.alg = m.alg;
  out.kind = kind;
  out.pchar = m.pchar;
  out.lam = m.lam;
  out.verma_case = m.verma_case;
  out.mu = m.mu;
  for (auto i : qm->kept()) {
    out.labels.push_back(m.labels[i]);
    out.parities.push_back(m.parities[i]);
    out.weights.push_back(m.weights[i]);
  }
  const std::size_t n = qm->dim();
  for (const auto& A : m.actions) {
    Matrix B(m.ctx(), n, n);
    for (std::size_t c = 0; c < n; ++c) {
      const Vec img = qm->project(A.col_vec(qm->kept()[c]));
      for (std::size_t r = 0; r < n; ++r) B(r, c) = img[r];
    }
    out.actions.push_back(std::move(B));
  }
  out.from_parent = qm;
  out.parent_labels = m.labels;
  out.parent_kernel = sub;
  return out;
}

bool is_simple(const GModule& m, std::uint64_t budget) {
  if (m.dim() == 0) return false;
  const auto blocks = homogeneous_blocks(m);
  check_budget(m, blocks, budget);
  for (const auto& b : blocks) {
    const bool all = for_each_point(m, b, [&](const Vec& w) { return spin(m, {w}).dim() == m.dim(); });
    if (!all) return false;
  }
  return true;
}

GModule simple_quotient(const GModule& verma, Route route, std::uint64_t budget) {
  const bool nilpotent_zero =
      verma.pchar && verma.pchar->kind == PCharKind::Nilpotent && verma.lam && verma.lam->is_zero();
  const auto which = applicable_prop_submodule(verma);
  const bool prop_ok = which.has_value() || nilpotent_zero;

  auto by_prop = [&]() {
    if (!prop_ok) throw std::invalid_argument("the proposition route does not cover this (chi, lambda)");
    if (which) return prop_submodule(verma, *which);
    return Subspace(verma.ctx(), verma.dim());
  };

  Subspace N(verma.ctx(), verma.dim());
  switch (route) {
    case Route::Proposition:
      N = by_prop();
      break;
    case Route::Generic:
      N = maximal_submodule(verma, budget);
      break;
    case Route::Both: {
      N = by_prop();
      const Subspace G = maximal_submodule(verma, budget);
      if (!(N == G)) {
        throw ModuleError("route disagreement: proposition kernel dim " + std::to_string(N.dim()) +
                          ", generic kernel dim " + std::to_string(G.dim()));
      }
      break;
    }
    case Route::Auto:
      N = prop_ok ? by_prop() : maximal_submodule(verma, budget);
      break;
  }
  return quotient(verma, N, ModuleKind::Simple);
}

GModule simple_module(std::shared_ptr<const SuperAlgebra> alg, const PChar& chi, const Weight& lam, Route route,
                      std::uint64_t budget) {
  return simple_quotient(build_verma(std::move(alg), chi, lam), route, budget);
}

std::vector<std::size_t> weight_space(const GModule& m, const IntWeight& w) {
  const FieldCtx& F = m.ctx();
  const Weight target{F.from_int(w.w1), F.from_int(w.w2)};
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (m.weights[i] == target) out.push_back(i);
  }
  return out;
}

std::map<TargetWeight, TargetSpace> target_weight_spaces(const GModule& m) {
  std::map<TargetWeight, TargetSpace> out;
  for (auto t : {TargetWeight::Zero, TargetWeight::Plus, TargetWeight::Minus}) {
    TargetSpace ts;
    ts.indices = weight_space(m, int_weight_of(t));
    for (auto i : ts.indices) ts.sdim[m.parities[i]]++;
    out[t] = ts;
  }
  return out;
}

nlohmann::json module_to_json(const GModule& m) {
  nlohmann::json j;
  j["field"] = m.ctx().to_json();
  j["kind"] = to_string(m.kind);
  if (m.pchar) j["chi"] = m.pchar->str();
  if (m.lam) j["lambda"] = {m.lam->l1.to_json(), m.lam->l2.to_json()};
  if (m.verma_case) j["case"] = m.verma_case;
  if (m.mu) j["mu"] = m.mu->to_json();
  j["dim"] = m.dim();
  j["sdim"] = {m.sdim().even, m.sdim().odd};
  auto& labels = j["labels"] = nlohmann::json::array();
  auto& weights = j["weights"] = nlohmann::json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    labels.push_back(m.labels[i].str());
    weights.push_back({m.weights[i].l1.to_json(), m.weights[i].l2.to_json()});
  }
  j["parities"] = m.parities;
  auto& actions = j["actions"] = nlohmann::json::object();
  for (std::size_t x = 0; x < m.actions.size(); ++x) actions[m.alg->name(x)] = m.actions[x].to_json();
  return j;
}

}  // namespace qcoh
