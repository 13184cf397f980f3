#ifndef QCOH_REPMOD_HPP
#define QCOH_REPMOD_HPP

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcoh/qsuper.hpp"

namespace qcoh {

enum class PCharKind { Zero, Nilpotent, Semisimple, Mixed };

std::string to_string(PCharKind k);

/**
 * p-character representative with chi(e) = 0. Parameters are prime-field
 * integers: (chi(h1), chi(h2)) = (a, b) for semisimple, (a, a) for mixed.
 */
struct PChar {
  PCharKind kind = PCharKind::Zero;
  std::int64_t a = 0;
  std::int64_t b = 0;

  static PChar zero() { return {}; }
  static PChar nilpotent() { return {PCharKind::Nilpotent, 0, 0}; }
  static PChar semisimple(std::int64_t a, std::int64_t b);
  static PChar mixed(std::int64_t a);

  FieldElem f_val(const FieldCtx& F) const;
  FieldElem h1_val(const FieldCtx& F) const;
  FieldElem h2_val(const FieldCtx& F) const;
  /// chi(x) for an even coordinate vector x of q(2).
  FieldElem value(const FieldCtx& F, std::span<const FieldElem> x) const;
  bool is_zero(std::uint32_t p) const;
  /// Whether Lambda_chi needs Artin-Schreier roots outside the prime field.
  bool needs_extension(std::uint32_t p) const;
  /// "0", "nilpotent", "semisimple:a,b", "mixed:a".
  std::string str() const;
  /// "", "", "a,b", "a" - the CSV chi_params column.
  std::string params() const;
};

/// Highest weight (lambda1, lambda2) = (lambda(h1), lambda(h2)).
struct Weight {
  FieldElem l1, l2;
  friend bool operator==(const Weight& a, const Weight& b) { return a.l1 == b.l1 && a.l2 == b.l2; }
  friend bool operator<(const Weight& a, const Weight& b) {
    return a.l1 < b.l1 || (a.l1 == b.l1 && a.l2 < b.l2);
  }
  bool is_zero() const { return l1.is_zero() && l2.is_zero(); }
  std::string str() const { return "(" + l1.str() + "," + l2.str() + ")"; }
};

Weight int_weight(const FieldCtx& F, std::int64_t l1, std::int64_t l2);

/// lambda_i^p - lambda_i = chi(h_i)^p for i = 1, 2.
bool in_lambda_set(const PChar& chi, const Weight& lam);

/// All of Lambda_chi inside F, sorted.
std::vector<Weight> lambda_set(const PChar& chi, const FieldCtx& F);

/// Basis tag (a, j, k) = f^a F^j H1^k v, or [a, j, k] with H2 in place of H1.
struct Label {
  int a = 0, j = 0, k = 0;
  bool h2_based = false;
  friend bool operator==(const Label&, const Label&) = default;
  std::string str() const;
};

enum class ModuleKind { Verma, Simple, Quotient, Trivial, Custom };

std::string to_string(ModuleKind k);

/**
 * A finite-dimensional g-module given by one action matrix per algebra basis
 * element, plus parity and h1/h2-weight metadata for each basis vector.
 */
struct GModule {
  std::shared_ptr<const SuperAlgebra> alg;
  std::vector<Label> labels;
  std::vector<int> parities;
  std::vector<Weight> weights;
  std::vector<Matrix> actions;
  ModuleKind kind = ModuleKind::Custom;
  std::optional<PChar> pchar;
  std::optional<Weight> lam;
  int verma_case = 0;  ///< 1..4 for baby Verma modules and their quotients
  std::optional<FieldElem> mu;

  // Set for quotients: projection from the parent module and the parent's labels.
  std::shared_ptr<const QuotientMap> from_parent;
  std::vector<Label> parent_labels;
  std::optional<Subspace> parent_kernel;

  const FieldCtx& ctx() const { return alg->ctx(); }
  std::size_t dim() const { return labels.size(); }
  Sdim sdim() const;
  Vec unit(std::size_t i) const;
  /// Coordinates of a labelled vector; for quotients the label refers to the parent basis.
  /// Labels absent from the basis (e.g. out-of-range) give the zero vector.
  Vec vector_of(const Label& l) const;
  std::optional<std::size_t> index_of(const Label& l) const;
};

/// Construction failure pointing at the formulas involved.
class ModuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CheckResult {
  bool ok = true;
  std::string detail;  ///< first violation, empty when ok
  /// For module-axiom failures: generator pair (x, y) and the source basis index.
  std::optional<std::array<std::size_t, 3>> where;
};

/// Case number 1..4 of the action tables for a highest weight.
int verma_case(const Weight& lam);
/// Square roots of -lambda1/lambda2 (case 3 only), sorted; empty if none exist in the field.
std::vector<FieldElem> verma_mu_candidates(const Weight& lam);

/**
 * Baby Verma module Z_chi(lambda) from the explicit action tables.
 * mu_choice selects the case-3 square root (0 = lex-smaller, 1 = the other).
 * Throws std::invalid_argument for lambda outside Lambda_chi or a missing mu,
 * ModuleError if the module axiom fails.
 */
GModule build_verma(std::shared_ptr<const SuperAlgebra> alg, const PChar& chi, const Weight& lam, int mu_choice = 0);

/// The one-dimensional-per-vector module with all actions zero.
GModule trivial_module(std::shared_ptr<const SuperAlgebra> alg, Sdim sdim);

/// A_[x,y] = A_x A_y - (-1)^{|x||y|} A_y A_x for all 64 ordered pairs.
CheckResult check_module_axiom(const GModule& m);
/// Actions shift (weight, parity) by (wt(x), |x|).
CheckResult check_grading(const GModule& m);
/// A_x^p - A_{x^[p]} = chi(x)^p Id on the even basis and on random even combinations.
CheckResult validate_p_character(const GModule& m, int random_samples = 20, std::uint64_t seed = 0x5eed);

enum class PropSubmodule { M1, M2, M3 };

std::string to_string(PropSubmodule w);

/// Which listed submodule describes the simple quotient, if any.
std::optional<PropSubmodule> applicable_prop_submodule(const GModule& verma);

/// Span of the listed basis; throws ModuleError if it is not action-closed.
Subspace prop_submodule(const GModule& verma, PropSubmodule which);

/// Smallest action-closed subspace containing the seed vectors.
Subspace spin(const GModule& m, const std::vector<Vec>& seed);

inline constexpr std::uint64_t kDefaultBudget = 1000000;

/**
 * Unique maximal submodule of a cyclic highest-weight module, found by
 * enumerating homogeneous weight vectors projectively.
 */
Subspace maximal_submodule(const GModule& m, std::uint64_t budget = kDefaultBudget);

/// Quotient by an action-closed subspace.
GModule quotient(const GModule& m, const Subspace& sub, ModuleKind kind);

/// Whether every nonzero homogeneous weight vector spins to the whole module.
bool is_simple(const GModule& m, std::uint64_t budget = kDefaultBudget);

enum class Route { Proposition, Generic, Both, Auto };

GModule simple_module(std::shared_ptr<const SuperAlgebra> alg, const PChar& chi, const Weight& lam, Route route,
                      std::uint64_t budget = kDefaultBudget);
GModule simple_quotient(const GModule& verma, Route route, std::uint64_t budget = kDefaultBudget);

/// The three target weights 0, (1,-1), (-1,1).
enum class TargetWeight { Zero, Plus, Minus };

std::string to_string(TargetWeight t);
IntWeight int_weight_of(TargetWeight t);

struct TargetSpace {
  Sdim sdim;
  std::vector<std::size_t> indices;  ///< basis vectors of that weight
};

std::map<TargetWeight, TargetSpace> target_weight_spaces(const GModule& m);

/// Indices of basis vectors of a given weight.
std::vector<std::size_t> weight_space(const GModule& m, const IntWeight& w);

nlohmann::json module_to_json(const GModule& m);

}  // namespace qcoh

#endif  // QCOH_REPMOD_HPP
