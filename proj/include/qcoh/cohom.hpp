#ifndef QCOH_COHOM_HPP
#define QCOH_COHOM_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qcoh/repmod.hpp"

namespace qcoh {

/// A homogeneous 1-cochain g -> M: one target vector per algebra basis element.
struct Cocycle {
  int parity = 0;
  std::vector<Vec> values;
};

/// Flattened coordinates: entry x * dim(M) + i is the i-th coordinate of values[x].
Vec flatten(const Cocycle& c);
Cocycle unflatten(const GModule& m, int parity, std::span<const FieldElem> v);
Cocycle zero_cochain(const GModule& m, int parity);
/// D_v(x) = (-1)^{|x||v|} x v for v in the parity component `parity`.
Cocycle inner_derivation(const GModule& m, const Vec& v, int parity);

struct H0Result {
  Sdim sdim;
  Subspace basis;
};

/// Common kernel of the eight action matrices.
H0Result h0(const GModule& m);

/// Derivations of the given parity, as a subspace of the flattened cochain space.
/// weight_only restricts the unknowns to phi(x) in M_{wt(x)}.
Subspace der_space(const GModule& m, int parity, bool weight_only = false);
Subspace ider_space(const GModule& m, int parity);

enum class Method { Full, Weight, Both };

std::string to_string(Method m);

/// Raised when the full and weight methods give different H^1.
class MethodDisagreement : public std::runtime_error {
 public:
  MethodDisagreement(const std::string& what, nlohmann::json certificate)
      : std::runtime_error(what), certificate(std::move(certificate)) {}
  nlohmann::json certificate;
};

struct H1Result {
  Method method = Method::Both;
  Sdim h1;
  Sdim der, ider, der0, der0_cap_ider;
  // Indexed by cochain parity; Der is only filled for Full/Both, Der0 only for Weight/Both.
  std::array<std::optional<Subspace>, 2> der_basis, ider_basis, der0_basis;
};

/// full: sdim Der - sdim Ider; weight: sdim Der0 - sdim (Der0 cap Ider); both: both, required equal.
H1Result h1(const GModule& m, Method method);

/// Der0, Ider, Der and H0 satisfy the identities of every instance:
/// Ider in Der, sdim Ider + sdim H0 = sdim M, Der = Der0 + Ider, phi(h_i) in H0 for phi in Der0.
CheckResult check_structural_identities(const GModule& m, const H0Result& h0r, const H1Result& h1r);

/// True iff lambda1 + lambda2 != 0, or lambda1 = -lambda2 lies outside F_p. Then no target weight occurs
/// and H^0 = H^1 = 0|0 for Z and all its quotients.
bool h1_vanishes_by_weights(const Weight& lam);

/// sdim H^1 with coefficients in a module on which g acts by zero: parity-respecting maps g/[g,g] -> M.
Sdim trivial_h1_oracle(const SuperAlgebra& alg, Sdim module_sdim);

struct Classification {
  bool parity_ok = true;
  bool is_derivation = false;
  bool is_inner = false;
  bool is_weight_map = false;
  std::string first_failure;  ///< first pair violating the derivation identity
};

Classification classify_cochain(const GModule& m, const Cocycle& c);
bool are_cohomologous(const GModule& m, const Cocycle& a, const Cocycle& b);

/// The named cochains phi, psi, phi1..phi4, psi1..psi3, built on the module they are stated for.
std::vector<std::string> named_cochains_for(const GModule& m);
Cocycle named_cochain(const GModule& m, const std::string& name);

/// Reference values stated in the paper's theorems; nullopt where nothing is stated.
std::optional<Sdim> paper_h0_verma(const PChar& chi, const Weight& lam);
std::optional<Sdim> paper_h1_verma(const PChar& chi, const Weight& lam);
std::optional<Sdim> paper_h1_simple(const PChar& chi, const Weight& lam);

/// Target-weight superdimensions stated by the lemmas, for Verma (simple = false) or simple modules.
std::optional<std::map<TargetWeight, Sdim>> paper_target_weights(const PChar& chi, const Weight& lam, bool simple);
/// Which branch of the lemmas applies, e.g. "Z(2)" or "L(4)"; empty if none.
std::string paper_target_branch(const PChar& chi, const Weight& lam, bool simple);

/// The weight-derivation bases claimed in the paper's proofs, as cochains on m (reference data).
std::optional<std::array<std::vector<Cocycle>, 2>> claimed_der0_basis(const GModule& m);

nlohmann::json h1_to_json(const H1Result& r);

}  // namespace qcoh

#endif  // QCOH_COHOM_HPP
