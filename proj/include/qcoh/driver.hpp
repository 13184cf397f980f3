#ifndef QCOH_DRIVER_HPP
#define QCOH_DRIVER_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcoh/cohom.hpp"

namespace qcoh {

/// "0" / "zero", "nilpotent", "semisimple:a,b", "mixed:a".
PChar parse_chi(const std::string& s);
/// Comma-separated list; bare integers after "semisimple:a" complete it. "semisimple" and "mixed"
/// without parameters expand to the default representatives (1,0), (1,1) and a = 1.
std::vector<PChar> parse_chi_list(const std::string& s);
/// Enumeration budget from QCOH_BUDGET, or the default.
std::uint64_t budget_from_env();

/**
 * Field used for a given p-character: F_p, or F_{p^p} when Artin-Schreier roots are needed,
 * doubled when some case-3 weight of Lambda_chi needs a square root not in that field.
 */
Field plan_field(std::uint32_t p, const PChar& chi);
/// Same rule restricted to the given weights (which must live in the planned field's base).
Field plan_field_for(std::uint32_t p, const PChar& chi, const std::vector<Weight>& lams);

/// Parses "l1,l2" (prime-field integers) or "[c..],[c..]" (coefficient vectors) over F.
Weight parse_weight(const FieldCtx& F, const std::string& s);

enum class ModuleType { Verma, Simple };
enum class What { H0, H1, Both };

std::string to_string(ModuleType t);

struct PointRequest {
  PChar chi;
  Weight lam;
  ModuleType module = ModuleType::Verma;
  What what = What::Both;
  Method method = Method::Both;
  Route route = Route::Auto;
  std::uint64_t budget = kDefaultBudget;
  bool certificates = false;    ///< attach Der/Ider/H0 bases
  bool dump_module = false;     ///< attach the module's action matrices
  bool validate = true;         ///< run module axiom, grading and p-character checks
  bool other_mu = true;         ///< case 3: recompute with the other square root and compare
};

struct PointResult {
  std::uint32_t p = 0;
  PChar chi;
  std::string lambda1, lambda2;
  ModuleType module = ModuleType::Verma;
  std::optional<std::size_t> dim;
  std::optional<Sdim> sdim, h0, h1, expected_h0, expected_h1;
  std::string method;  ///< full | weight | both | kernel, with "+criterion" when the weight criterion also applies
  bool match = true;
  std::string error;
  double ms = 0;
  nlohmann::json detail = nlohmann::json::object();  ///< deterministic extras (no timings)
};

/// One (chi, lambda, module) computation; never throws, errors land in PointResult::error.
PointResult run_point(const std::shared_ptr<const SuperAlgebra>& alg, const PointRequest& req);

/// Runs fn(i) for i in [0, n) on `jobs` threads; results are indexed, so ordering is unaffected.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

nlohmann::json point_to_json(const PointResult& r);
std::string csv_header();
std::string point_to_csv(const PointResult& r, bool with_time = true);

/// Summary of a verify run: rows plus overall status.
struct VerifyReport {
  nlohmann::json json;
  std::vector<std::string> lines;  ///< human-readable rows
  bool any_mismatch = false;
  bool any_error = false;
  std::vector<std::pair<std::string, nlohmann::json>> certificates;  ///< (file stem, certificate)
};

VerifyReport verify_theorem1(std::uint32_t p, const std::vector<PChar>& chis, unsigned jobs, std::uint64_t budget);
VerifyReport verify_theorem2(std::uint32_t p, const std::vector<PChar>& chis, unsigned jobs, std::uint64_t budget);
VerifyReport verify_lemmas(std::uint32_t p, const std::vector<PChar>& chis, unsigned jobs, std::uint64_t budget);
VerifyReport verify_prop41(std::uint32_t p, const std::vector<PChar>& chis, unsigned jobs, std::uint64_t budget);

}  // namespace qcoh

#endif  // QCOH_DRIVER_HPP
