#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "qcoh/driver.hpp"

namespace {

using namespace qcoh;

constexpr int kExitMatch = 0;
constexpr int kExitError = 1;
constexpr int kExitMismatch = 2;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const std::filesystem::path fp(path);
  if (fp.has_parent_path()) std::filesystem::create_directories(fp.parent_path());
  std::ofstream out(fp, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

What parse_what(const std::string& s) { return s == "h0" ? What::H0 : s == "h1" ? What::H1 : What::Both; }

Method parse_method(const std::string& s) {
  return s == "full" ? Method::Full : s == "weight" ? Method::Weight : Method::Both;
}

int exit_for(const std::vector<PointResult>& rs) {
  bool mismatch = false;
  for (const auto& r : rs) {
    if (!r.error.empty()) return kExitError;
    mismatch = mismatch || !r.match;
  }
  return mismatch ? kExitMismatch : kExitMatch;
}

std::string render(const std::vector<PointResult>& rs, const std::string& format, const nlohmann::json& header,
                   bool with_time) {
  if (format == "csv") {
    std::string s = csv_header() + "\n";
    for (const auto& r : rs) s += point_to_csv(r, with_time) + "\n";
    return s;
  }
  nlohmann::json j = header;
  auto& recs = j["records"] = nlohmann::json::array();
  for (const auto& r : rs) {
    nlohmann::json rj = point_to_json(r);
    if (with_time) rj["ms"] = r.ms;
    recs.push_back(std::move(rj));
  }
  return j.dump(2) + "\n";
}

struct ComputeOpts {
  std::uint32_t p = 0;
  std::string chi = "0", lambda, module = "verma", what = "both", method = "both", format = "json", out;
  unsigned k = 0;
  bool dump_algebra = false, dump_module = false, certificates = false;
};

int cmd_compute(const ComputeOpts& o) {
  const PChar chi = parse_chi(o.chi);
  Field F;
  if (o.k) {
    F = make_extension(o.p, o.k);
  } else if (o.lambda == "auto" || chi.needs_extension(o.p)) {
    F = plan_field(o.p, chi);
  } else {
    const Weight base = parse_weight(*make_extension(o.p, 1), o.lambda);
    F = plan_field_for(o.p, chi, {base});
  }
  auto alg = std::make_shared<const SuperAlgebra>(build_q2(F));
  std::vector<Weight> lams;
  if (o.lambda == "auto") {
    lams = lambda_set(chi, *F);
  } else {
    const Weight lam = parse_weight(*F, o.lambda);
    if (!in_lambda_set(chi, lam)) {
      throw std::invalid_argument("lambda = " + lam.str() + " is not in Lambda_chi for chi = " + chi.str());
    }
    lams.push_back(lam);
  }
  std::vector<PointResult> rs(lams.size());
  const std::uint64_t budget = budget_from_env();
  parallel_for(lams.size(), default_jobs(), [&](std::size_t i) {
    PointRequest req;
    req.chi = chi;
    req.lam = lams[i];
    req.module = o.module == "simple" ? ModuleType::Simple : ModuleType::Verma;
    req.what = parse_what(o.what);
    req.method = parse_method(o.method);
    req.budget = budget;
    req.certificates = o.certificates;
    req.dump_module = o.dump_module;
    rs[i] = run_point(alg, req);
  });
  nlohmann::json header = {{"command", "compute"}, {"field", F->to_json()}, {"chi", chi.str()}};
  if (o.dump_algebra) header["algebra"] = alg->to_json();
  write_text(o.out, render(rs, o.format, header, false));
  for (const auto& r : rs) {
    if (!r.error.empty()) std::cerr << "error at lambda=(" << r.lambda1 << "," << r.lambda2 << "): " << r.error << "\n";
  }
  return exit_for(rs);
}

struct VerifyOpts {
  std::string theorem, chi_types = "zero,nilpotent", out, cert_dir, format = "json";
  std::uint32_t p = 0;
  unsigned jobs = 0;
};

int cmd_verify(const VerifyOpts& o) {
  const auto chis = parse_chi_list(o.chi_types);
  const unsigned jobs = o.jobs ? o.jobs : default_jobs();
  const std::uint64_t budget = budget_from_env();
  VerifyReport rep;
  if (o.theorem == "1") {
    rep = verify_theorem1(o.p, chis, jobs, budget);
  } else if (o.theorem == "2") {
    rep = verify_theorem2(o.p, chis, jobs, budget);
  } else if (o.theorem == "lemmas") {
    rep = verify_lemmas(o.p, chis, jobs, budget);
  } else {
    rep = verify_prop41(o.p, chis, jobs, budget);
  }
  std::string cert_dir = o.cert_dir;
  if (cert_dir.empty()) {
    const std::filesystem::path op(o.out);
    cert_dir = (o.out.empty() || o.out == "-" ? std::filesystem::path(".") : op.parent_path()) / "certificates";
  }
  for (const auto& [stem, cert] : rep.certificates) {
    const std::string path = (std::filesystem::path(cert_dir) / (stem + ".json")).string();
    write_text(path, cert.dump(2) + "\n");
    rep.lines.push_back("certificate: " + path);
  }
  std::string table;
  for (const auto& l : rep.lines) table += l + "\n";
  std::cout << table;
  if (!o.out.empty()) write_text(o.out, o.format == "json" ? rep.json.dump(2) + "\n" : table);
  if (rep.any_error) return kExitError;
  return rep.any_mismatch ? kExitMismatch : kExitMatch;
}

struct ScanOpts {
  std::uint32_t p = 0;
  std::string chi_types = "zero,nilpotent", module = "verma", format = "csv", out;
  unsigned jobs = 0;
};

int cmd_scan(const ScanOpts& o) {
  auto chis = parse_chi_list(o.chi_types);
  std::stable_sort(chis.begin(), chis.end(), [](const PChar& a, const PChar& b) { return a.kind < b.kind; });
  std::vector<ModuleType> types;
  if (o.module != "simple") types.push_back(ModuleType::Verma);
  if (o.module != "verma") types.push_back(ModuleType::Simple);
  struct Task {
    std::shared_ptr<const SuperAlgebra> alg;
    PointRequest req;
  };
  std::vector<Task> tasks;
  const std::uint64_t budget = budget_from_env();
  nlohmann::json fields = nlohmann::json::object();
  for (const auto& chi : chis) {
    Field F = plan_field(o.p, chi);
    fields[chi.str()] = F->to_json();
    auto alg = std::make_shared<const SuperAlgebra>(build_q2(F));
    for (const auto& lam : lambda_set(chi, *F)) {
      for (auto t : types) {
        PointRequest req;
        req.chi = chi;
        req.lam = lam;
        req.module = t;
        req.budget = budget;
        tasks.push_back({alg, req});
      }
    }
  }
  std::vector<PointResult> rs(tasks.size());
  parallel_for(tasks.size(), o.jobs ? o.jobs : default_jobs(),
               [&](std::size_t i) { rs[i] = run_point(tasks[i].alg, tasks[i].req); });
  const nlohmann::json header = {{"command", "scan"}, {"p", o.p}, {"fields", fields}};
  write_text(o.out, render(rs, o.format, header, true));
  std::size_t errors = 0;
  for (const auto& r : rs) errors += !r.error.empty();
  if (errors) std::cerr << errors << " records failed; see the error fields\n";
  return exit_for(rs);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology of the queer Lie superalgebra q(2) with coefficients in baby Verma and simple modules"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"json", "csv"};

  ComputeOpts co;
  auto* compute = app.add_subcommand("compute", "H0/H1 for one module or for every lambda of Lambda_chi");
  compute->add_option("--p", co.p, "prime")->required()->check(CLI::Range(3u, 97u));
  compute->add_option("--chi", co.chi, "0 | nilpotent | semisimple:a,b | mixed:a");
  compute->add_option("--lambda", co.lambda, "l1,l2 | [c0,c1,..],[c0,..] | auto")->required();
  compute->add_option("--k", co.k, "extension degree (default: planned from chi and lambda)")
      ->check(CLI::Range(1u, 16u));
  compute->add_option("--module", co.module)->check(CLI::IsMember({"verma", "simple"}));
  compute->add_option("--what", co.what)->check(CLI::IsMember({"h0", "h1", "both"}));
  compute->add_option("--method", co.method)->check(CLI::IsMember({"full", "weight", "both"}));
  compute->add_option("--format", co.format)->check(CLI::IsMember(formats));
  compute->add_option("--out", co.out, "output file (default stdout)");
  compute->add_flag("--dump-algebra", co.dump_algebra, "include basis order and structure constants");
  compute->add_flag("--dump-module", co.dump_module, "include the module's action matrices");
  compute->add_flag("--certificates", co.certificates, "include Der/Ider/H0 bases");

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "check a stated result over the full (chi, lambda) grid");
  verify->add_option("--theorem", vo.theorem)->required()->check(CLI::IsMember({"1", "2", "lemmas", "prop41"}));
  verify->add_option("--p", vo.p)->required()->check(CLI::Range(3u, 97u));
  verify->add_option("--chi-types", vo.chi_types, "comma-separated p-characters");
  verify->add_option("--out", vo.out, "report file");
  verify->add_option("--cert-dir", vo.cert_dir, "directory for mismatch certificates");
  verify->add_option("--jobs", vo.jobs);
  verify->add_option("--format", vo.format)->check(CLI::IsMember({"json", "text"}));

  ScanOpts so;
  auto* scan = app.add_subcommand("scan", "dataset of H0/H1 over the (chi, lambda) grid");
  scan->add_option("--p", so.p)->required()->check(CLI::Range(3u, 97u));
  scan->add_option("--chi-types", so.chi_types);
  scan->add_option("--module", so.module)->check(CLI::IsMember({"verma", "simple", "both"}));
  scan->add_option("--jobs", so.jobs);
  scan->add_option("--format", so.format)->check(CLI::IsMember(formats));
  scan->add_option("--out", so.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }
  try {
    for (auto p : {co.p, vo.p, so.p}) {
      if (p == 0) continue;
      for (std::uint32_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) throw std::invalid_argument("--p must be prime, got " + std::to_string(p));
      }
    }
    if (*compute) return cmd_compute(co);
    if (*verify) return cmd_verify(vo);
    return cmd_scan(so);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
