// gdrazin: Drazin inverses and hypothesis-checked representation formulas.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "gdrazin/verify.hpp"

namespace gd = gdrazin;
using gd::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kInput = 2, kRank = 3 };

struct Globals {
  std::string backend = "exact";
  double eps_rank = gd::Tolerance{}.eps_rank;
  double eps_eq = gd::Tolerance{}.eps_eq;
  std::size_t series_cap = 0;
  std::uint64_t seed = 0;
  std::string out;

  gd::Tolerance tol() const {
    gd::Tolerance t{eps_rank, eps_eq};
    t.validate();
    return t;
  }
  gd::FormulaOptions formula() const {
    gd::FormulaOptions o;
    o.tol = tol();
    o.series_cap = series_cap;
    return o;
  }
  json flags() const {
    return {{"backend", backend}, {"eps_rank", eps_rank}, {"eps_eq", eps_eq},
            {"series_cap", series_cap}, {"seed", seed}};
  }
};

void emit(const Globals& g, json doc) {
  if (g.out.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    gd::write_json_file(g.out, doc);
  }
}

json header(const Globals& g, const std::string& command) {
  return {{"version", gd::version()}, {"command", command}, {"flags", g.flags()}};
}

// Matrices given as NAME=FILE on the command line, merged over a bundle.
gd::Bundle load_inputs(const std::string& bundle_path, const std::vector<std::string>& matrices,
                       const std::string& theorem, const std::string& lambda) {
  gd::Bundle b;
  if (!bundle_path.empty()) b = gd::read_bundle(bundle_path);
  for (const auto& spec : matrices) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw gd::ParseError("--matrix expects NAME=FILE, got '" + spec + "'");
    b.matrices.insert_or_assign(spec.substr(0, eq), gd::read_matrix_file(spec.substr(eq + 1)));
  }
  if (!theorem.empty()) {
    b.theorem = gd::theorem_from_string(theorem);
  } else if (bundle_path.empty()) {
    throw gd::ParseError("--theorem is required without a bundle");
  }
  if (!lambda.empty()) b.lambda = gd::GaussRational::parse(lambda);
  return b;
}

template <gd::Scalar S>
std::optional<S> lambda_as(const std::optional<gd::GaussRational>& l) {
  if (!l) return std::nullopt;
  return gd::ScalarTraits<S>::from_exact(*l);
}

template <gd::Scalar S>
int run_drazin(const Globals& g, const std::string& file, bool verify_axioms) {
  gd::Matrix<S> m = gd::read_matrix_file(file).as<S>();
  gd::DrazinData<S> d = gd::drazin(m, g.tol());
  json doc = header(g, "drazin");
  doc.update(gd::drazin_to_json(d));
  int code = kOk;
  if (verify_axioms) {
    gd::DrazinAxioms ax = gd::check_drazin_axioms(m, d.dinv, g.tol());
    doc["axioms"] = {{"reflexive", ax.reflexive},         {"commuting", ax.commuting},
                     {"nilpotent_rest", ax.nilpotent_rest}, {"pi_idempotent", ax.pi_idempotent},
                     {"pi_commutes", ax.pi_commutes},     {"a_plus_pi_invertible", ax.a_plus_pi_invertible},
                     {"all", ax.all()}};
    if (!ax.all()) code = kFailed;
  }
  emit(g, doc);
  return code;
}

template <gd::Scalar S>
int run_check(const Globals& g, const gd::Bundle& b) {
  gd::TheoremData<S> data = gd::bundle_data<S>(b, g.tol());
  gd::HypothesisReport<S> rep = gd::check_hypotheses<S>(b.theorem, data, lambda_as<S>(b.lambda), g.tol());
  json doc = header(g, "check");
  doc["report"] = gd::hypothesis_to_json(rep);
  emit(g, doc);
  if (!rep.holds) std::cerr << gd::to_string(b.theorem) << ": condition failed: " << rep.first_failure() << "\n";
  return rep.holds ? kOk : kFailed;
}

template <gd::Scalar S>
int run_apply(const Globals& g, const gd::Bundle& b, gd::Route route, bool strict) {
  gd::TheoremData<S> data = gd::bundle_data<S>(b, g.tol());
  const gd::FormulaOptions opts = g.formula();
  gd::HypothesisReport<S> rep = gd::check_hypotheses<S>(b.theorem, data, lambda_as<S>(b.lambda), opts.tol);
  if (!rep.holds) {
    std::string failed = rep.first_failure();
    throw gd::HypothesisViolation(gd::to_string(b.theorem), failed.empty() ? "no common lambda" : failed);
  }
  gd::FormulaOptions checked = opts;
  checked.unchecked = true;
  gd::FormulaResult<S> res = gd::apply_theorem<S>(b.theorem, data, lambda_as<S>(b.lambda), checked, route);
  gd::Matrix<S> oracle = gd::drazin(gd::target_matrix(data), opts.tol).dinv;
  const bool agree = gd::equal(res.value, oracle, opts.tol);
  json doc = header(g, "apply");
  doc["theorem"] = gd::to_string(b.theorem);
  doc["route"] = route == gd::Route::direct ? "direct" : "delegated";
  doc["hypothesis"] = gd::hypothesis_to_json(rep);
  doc["result"] = gd::matrix_to_json(res.value);
  doc["oracle"] = gd::matrix_to_json(oracle);
  doc["result_digest"] = gd::digest(res.value);
  doc["oracle_digest"] = gd::digest(oracle);
  doc["agree"] = agree;
  doc["max_residual"] = gd::max_abs_diff(res.value, oracle);
  doc["series"] = gd::series_to_json(res.series);
  emit(g, doc);
  if (!agree) {
    std::cerr << "warning: " << gd::to_string(b.theorem) << " formula differs from the Drazin inverse (max residual "
              << gd::max_abs_diff(res.value, oracle) << ")\n";
    if (strict) return kFailed;
  }
  return kOk;
}

int run_verify(const Globals& g, const std::vector<std::string>& suite, const std::vector<std::string>& targets,
               std::size_t count, const std::string& dims, unsigned jobs, std::size_t budget) {
  gd::VerifyOptions o;
  o.families.clear();
  for (const auto& f : suite) o.families.push_back(gd::family_from_string(f));
  if (!targets.empty()) {
    o.g5_targets.clear();
    for (const auto& t : targets) o.g5_targets.push_back(gd::theorem_from_string(t));
  }
  o.count = count;
  o.seed = g.seed;
  auto dash = dims.find('-');
  try {
    o.dim_min = std::stoul(dims.substr(0, dash));
    o.dim_max = dash == std::string::npos ? o.dim_min : std::stoul(dims.substr(dash + 1));
  } catch (const std::exception&) {
    throw gd::ParseError("--dim expects N or MIN-MAX, got '" + dims + "'");
  }
  o.backend = gd::backend_from_string(g.backend);
  o.formula = g.formula();
  o.budget = budget;
  o.jobs = jobs;
  gd::VerifyReport rep = gd::run_verification(o);
  json flags = g.flags();
  flags["dim"] = dims;
  flags["jobs"] = jobs;
  flags["budget"] = budget;
  json doc = gd::verification_to_json(rep, o, flags);
  emit(g, doc);
  const auto& s = rep.summary;
  std::cerr << "verified " << s.total << " instances: " << s.agree << " agree, " << s.disagree << " disagree, "
            << s.errors << " errors (" << s.budget_exhausted << " budget)\n";
  return rep.ok() ? kOk : kFailed;
}

int run_reproduce(const Globals& g) {
  using G = gd::GaussRational;
  using M = gd::ExactMatrix;
  int failures = 0;
  json checks = json::array();
  auto report = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    checks.push_back({{"name", name}, {"pass", ok}});
    if (!ok) ++failures;
  };

  {
    gd::Instance inst = gd::fixture_shift_pierce();
    const auto& in = std::get<gd::PierceInput<G>>(inst.data);
    auto rep = gd::check_hypotheses<G>(gd::Theorem::T31, inst.data);
    report("shift-pierce: T31 hypotheses hold with lambda = 2", rep.holds && rep.lambda == G(2));
    auto res = gd::thm31_pierce(in.x, in.p);
    report("shift-pierce: x^d = 0", res.value.is_zero());
    report("shift-pierce: x^d agrees with the Drazin oracle", res.value == gd::drazin(in.x).dinv);
    auto unit = gd::check_hypotheses<G>(gd::Theorem::T31, inst.data, G(1));
    report("shift-pierce: lambda = 1 fails (a^pi b d != a b)",
           !unit.holds && unit.first_failure() == "a^pi b d = lambda a b");
  }
  {
    gd::Instance inst = gd::fixture_block_2i();
    const auto& in = std::get<gd::BlockInput<G>>(inst.data);
    auto rep = gd::check_hypotheses<G>(gd::Theorem::T43, inst.data);
    bool zero_residuals = true;
    for (const auto& c : rep.conditions) zero_residuals = zero_residuals && c.residual == 0.0;
    report("block-2i: T43 hypotheses hold with lambda = 2i, residuals 0",
           rep.holds && rep.lambda == G(2) * G::i() && zero_residuals);
    const M a_d{{0, 0, -1}, {0, 0, -1}, {0, 0, 1}};
    const M a_pi{{1, 0, 1}, {0, 1, 1}, {0, 0, 0}};
    auto ad = gd::drazin(in.A);
    report("block-2i: A^d and A^pi as printed", ad.dinv == a_d && ad.pi == a_pi);
    M expected(6, 6);
    expected(0, 2) = G(-2);
    expected(1, 2) = G(-2);
    expected(2, 2) = G(2);
    auto res = gd::thm43_block(in);
    report("block-2i: M^d matches the printed matrix", res.value == expected);
    auto unit = gd::check_hypotheses<G>(gd::Theorem::T43, inst.data, G(1));
    report("block-2i: lambda = 1 fails (BD != A^pi A B D^pi)",
           !unit.holds && unit.first_failure() == "BD = lambda A^pi A B D^pi");
    M oracle = gd::drazin(gd::target_matrix(inst.data)).dinv;
    if (!(oracle == res.value)) {
      std::cout << "FINDING block-2i: the printed M^d is not the Drazin inverse of M; the oracle gives "
                << oracle(0, 2).to_compact() << ", " << oracle(1, 2).to_compact() << ", "
                << oracle(2, 2).to_compact() << " in column 3\n";
    }
    checks.push_back({{"name", "block-2i: printed M^d equals the Drazin oracle"},
                      {"pass", oracle == res.value},
                      {"informational", true}});
  }
  if (!g.out.empty()) {
    json doc = header(g, "reproduce");
    doc["checks"] = checks;
    doc["failures"] = failures;
    gd::write_json_file(g.out, doc);
  }
  return failures == 0 ? kOk : kFailed;
}

int run_generate(const Globals& g, const std::string& family, const std::string& target, std::size_t dim,
                 const std::string& lambda, std::size_t budget, bool no_conjugate) {
  gd::GeneratorConfig cfg;
  cfg.family = gd::family_from_string(family);
  cfg.seed = g.seed;
  cfg.dim = dim;
  cfg.budget = budget;
  cfg.conjugate = !no_conjugate;
  if (!target.empty()) cfg.target = gd::theorem_from_string(target);
  if (!lambda.empty()) cfg.lambda = gd::GaussRational::parse(lambda);
  emit(g, gd::bundle_to_json(gd::generate(cfg)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Drazin inverses and representation formulas over Gaussian rationals or complex doubles"};
  app.set_version_flag("--version", std::string(gd::version()));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--backend", g.backend, "exact or approx")->check(CLI::IsMember({"exact", "approx"}));
  app.add_option("--eps-rank", g.eps_rank, "relative singular value cutoff (approx)");
  app.add_option("--eps-eq", g.eps_eq, "equality tolerance (approx)");
  app.add_option("--series-cap", g.series_cap, "hard cap on series terms (0: 4 x matrix size)");
  app.add_option("--seed", g.seed, "generator seed");
  app.add_option("--out", g.out, "write the JSON document here instead of stdout");

  auto* drazin_cmd = app.add_subcommand("drazin", "Drazin inverse, spectral idempotent and index of a matrix");
  std::string matrix_file;
  bool verify_axioms = false;
  drazin_cmd->add_option("matrix", matrix_file, "matrix document")->required();
  drazin_cmd->add_flag("--verify-axioms", verify_axioms, "recheck the defining identities");

  std::string bundle, theorem, lambda, route_name = "direct";
  std::vector<std::string> matrices;
  bool strict = false;
  auto add_inputs = [&](CLI::App* cmd) {
    cmd->add_option("bundle", bundle, "instance bundle (document or directory)");
    cmd->add_option("--theorem", theorem, "L23, T24, T31, C32, T33, C34, T41, C42, T43 or C44");
    cmd->add_option("--matrix", matrices, "NAME=FILE, overrides the bundle");
    cmd->add_option("--lambda", lambda, "force lambda, e.g. 2i or 1/2-3/4i");
  };
  auto* check_cmd = app.add_subcommand("check", "Evaluate a theorem's hypotheses");
  add_inputs(check_cmd);
  auto* apply_cmd = app.add_subcommand("apply", "Evaluate a formula and compare it with the Drazin oracle");
  add_inputs(apply_cmd);
  apply_cmd->add_option("--route", route_name, "corollaries: direct or delegated")
      ->check(CLI::IsMember({"direct", "delegated"}));
  apply_cmd->add_flag("--strict", strict, "exit 1 when the formula disagrees with the oracle");

  auto* verify_cmd = app.add_subcommand("verify", "Generate instances and compare formulas with the oracle");
  std::vector<std::string> suite{"G1", "G2", "G3", "G4"}, targets;
  std::size_t count = 100, budget = 10000;
  std::string dims = "2-6";
  unsigned jobs = 1;
  verify_cmd->add_option("--suite", suite, "families")->delimiter(',');
  verify_cmd->add_option("--targets", targets, "G5 target theorems")->delimiter(',');
  verify_cmd->add_option("--count", count, "instances per family");
  verify_cmd->add_option("--dim", dims, "N or MIN-MAX");
  verify_cmd->add_option("--jobs", jobs, "worker threads");
  verify_cmd->add_option("--budget", budget, "G5 attempt budget");

  app.add_subcommand("reproduce", "Recompute the embedded worked examples");

  auto* gen_cmd = app.add_subcommand("generate", "Write a generated instance bundle");
  std::string family = "G1", target, gen_lambda;
  std::size_t dim = 4;
  bool no_conjugate = false;
  gen_cmd->add_option("--family", family, "G1..G5");
  gen_cmd->add_option("--target", target, "G3 fixture or G5 theorem");
  gen_cmd->add_option("--dim", dim, "matrix size");
  gen_cmd->add_option("--lambda", gen_lambda, "q-commutation scalar for G1, G2, G4");
  gen_cmd->add_option("--budget", budget, "G5 attempt budget");
  gen_cmd->add_flag("--no-conjugate", no_conjugate, "keep p diagonal in Pierce instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    const bool exact = g.backend == "exact";
    (void)g.tol();
    if (drazin_cmd->parsed())
      return exact ? run_drazin<gd::ExactScalar>(g, matrix_file, verify_axioms)
                   : run_drazin<gd::ApproxScalar>(g, matrix_file, verify_axioms);
    if (check_cmd->parsed()) {
      gd::Bundle b = load_inputs(bundle, matrices, theorem, lambda);
      return exact ? run_check<gd::ExactScalar>(g, b) : run_check<gd::ApproxScalar>(g, b);
    }
    if (apply_cmd->parsed()) {
      gd::Bundle b = load_inputs(bundle, matrices, theorem, lambda);
      const gd::Route route = route_name == "delegated" ? gd::Route::delegated : gd::Route::direct;
      return exact ? run_apply<gd::ExactScalar>(g, b, route, strict)
                   : run_apply<gd::ApproxScalar>(g, b, route, strict);
    }
    if (verify_cmd->parsed()) return run_verify(g, suite, targets, count, dims, jobs, budget);
    if (gen_cmd->parsed()) return run_generate(g, family, target, dim, gen_lambda, budget, no_conjugate);
    return run_reproduce(g);
  } catch (const gd::RankAmbiguity& e) {
    std::cerr << "error: numerical rank is ambiguous: " << e.what() << "\n";
    return kRank;
  } catch (const gd::HypothesisViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  } catch (const gd::SeriesCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  } catch (const gd::GeneratorBudgetExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  } catch (const gd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
}
