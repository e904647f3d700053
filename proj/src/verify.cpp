#include "gdrazin/verify.hpp"

#include <atomic>
#include <thread>

namespace gdrazin {

namespace {

struct Job {
  Family family;
  GeneratorConfig cfg;
};

template <Scalar S>
void evaluate(const Instance& inst, const FormulaOptions& opts, VerifyRecord& rec) {
  const Tolerance& tol = opts.tol;
  TheoremData<S> data = convert_data<S>(inst.data);
  HypothesisReport<S> rep = check_hypotheses<S>(inst.theorem, data, std::nullopt, tol);
  rec.hypothesis = hypothesis_to_json(rep);
  if (!rep.holds) {
    rec.error_kind = "hypothesis";
    rec.error = "condition failed: " + rep.first_failure();
    return;
  }
  const Matrix<S> target = target_matrix(data);
  const Matrix<S> oracle = drazin(target, tol).dinv;
  FormulaOptions fo = opts;
  fo.unchecked = true;  // checked above
  FormulaResult<S> res = apply_theorem<S>(inst.theorem, data, std::nullopt, fo, Route::direct);
  rec.series = res.series;
  rec.formula_digest = digest(res.value);
  rec.oracle_digest = digest(oracle);
  rec.max_residual = max_abs_diff(res.value, oracle);
  rec.agree = equal(res.value, oracle, tol);
  if (is_corollary(inst.theorem)) {
    FormulaResult<S> del = apply_theorem<S>(inst.theorem, data, std::nullopt, fo, Route::delegated);
    for (const auto& [name, st] : del.series) rec.series["delegated." + name] = st;
    rec.routes_agree = equal(del.value, res.value, tol);
    rec.delegated_agree = equal(del.value, oracle, tol);
  }
}

}  // namespace

VerifyRecord verify_instance(const Instance& inst, Backend backend, const FormulaOptions& opts) {
  VerifyRecord rec;
  rec.id = inst.id;
  rec.family = inst.family;
  rec.theorem = inst.theorem;
  rec.seed = inst.seed;
  rec.dim = target_matrix(inst.data).rows();
  rec.attempts = inst.attempts;
  try {
    if (backend == Backend::exact) {
      evaluate<ExactScalar>(inst, opts, rec);
    } else {
      evaluate<ApproxScalar>(inst, opts, rec);
    }
  } catch (const SeriesCapExceeded& e) {
    rec.error_kind = "series_cap";
    rec.error = e.what();
  } catch (const RankAmbiguity& e) {
    rec.error_kind = "rank";
    rec.error = e.what();
  } catch (const Error& e) {
    rec.error_kind = "other";
    rec.error = e.what();
  }
  return rec;
}

VerifyReport run_verification(const VerifyOptions& opts) {
  if (opts.dim_min < 2 || opts.dim_max < opts.dim_min) throw ValueError("dimension range must satisfy 2 <= min <= max");
  opts.formula.tol.validate();
  std::vector<Job> jobs;
  for (Family f : opts.families) {
    const std::size_t n = f == Family::G3 ? std::min<std::size_t>(opts.count, 2) : opts.count;
    if (f == Family::G5 && opts.g5_targets.empty()) throw ValueError("G5 needs at least one target theorem");
    for (std::size_t i = 0; i < n; ++i) {
      GeneratorConfig cfg;
      cfg.family = f;
      cfg.seed = opts.seed + i;
      cfg.dim = opts.dim_min + i % (opts.dim_max - opts.dim_min + 1);
      cfg.budget = opts.budget;
      if (f == Family::G3) cfg.target = i == 0 ? Theorem::T31 : Theorem::T43;
      if (f == Family::G5) cfg.target = opts.g5_targets[i % opts.g5_targets.size()];
      jobs.push_back({f, cfg});
    }
  }

  VerifyReport report;
  report.records.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      const GeneratorConfig& cfg = jobs[k].cfg;
      VerifyRecord& rec = report.records[k];
      try {
        rec = verify_instance(generate(cfg), opts.backend, opts.formula);
      } catch (const GeneratorBudgetExhausted& e) {
        rec.family = cfg.family;
        rec.theorem = cfg.target;
        rec.seed = cfg.seed;
        rec.dim = cfg.dim;
        rec.attempts = cfg.budget;
        rec.error_kind = "budget";
        rec.error = e.what();
      } catch (const Error& e) {
        rec.family = cfg.family;
        rec.seed = cfg.seed;
        rec.dim = cfg.dim;
        rec.error_kind = "other";
        rec.error = e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(jobs.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  VerifySummary& s = report.summary;
  s.total = report.records.size();
  for (const auto& rec : report.records) {
    if (!rec.evaluated()) {
      ++s.errors;
      if (rec.error_kind == "budget") ++s.budget_exhausted;
    } else if (rec.agree) {
      ++s.agree;
    } else {
      ++s.disagree;
    }
    if (rec.routes_agree && !*rec.routes_agree) ++s.route_mismatches;
    if (rec.delegated_agree && !*rec.delegated_agree) ++s.delegated_disagree;
    for (const auto& [name, st] : rec.series) {
      s.max_series_terms = std::max(s.max_series_terms, st.terms);
      if (st.terms > rec.dim) s.series_within_size = false;
      if (st.capped) s.series_capped = true;
    }
    if (rec.error_kind == "series_cap") s.series_capped = true;
  }
  return report;
}

json verification_to_json(const VerifyReport& report, const VerifyOptions& opts, const json& flags) {
  json records = json::array();
  for (const auto& r : report.records) {
    json rec = {{"id", r.id},
                {"family", to_string(r.family)},
                {"seed", r.seed},
                {"dim", r.dim},
                {"attempts", r.attempts},
                {"agree", r.agree},
                {"max_residual", r.max_residual},
                {"series", series_to_json(r.series)}};
    rec["theorem"] = r.theorem ? json(to_string(*r.theorem)) : json(nullptr);
    rec["hypothesis"] = r.hypothesis.is_null() ? json(nullptr) : r.hypothesis;
    rec["formula_digest"] = r.formula_digest.empty() ? json(nullptr) : json(r.formula_digest);
    rec["oracle_digest"] = r.oracle_digest.empty() ? json(nullptr) : json(r.oracle_digest);
    rec["routes_agree"] = r.routes_agree ? json(*r.routes_agree) : json(nullptr);
    rec["delegated_agree"] = r.delegated_agree ? json(*r.delegated_agree) : json(nullptr);
    rec["error"] = r.error_kind.empty() ? json(nullptr) : json({{"kind", r.error_kind}, {"message", r.error}});
    records.push_back(std::move(rec));
  }
  const VerifySummary& s = report.summary;
  json families = json::array();
  for (Family f : opts.families) families.push_back(to_string(f));
  return {{"version", version()},
          {"seed", opts.seed},
          {"backend", to_string(opts.backend)},
          {"families", std::move(families)},
          {"count", opts.count},
          {"flags", flags},
          {"summary",
           {{"total", s.total},
            {"agree", s.agree},
            {"disagree", s.disagree},
            {"errors", s.errors},
            {"budget_exhausted", s.budget_exhausted},
            {"route_mismatches", s.route_mismatches},
            {"delegated_disagree", s.delegated_disagree},
            {"max_series_terms", s.max_series_terms},
            {"series_within_size", s.series_within_size},
            {"series_capped", s.series_capped}}},
          {"records", std::move(records)}};
}

}  // namespace gdrazin
