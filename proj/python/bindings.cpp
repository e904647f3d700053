#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gdrazin/verify.hpp"

namespace py = pybind11;
namespace gd = gdrazin;
using gd::json;

namespace {

gd::Tolerance tolerance(double eps_rank, double eps_eq) {
  gd::Tolerance t{eps_rank, eps_eq};
  t.validate();
  return t;
}

template <gd::Scalar S>
std::optional<S> lambda_of(const gd::Bundle& b, const std::optional<std::string>& forced) {
  if (forced) return gd::ScalarTraits<S>::from_exact(gd::GaussRational::parse(*forced));
  if (b.lambda) return gd::ScalarTraits<S>::from_exact(*b.lambda);
  return std::nullopt;
}

template <gd::Scalar S>
json drazin_doc(const json& doc, const gd::Tolerance& tol) {
  gd::Matrix<S> m = gd::matrix_from_json(doc).as<S>();
  return gd::drazin_to_json(gd::drazin(m, tol));
}

template <gd::Scalar S>
json check_doc(const gd::Bundle& b, const std::optional<std::string>& lambda, const gd::Tolerance& tol) {
  auto data = gd::bundle_data<S>(b, tol);
  return gd::hypothesis_to_json(gd::check_hypotheses<S>(b.theorem, data, lambda_of<S>(b, lambda), tol));
}

template <gd::Scalar S>
json apply_doc(const gd::Bundle& b, const std::optional<std::string>& lambda, const gd::FormulaOptions& opts,
               gd::Route route) {
  auto data = gd::bundle_data<S>(b, opts.tol);
  const auto lam = lambda_of<S>(b, lambda);
  json hyp = gd::hypothesis_to_json(gd::check_hypotheses<S>(b.theorem, data, lam, opts.tol));
  gd::FormulaResult<S> res = gd::apply_theorem<S>(b.theorem, data, lam, opts, route);
  gd::Matrix<S> oracle = gd::drazin(gd::target_matrix(data), opts.tol).dinv;
  return {{"theorem", gd::to_string(b.theorem)},
          {"result", gd::matrix_to_json(res.value)},
          {"oracle", gd::matrix_to_json(oracle)},
          {"agree", gd::equal(res.value, oracle, opts.tol)},
          {"max_residual", gd::max_abs_diff(res.value, oracle)},
          {"hypothesis", std::move(hyp)},
          {"series", gd::series_to_json(res.series)}};
}

bool is_exact(const std::string& backend) { return gd::backend_from_string(backend) == gd::Backend::exact; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Drazin inverses and hypothesis-checked representation formulas";

  auto base = py::register_exception<gd::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<gd::DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<gd::BackendMismatch>(m, "BackendMismatch", base.ptr());
  py::register_exception<gd::ValueError>(m, "ValueError", base.ptr());
  py::register_exception<gd::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<gd::RankAmbiguity>(m, "RankAmbiguity", base.ptr());
  py::register_exception<gd::NotIdempotent>(m, "NotIdempotent", base.ptr());
  py::register_exception<gd::HypothesisViolation>(m, "HypothesisViolation", base.ptr());
  py::register_exception<gd::SeriesCapExceeded>(m, "SeriesCapExceeded", base.ptr());
  py::register_exception<gd::GeneratorBudgetExhausted>(m, "GeneratorBudgetExhausted", base.ptr());

  m.def("version", [] { return std::string(gd::version()); });

  m.def(
      "drazin",
      [](const std::string& doc, const std::string& backend, double eps_rank, double eps_eq) {
        const json in = json::parse(doc);
        const auto tol = tolerance(eps_rank, eps_eq);
        return (is_exact(backend) ? drazin_doc<gd::ExactScalar>(in, tol) : drazin_doc<gd::ApproxScalar>(in, tol))
            .dump();
      },
      py::arg("matrix"), py::arg("backend") = "exact", py::arg("eps_rank") = 1e-10, py::arg("eps_eq") = 1e-9);

  m.def(
      "check",
      [](const std::string& bundle, std::optional<std::string> lambda, const std::string& backend, double eps_rank,
         double eps_eq) {
        const gd::Bundle b = gd::bundle_from_json(json::parse(bundle));
        const auto tol = tolerance(eps_rank, eps_eq);
        return (is_exact(backend) ? check_doc<gd::ExactScalar>(b, lambda, tol)
                                  : check_doc<gd::ApproxScalar>(b, lambda, tol))
            .dump();
      },
      py::arg("bundle"), py::arg("lambda_") = py::none(), py::arg("backend") = "exact", py::arg("eps_rank") = 1e-10,
      py::arg("eps_eq") = 1e-9);

  m.def(
      "apply",
      [](const std::string& bundle, std::optional<std::string> lambda, const std::string& backend,
         const std::string& route, std::size_t series_cap, double eps_rank, double eps_eq) {
        const gd::Bundle b = gd::bundle_from_json(json::parse(bundle));
        gd::FormulaOptions opts;
        opts.tol = tolerance(eps_rank, eps_eq);
        opts.series_cap = series_cap;
        if (route != "direct" && route != "delegated") throw gd::ValueError("route must be direct or delegated");
        const gd::Route r = route == "direct" ? gd::Route::direct : gd::Route::delegated;
        return (is_exact(backend) ? apply_doc<gd::ExactScalar>(b, lambda, opts, r)
                                  : apply_doc<gd::ApproxScalar>(b, lambda, opts, r))
            .dump();
      },
      py::arg("bundle"), py::arg("lambda_") = py::none(), py::arg("backend") = "exact", py::arg("route") = "direct",
      py::arg("series_cap") = 0, py::arg("eps_rank") = 1e-10, py::arg("eps_eq") = 1e-9);

  m.def(
      "generate",
      [](const std::string& family, std::uint64_t seed, std::size_t dim, std::optional<std::string> target,
         std::optional<std::string> lambda, std::size_t budget) {
        gd::GeneratorConfig cfg;
        cfg.family = gd::family_from_string(family);
        cfg.seed = seed;
        cfg.dim = dim;
        cfg.budget = budget;
        if (target) cfg.target = gd::theorem_from_string(*target);
        if (lambda) cfg.lambda = gd::GaussRational::parse(*lambda);
        return gd::bundle_to_json(gd::generate(cfg)).dump();
      },
      py::arg("family"), py::arg("seed") = 0, py::arg("dim") = 4, py::arg("target") = py::none(),
      py::arg("lambda_") = py::none(), py::arg("budget") = 10000);

  m.def(
      "verify",
      [](const std::vector<std::string>& families, std::size_t count, std::uint64_t seed, std::size_t dim_min,
         std::size_t dim_max, const std::string& backend, unsigned jobs) {
        gd::VerifyOptions o;
        o.families.clear();
        for (const auto& f : families) o.families.push_back(gd::family_from_string(f));
        o.count = count;
        o.seed = seed;
        o.dim_min = dim_min;
        o.dim_max = dim_max;
        o.backend = gd::backend_from_string(backend);
        o.jobs = jobs;
        gd::VerifyReport rep;
        {
          py::gil_scoped_release release;
          rep = gd::run_verification(o);
        }
        return gd::verification_to_json(rep, o).dump();
      },
      py::arg("families"), py::arg("count") = 10, py::arg("seed") = 0, py::arg("dim_min") = 2,
      py::arg("dim_max") = 6, py::arg("backend") = "exact", py::arg("jobs") = 1);
}
