#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "ddc/casegen.hpp"
#include "ddc/certificate.hpp"
#include "ddc/codim3.hpp"
#include "ddc/errors.hpp"
#include "ddc/recurrence.hpp"
#include "ddc/search.hpp"

namespace py = pybind11;

namespace {

// Exact integers cross the boundary as python ints via their decimal form.
py::int_ to_py(const ddc::Int& v) {
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(ddc::to_decimal(v).c_str(), nullptr, 10));
}

ddc::Int to_int(const py::int_& v) {
  return ddc::from_decimal(py::str(v).cast<std::string>());
}

py::list to_py_list(const std::vector<ddc::Int>& values) {
  py::list out;
  for (const ddc::Int& v : values) out.append(to_py(v));
  return out;
}

std::vector<ddc::Int> to_int_vector(const py::sequence& seq) {
  std::vector<ddc::Int> out;
  out.reserve(seq.size());
  for (const auto& item : seq) out.push_back(to_int(py::cast<py::int_>(item)));
  return out;
}

ddc::SearchOptions make_options(const std::string& bound_variant, bool huh_filter,
                                int threads, bool evidence) {
  ddc::SearchOptions options;
  options.bound_variant = ddc::bound_variant_from_string(bound_variant);
  options.huh_filter = huh_filter;
  options.worker_count = threads;
  options.evidence = evidence;
  return options;
}

py::dict candidate_dict(const ddc::Candidate& cand) {
  py::dict d;
  d["c"] = to_py_list(cand.c);
  d["n"] = cand.n;
  d["r"] = cand.r;
  d["degree"] = to_py(cand.degree);
  d["s_evidence"] = to_py_list(cand.s_evidence);
  d["delta_evidence"] = to_py_list(cand.delta_evidence);
  d["huh_rejected"] = cand.huh_rejected;
  d["rejected_by"] = cand.rejected_by ? py::object(py::str(*cand.rejected_by))
                                      : py::object(py::none());
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact search for positive-defect Chern tuples and their certificates";

  py::register_exception<ddc::ConstraintError>(m, "ConstraintError", PyExc_ValueError);
  py::register_exception<ddc::ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  m.attr("__version__") = ddc::kToolVersion;

  m.def(
      "segre_sequence",
      [](const py::sequence& coeffs, long last_index) {
        return to_py_list(ddc::segre_sequence(ddc::Coefficients(to_int_vector(coeffs)),
                                              last_index));
      },
      py::arg("coeffs"), py::arg("last_index"),
      "s_0..s_last_index of the Segre recurrence driven by (c_1, ..., c_m)");

  m.def(
      "check_pattern",
      [](const py::sequence& coeffs, long n, long r) {
        ddc::SegreTerms evidence;
        const auto verdict =
            ddc::check_pattern(ddc::Coefficients(to_int_vector(coeffs)), n, r, &evidence);
        py::dict d;
        d["accepted"] = verdict.accepted;
        d["violation_index"] = verdict.violation_index
                                   ? py::object(py::int_(*verdict.violation_index))
                                   : py::object(py::none());
        d["violation_kind"] = verdict.violation_kind
                                  ? py::object(py::str(to_string(*verdict.violation_kind)))
                                  : py::object(py::none());
        d["evidence"] = to_py_list(evidence);
        return d;
      },
      py::arg("coeffs"), py::arg("n"), py::arg("r"),
      "tests s_j > 0 for j <= n-r and s_j = 0 for n-r < j <= n");

  m.def(
      "admissible_case",
      [](int N, int m) {
        const auto cs = ddc::admissible_case(N, m);
        py::dict d;
        d["N"] = cs.N;
        d["m"] = cs.m;
        d["n"] = cs.n;
        return d;
      },
      py::arg("N"), py::arg("m"));

  m.def(
      "defect_branches",
      [](int N, int m) {
        py::list out;
        for (const auto& branch : ddc::defect_branches(ddc::admissible_case(N, m))) {
          out.append(py::make_tuple(branch.r, branch.c1));
        }
        return out;
      },
      py::arg("N"), py::arg("m"), "list of (r, c1) defect branches");

  m.def(
      "chern_bounds",
      [](int c1, int m, const std::string& variant) {
        return to_py_list(ddc::chern_bounds(c1, m, ddc::bound_variant_from_string(variant))
                              .static_bounds);
      },
      py::arg("c1"), py::arg("m"), py::arg("variant") = "plain",
      "static bounds B_2..B_m (= c1^j)");

  m.def(
      "log_concavity_ok",
      [](const py::sequence& coeffs) { return ddc::log_concavity_ok(to_int_vector(coeffs)); },
      py::arg("coeffs"));

  m.def(
      "positivity_filter_violation",
      [](const py::sequence& coeffs, long n) -> py::object {
        const auto violation = ddc::positivity_filter_violation(to_int_vector(coeffs), n);
        return violation ? py::object(py::str(*violation)) : py::object(py::none());
      },
      py::arg("coeffs"), py::arg("n"),
      "first violated positivity constraint (log-concavity or a Schur "
      "determinant with |partition| <= n), or None");

  m.def(
      "degree_bound",
      [](int N, int m, int r) { return to_py(ddc::degree_bound(N, m, r)); },
      py::arg("N"), py::arg("m"), py::arg("r"));

  m.def(
      "degree_of",
      [](const py::sequence& coeffs) { return to_py(ddc::degree_of(to_int_vector(coeffs))); },
      py::arg("coeffs"));

  m.def(
      "search_raw",
      [](int m, int c1, long n, long r, const std::string& bound_variant, bool huh_filter,
         int threads, bool evidence) {
        const auto candidates = ddc::search_raw(
            m, c1, n, r, make_options(bound_variant, huh_filter, threads, evidence));
        py::list out;
        for (const auto& cand : candidates) out.append(candidate_dict(cand));
        return out;
      },
      py::arg("m"), py::arg("c1"), py::arg("n"), py::arg("r"),
      py::arg("bound_variant") = "chained", py::arg("huh_filter") = true,
      py::arg("threads") = 1, py::arg("evidence") = true);

  m.def(
      "run_case",
      [](int N, int m, const std::string& bound_variant, bool huh_filter, int threads,
         bool evidence) {
        const auto cert =
            ddc::run_case(ddc::admissible_case(N, m),
                          make_options(bound_variant, huh_filter, threads, evidence));
        return ddc::certificate_to_string(cert);
      },
      py::arg("N"), py::arg("m"), py::arg("bound_variant") = "chained",
      py::arg("huh_filter") = true, py::arg("threads") = 1, py::arg("evidence") = true,
      "runs every defect branch and returns the certificate as a JSON string");

  m.def(
      "u_sequence",
      [](long c1, long c2, long c3, long last_index) {
        return to_py_list(ddc::u_sequence(c1, c2, c3, last_index).terms);
      },
      py::arg("c1"), py::arg("c2"), py::arg("c3"), py::arg("last_index"));

  m.def(
      "find_double_zero",
      [](long c1, long c2, long c3, long horizon) -> py::object {
        const auto m_ = ddc::find_double_zero(c1, c2, c3, horizon);
        return m_ ? py::object(py::int_(*m_)) : py::object(py::none());
      },
      py::arg("c1"), py::arg("c2"), py::arg("c3"), py::arg("horizon") = 60);

  m.def(
      "verify_lemma_structure",
      [](long c1, long c2, long c3, long m_) {
        const auto report = ddc::verify_lemma_structure(c1, c2, c3, m_);
        py::dict d;
        d["m"] = report.m;
        d["d"] = to_py(report.d);
        d["root"] = report.root ? py::object(to_py(*report.root)) : py::object(py::none());
        d["divides"] = report.divides;
        d["classified"] = report.classified;
        d["anomaly"] = report.anomaly ? py::object(py::str(*report.anomaly))
                                      : py::object(py::none());
        return d;
      },
      py::arg("c1"), py::arg("c2"), py::arg("c3"), py::arg("m"));

  m.def(
      "integer_nth_root",
      [](const py::int_& d, unsigned long m_) -> py::object {
        const auto root = ddc::integer_nth_root(to_int(d), m_);
        return root ? py::object(to_py(*root)) : py::object(py::none());
      },
      py::arg("d"), py::arg("m"));

  m.def(
      "poly_divide",
      [](const py::sequence& dividend, const py::sequence& divisor) {
        const auto [quot, rem] =
            ddc::poly_divide(ddc::Polynomial::from_coeffs(to_int_vector(dividend)),
                             ddc::Polynomial::from_coeffs(to_int_vector(divisor)));
        return py::make_tuple(to_py_list(quot.coeffs), to_py_list(rem.coeffs));
      },
      py::arg("dividend"), py::arg("divisor"),
      "ascending-coefficient division by a monic divisor: (quotient, remainder)");

  m.def(
      "brute_force_classify",
      [](long cmax, long horizon) {
        py::dict out;
        for (const auto& [triple, m_] : ddc::brute_force_classify(cmax, horizon)) {
          out[py::make_tuple(triple[0], triple[1], triple[2])] = m_;
        }
        return out;
      },
      py::arg("cmax"), py::arg("horizon") = 60);

  m.def(
      "deduce_odd_case",
      [](int N) {
        const auto d = ddc::deduce_odd_case(N);
        py::dict out;
        out["N"] = d.N;
        out["n"] = d.n;
        out["r"] = d.r;
        out["pattern_index"] = d.pattern_index;
        out["excluded"] = d.excluded;
        return out;
      },
      py::arg("N"));
}
