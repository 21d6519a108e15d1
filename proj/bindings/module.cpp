#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "procunc/harness.hpp"

namespace py = pybind11;
using namespace procunc;

namespace {

SystemShape shape_from_list(const std::vector<Index>& dims) {
  return SystemShape{dims};
}

std::vector<int> keep_list(const std::vector<int>& keep) { return keep; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Uncertainty relations for quantum processes: process-POVM effects, "
            "Rényi bounds from tester overlaps, and majorization bound synthesis "
            "via conditional-min-entropy SDPs";

  // ---- operator algebra ----
  m.def("tensor", &tensor, py::arg("a"), py::arg("b"));
  m.def(
      "partial_trace",
      [](const Matrix& op, const std::vector<Index>& dims, const std::vector<int>& keep) {
        return partial_trace(op, shape_from_list(dims), keep_list(keep));
      },
      py::arg("op"), py::arg("dims"), py::arg("keep"));
  m.def(
      "partial_transpose",
      [](const Matrix& op, const std::vector<Index>& dims, int target) {
        return partial_transpose(op, shape_from_list(dims), target);
      },
      py::arg("op"), py::arg("dims"), py::arg("target"));
  m.def("psd_sqrt", &psd_sqrt, py::arg("op"));
  m.def("operator_norm", &operator_norm, py::arg("op"));
  m.def("max_eig", &max_eig, py::arg("op"));
  m.def("min_eig", &min_eig, py::arg("op"));
  m.def("phi_plus", &phi_plus, py::arg("d"));

  // ---- channels ----
  py::class_<DensityOperator>(m, "DensityOperator")
      .def(py::init([](const Matrix& mat, const std::vector<Index>& dims) {
             return DensityOperator::make(mat, shape_from_list(dims));
           }),
           py::arg("matrix"), py::arg("dims"))
      .def(py::init([](const Matrix& mat) { return DensityOperator::make(mat); }),
           py::arg("matrix"))
      .def_property_readonly("matrix", [](const DensityOperator& s) { return s.op; })
      .def_property_readonly("dims", [](const DensityOperator& s) { return s.shape.dims; });

  py::class_<Povm>(m, "Povm")
      .def(py::init([](const std::vector<Matrix>& effects, const std::vector<Index>& dims) {
             return Povm::make(effects, shape_from_list(dims));
           }),
           py::arg("effects"), py::arg("dims"))
      .def_property_readonly("effects", [](const Povm& p) { return p.effects; })
      .def_property_readonly("dims", [](const Povm& p) { return p.shape.dims; });

  py::class_<QuantumChannel>(m, "QuantumChannel")
      .def_static("from_kraus", &QuantumChannel::from_kraus, py::arg("kraus"),
                  py::arg("d_in"), py::arg("d_out"))
      .def_static("from_choi", &QuantumChannel::from_choi, py::arg("choi"),
                  py::arg("d_in"), py::arg("d_out"))
      .def_readonly("d_in", &QuantumChannel::d_in)
      .def_readonly("d_out", &QuantumChannel::d_out)
      .def_readonly("choi", &QuantumChannel::choi)
      .def_property_readonly("kraus", [](const QuantumChannel& c) { return c.kraus; });

  py::class_<CptpReport>(m, "CptpReport")
      .def_readonly("cp_residual", &CptpReport::cp_residual)
      .def_readonly("tp_residual", &CptpReport::tp_residual)
      .def_readonly("rep_residual", &CptpReport::rep_residual)
      .def("ok", &CptpReport::ok);

  m.def("choi_from_kraus", &choi_from_kraus, py::arg("kraus"), py::arg("d_in"),
        py::arg("d_out"));
  m.def("kraus_from_choi", &kraus_from_choi, py::arg("choi"), py::arg("d_in"),
        py::arg("d_out"), py::arg("threshold") = 1e-12);
  m.def("validate_cptp", &validate_cptp, py::arg("channel"));
  m.def("apply", &apply, py::arg("channel"), py::arg("state"));
  m.def(
      "random_cptp",
      [](Index d_in, Index d_out, Index env_dim, std::uint64_t seed) {
        return random_cptp(d_in, d_out, env_dim, seed);
      },
      py::arg("d_in"), py::arg("d_out"), py::arg("env_dim"), py::arg("seed"));
  m.def("state_prep_channel", &state_prep_channel, py::arg("rho"));

  // ---- testers ----
  py::class_<Tester>(m, "Tester")
      .def_readonly("d_R", &Tester::d_R)
      .def_readonly("d_A", &Tester::d_A)
      .def_readonly("d_B", &Tester::d_B)
      .def_property_readonly("effects", [](const Tester& t) { return t.effects; })
      .def_property_readonly("reduced_input",
                             [](const Tester& t) { return t.reduced_input; });

  py::class_<ExtendedTester>(m, "ExtendedTester")
      .def_property_readonly("effects",
                             [](const ExtendedTester& t) { return t.effects; });

  py::class_<OverlapTable>(m, "OverlapTable")
      .def_readonly("entries", &OverlapTable::entries)
      .def_readonly("max_overlap", &OverlapTable::max_overlap)
      .def("max_excluding_complement", &OverlapTable::max_excluding_complement);

  m.def("build_tester", &build_tester, py::arg("input_state"), py::arg("povm"));
  m.def("extend", &extend, py::arg("tester"));
  m.def(
      "probabilities",
      [](const Tester& t, const QuantumChannel& ch) {
        return probabilities(t, ch).entries;
      },
      py::arg("tester"), py::arg("channel"));
  m.def("overlap_table", &overlap_table, py::arg("t1"), py::arg("t2"));
  m.def(
      "state_case_tester", &state_case_tester, py::arg("povm"));
  m.def(
      "random_tester",
      [](Index d_R, Index d_A, Index d_B, Index outcomes, std::uint64_t seed) {
        Rng rng(seed);
        return random_tester(d_R, d_A, d_B, outcomes, rng);
      },
      py::arg("d_R"), py::arg("d_A"), py::arg("d_B"), py::arg("outcomes"),
      py::arg("seed"));

  // ---- entropy / SDP ----
  m.def(
      "renyi_entropy",
      [](const std::vector<double>& p, double alpha, double total) {
        return renyi_entropy(ProbVector::make(p, total), alpha);
      },
      py::arg("p"), py::arg("alpha"), py::arg("total") = 1.0);
  m.def("shannon_entropy", &shannon_entropy, py::arg("x"));
  m.attr("inf_order") = kInfiniteOrder;

  py::class_<MuRelationReport>(m, "MuRelationReport")
      .def_readonly("lhs", &MuRelationReport::lhs)
      .def_readonly("rhs", &MuRelationReport::rhs)
      .def_readonly("slack", &MuRelationReport::slack)
      .def_readonly("overlap", &MuRelationReport::overlap)
      .def_readonly("padded_p", &MuRelationReport::padded_p)
      .def_readonly("padded_q", &MuRelationReport::padded_q);
  m.def("mu_relation", &mu_relation, py::arg("t1"), py::arg("t2"), py::arg("channel"),
        py::arg("alpha"), py::arg("beta"));

  py::enum_<SdpStatus>(m, "SdpStatus")
      .value("Solved", SdpStatus::Solved)
      .value("Infeasible", SdpStatus::Infeasible)
      .value("NumericalFailure", SdpStatus::NumericalFailure);

  py::class_<SdpResult>(m, "SdpResult")
      .def_readonly("value", &SdpResult::value)
      .def_readonly("optimizer", &SdpResult::optimizer)
      .def_readonly("duality_gap", &SdpResult::duality_gap)
      .def_readonly("feasibility_residual", &SdpResult::feasibility_residual)
      .def_readonly("status", &SdpResult::status)
      .def_readonly("hmin_infinite", &SdpResult::hmin_infinite)
      .def("hmin", &SdpResult::hmin);
  m.def("hmin_exp_dual", &hmin_exp_dual, py::arg("W"), py::arg("d_A"), py::arg("d_B"));
  m.def("hmin_exp_primal", &hmin_exp_primal, py::arg("W"), py::arg("d_A"), py::arg("d_B"));

  // ---- majorization ----
  m.def(
      "majorizes",
      [](const std::vector<double>& y, const std::vector<double>& x) {
        return majorizes(y, x);
      },
      py::arg("y"), py::arg("x"), "True iff x ≺ y");
  m.def(
      "weak_majorizes",
      [](const std::vector<double>& y, const std::vector<double>& x) {
        return weak_majorizes(y, x);
      },
      py::arg("y"), py::arg("x"));
  m.def(
      "flatness",
      [](const std::vector<double>& x) { return flatness(x).entries; },
      py::arg("x"));
  m.def("flatness_trace", &flatness_trace, py::arg("x"));
  m.def(
      "lattice_bounds",
      [](const std::vector<std::vector<double>>& vectors) {
        std::vector<SortedVector> set;
        set.reserve(vectors.size());
        for (const auto& v : vectors) set.push_back(SortedVector::make(v));
        LatticeBounds b = lattice_bounds(set);
        return py::make_tuple(b.glb.entries, b.lub.entries, b.b_raw);
      },
      py::arg("vectors"), "Returns (glb, lub, b_raw)");

  py::class_<BoundVectors>(m, "BoundVectors")
      .def_readonly("m", &BoundVectors::m)
      .def_readonly("n", &BoundVectors::n)
      .def_readonly("s_cumulative", &BoundVectors::s_cumulative)
      .def_readonly("s", &BoundVectors::s)
      .def_readonly("s_flat", &BoundVectors::s_flat)
      .def_readonly("t_cumulative", &BoundVectors::t_cumulative)
      .def_readonly("t", &BoundVectors::t)
      .def_readonly("t_flat", &BoundVectors::t_flat)
      .def_readonly("argmax_subsets", &BoundVectors::argmax_subsets)
      .def_readonly("sdp_gaps", &BoundVectors::sdp_gaps);
  m.def(
      "compute_bounds",
      [](const Tester& t1, const Tester& t2, int enumeration_cap, int threads) {
        SVectorOptions opts;
        opts.enumeration_cap = enumeration_cap;
        opts.threads = threads;
        return compute_bounds(t1, t2, opts);
      },
      py::arg("t1"), py::arg("t2"), py::arg("enumeration_cap") = 16,
      py::arg("threads") = 1);

  py::class_<UurReport>(m, "UurReport")
      .def_readonly("oplus_vs_s", &UurReport::oplus_vs_s)
      .def_readonly("oplus_vs_flat_s", &UurReport::oplus_vs_flat_s)
      .def_readonly("otimes_vs_t", &UurReport::otimes_vs_t)
      .def_readonly("otimes_vs_flat_t", &UurReport::otimes_vs_flat_t)
      .def_readonly("flat_s_vs_sorted_s", &UurReport::flat_s_vs_sorted_s)
      .def_readonly("flat_t_vs_sorted_t", &UurReport::flat_t_vs_sorted_t)
      .def("worst", &UurReport::worst);
  m.def(
      "uur_check",
      [](const std::vector<double>& p, const std::vector<double>& q,
         const BoundVectors& bounds) {
        return uur_check(ProbVector::make(p, 1.0), ProbVector::make(q, 1.0), bounds);
      },
      py::arg("p"), py::arg("q"), py::arg("bounds"));
  m.def(
      "schur_concave_eval",
      [](const std::string& name, const std::vector<double>& x, double alpha) {
        return schur_concave_eval(functional_from_name(name), x, alpha);
      },
      py::arg("name"), py::arg("x"), py::arg("alpha") = 1.0);

  // ---- harness ----
  py::class_<ToleranceSet>(m, "ToleranceSet")
      .def(py::init<>())
      .def_readwrite("mu_slack", &ToleranceSet::mu_slack)
      .def_readwrite("uur_slack", &ToleranceSet::uur_slack)
      .def_readwrite("tightness_gap", &ToleranceSet::tightness_gap);

  py::class_<CampaignConfig>(m, "CampaignConfig")
      .def(py::init<>())
      .def_readwrite("seed", &CampaignConfig::seed)
      .def_readwrite("samples", &CampaignConfig::samples)
      .def_readwrite("d_R", &CampaignConfig::d_R)
      .def_readwrite("d_A", &CampaignConfig::d_A)
      .def_readwrite("d_B", &CampaignConfig::d_B)
      .def_readwrite("env_dim", &CampaignConfig::env_dim)
      .def_property(
          "alpha_beta_pairs",
          [](const CampaignConfig& c) {
            std::vector<std::pair<double, double>> out;
            for (const auto& ab : c.alpha_beta_pairs) out.push_back({ab.alpha, ab.beta});
            return out;
          },
          [](CampaignConfig& c, const std::vector<std::pair<double, double>>& pairs) {
            c.alpha_beta_pairs.clear();
            for (const auto& [a, b] : pairs) c.alpha_beta_pairs.push_back({a, b});
          })
      .def_readwrite("tolerances", &CampaignConfig::tolerances)
      .def_readwrite("enumeration_cap", &CampaignConfig::enumeration_cap)
      .def_readwrite("threads", &CampaignConfig::threads)
      .def_readwrite("run_tightness", &CampaignConfig::run_tightness)
      .def_readwrite("run_conjecture", &CampaignConfig::run_conjecture)
      .def_readwrite("conjecture_terms", &CampaignConfig::conjecture_terms)
      .def_readwrite("overlap_exclude_complement",
                     &CampaignConfig::overlap_exclude_complement);

  py::class_<Violation>(m, "Violation")
      .def_readonly("kind", &Violation::kind)
      .def_readonly("sample", &Violation::sample)
      .def_readonly("seed", &Violation::seed)
      .def_readonly("slack", &Violation::slack)
      .def_readonly("detail", &Violation::detail);

  py::class_<PairSlackSummary>(m, "PairSlackSummary")
      .def_readonly("alpha", &PairSlackSummary::alpha)
      .def_readonly("beta", &PairSlackSummary::beta)
      .def_readonly("min_slack", &PairSlackSummary::min_slack)
      .def_readonly("argmin_sample", &PairSlackSummary::argmin_sample)
      .def_readonly("violations", &PairSlackSummary::violations);

  py::class_<TightnessReport>(m, "TightnessReport")
      .def_readonly("gaps", &TightnessReport::gaps)
      .def_readonly("max_abs_gap", &TightnessReport::max_abs_gap);

  py::class_<ConjectureReport>(m, "ConjectureReport")
      .def_readonly("sorted_overlaps", &ConjectureReport::sorted_overlaps)
      .def_readonly("rhs", &ConjectureReport::rhs)
      .def_readonly("rhs_infinite", &ConjectureReport::rhs_infinite)
      .def_readonly("min_lhs", &ConjectureReport::min_lhs)
      .def_readonly("slack", &ConjectureReport::slack)
      .def_readonly("counterexample_candidate",
                    &ConjectureReport::counterexample_candidate);

  py::class_<CampaignReport>(m, "CampaignReport")
      .def_readonly("samples", &CampaignReport::samples)
      .def_readonly("overlap", &CampaignReport::overlap)
      .def_readonly("mu_rhs", &CampaignReport::mu_rhs)
      .def_readonly("mu", &CampaignReport::mu)
      .def_readonly("uur_min", &CampaignReport::uur_min)
      .def_readonly("theorem2_violations", &CampaignReport::theorem2_violations)
      .def_readonly("theorem3_violations", &CampaignReport::theorem3_violations)
      .def_readonly("bounds", &CampaignReport::bounds)
      .def_readonly("tightness", &CampaignReport::tightness)
      .def_readonly("conjecture", &CampaignReport::conjecture)
      .def_readonly("violations", &CampaignReport::violations)
      .def("passed", &CampaignReport::passed);

  m.def("run_verification", &run_verification, py::arg("config"), py::arg("t1"),
        py::arg("t2"));
  m.def("tightness_probe", &tightness_probe, py::arg("t1"), py::arg("t2"),
        py::arg("bounds"));
  m.def("conjecture_explore", &conjecture_explore, py::arg("t1"), py::arg("t2"),
        py::arg("config"));

  py::class_<StateCaseReport>(m, "StateCaseReport")
      .def_readonly("max_prob_deviation", &StateCaseReport::max_prob_deviation)
      .def_readonly("overlap_deviation", &StateCaseReport::overlap_deviation)
      .def_readonly("bound_deviation", &StateCaseReport::bound_deviation)
      .def_readonly("max_s_deviation", &StateCaseReport::max_s_deviation)
      .def_readonly("overlap", &StateCaseReport::overlap)
      .def_readonly("mu_bound", &StateCaseReport::mu_bound)
      .def("ok", &StateCaseReport::ok);
  m.def("state_case_regression", &state_case_regression, py::arg("m1"), py::arg("m2"),
        py::arg("states"));
}
