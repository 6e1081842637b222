// Python surface of the library. Thin: every binding forwards to the C++
// entry point of the same name, structs come through as attribute-only
// classes, and validation stays on the C++ side (std::invalid_argument and
// std::out_of_range already map to ValueError and IndexError).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cubelab/branching.hpp"
#include "cubelab/components.hpp"
#include "cubelab/cycles.hpp"
#include "cubelab/expansion.hpp"
#include "cubelab/genus.hpp"
#include "cubelab/harness.hpp"
#include "cubelab/rng.hpp"
#include "cubelab/sample.hpp"
#include "cubelab/tree_decomp.hpp"

namespace py = pybind11;
using namespace cubelab;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bond percolation laboratory on hypercubes";

  // rng
  m.def("mix64", &mix64, py::arg("x"), "64-bit finalizer used for seeding");
  m.def("trial_seed", &trial_seed, py::arg("master"), py::arg("trial"),
        py::arg("tag"), "Per-trial seed from (master, trial index, tag)");

  // sample
  py::class_<PercolationSample>(m, "Sample")
      .def_property_readonly(
          "d", [](const PercolationSample& s) { return s.dim.d(); })
      .def_readonly("p", &PercolationSample::p)
      .def_readonly("seed", &PercolationSample::seed)
      .def_property_readonly(
          "vertex_count",
          [](const PercolationSample& s) { return s.dim.vertex_count(); })
      .def_property_readonly(
          "edge_count",
          [](const PercolationSample& s) { return s.dim.edge_count(); })
      .def("retained_count", &PercolationSample::retained_count)
      .def("has_edge", &PercolationSample::has_edge, py::arg("v"),
           py::arg("direction"))
      .def("save", [](const PercolationSample& s,
                      const std::string& path) { save_sample(s, path); },
           py::arg("path"))
      .def("__repr__", [](const PercolationSample& s) {
        return "Sample(d=" + std::to_string(s.dim.d()) +
               ", p=" + std::to_string(s.p) +
               ", seed=" + std::to_string(s.seed) + ")";
      });

  m.def(
      "sample",
      [](uint32_t d, double p, uint64_t seed) {
        return sample(Dimension(d), p, seed);
      },
      py::arg("d"), py::arg("p"), py::arg("seed"),
      "Draw a bond-percolation sample of Q^d");
  m.def("load_sample", &load_sample, py::arg("path"));

  // components
  py::class_<ComponentInfo>(m, "ComponentInfo")
      .def_readonly("rep", &ComponentInfo::rep)
      .def_readonly("size", &ComponentInfo::size)
      .def_readonly("edges", &ComponentInfo::edges);

  py::class_<ComponentLabeling>(m, "ComponentLabeling")
      .def("rep_of", &ComponentLabeling::rep_of, py::arg("v"))
      .def("components", &ComponentLabeling::components,
           py::return_value_policy::copy)
      .def("info", &ComponentLabeling::info, py::arg("rep"),
           py::return_value_policy::copy)
      .def_property_readonly("largest", &ComponentLabeling::largest)
      .def_property_readonly("second_largest_size",
                             &ComponentLabeling::second_largest_size)
      .def("excess", &ComponentLabeling::excess, py::arg("rep"))
      .def("members", &ComponentLabeling::members, py::arg("rep"))
      .def("small_component_mass", &ComponentLabeling::small_component_mass,
           py::arg("cap"));

  m.def("label_components", &label_components, py::arg("sample"));
  m.def("size_histogram_csv", &size_histogram_csv, py::arg("labeling"));

  // branching analytics
  py::class_<SurvivalResult>(m, "SurvivalResult")
      .def_readonly("gamma", &SurvivalResult::gamma)
      .def_readonly("residual", &SurvivalResult::residual);
  m.def("poisson_survival", &poisson_survival, py::arg("c"));
  m.def("binomial_survival", &binomial_survival, py::arg("d"), py::arg("p"));

  py::class_<TailBound>(m, "TailBound")
      .def_readonly("trials", &TailBound::trials)
      .def_readonly("p", &TailBound::p)
      .def_readonly("deviation", &TailBound::deviation)
      .def_readonly("bound", &TailBound::bound);
  m.def("chernoff_upper", &chernoff_upper, py::arg("n_trials"), py::arg("p"),
        py::arg("a"));
  m.def("chernoff_factor", &chernoff_factor, py::arg("n_trials"), py::arg("p"),
        py::arg("b"));

  py::class_<CycleExpectation>(m, "CycleExpectation")
      .def_readonly("expectation_bound", &CycleExpectation::expectation_bound)
      .def_readonly("host_count_bound", &CycleExpectation::host_count_bound);
  m.def(
      "expected_short_cycles",
      [](uint32_t d, double p, uint32_t s) {
        return expected_short_cycles(Dimension(d), p, s);
      },
      py::arg("d"), py::arg("p"), py::arg("s"));

  // expansion
  py::class_<CutReport>(m, "CutReport")
      .def_readonly("set_size", &CutReport::set_size)
      .def_readonly("edge_boundary_host", &CutReport::edge_boundary_host)
      .def_readonly("edge_boundary_sample", &CutReport::edge_boundary_sample)
      .def_readonly("vertex_boundary_host", &CutReport::vertex_boundary_host)
      .def_readonly("vertex_boundary_sample",
                    &CutReport::vertex_boundary_sample);
  m.def("cut_report", &cut_report, py::arg("sample"), py::arg("set"));
  m.def("sample_vertex_boundary", &sample_vertex_boundary, py::arg("sample"),
        py::arg("set"));

  py::class_<IsoBound>(m, "IsoBound")
      .def_readonly("k", &IsoBound::k)
      .def_readonly("lam", &IsoBound::lambda)
      .def_readonly("bound", &IsoBound::bound);
  m.def(
      "iso_matching_bound",
      [](uint32_t d, uint64_t set_size) {
        return iso_matching_bound(Dimension(d), set_size);
      },
      py::arg("d"), py::arg("set_size"));

  py::class_<IsoCheck>(m, "IsoCheck")
      .def_readonly("bound", &IsoCheck::bound)
      .def_readonly("matching_size", &IsoCheck::matching_size)
      .def_readonly("pass_", &IsoCheck::pass);
  m.def(
      "verify_iso_matching",
      [](uint32_t d, const std::vector<uint32_t>& set) {
        return verify_iso_matching(Dimension(d), set);
      },
      py::arg("d"), py::arg("set"));

  py::class_<MiddleLayerReport>(m, "MiddleLayerReport")
      .def_readonly("cut", &MiddleLayerReport::cut)
      .def_readonly("below", &MiddleLayerReport::below)
      .def_readonly("above", &MiddleLayerReport::above);
  m.def("middle_layer_probe", &middle_layer_probe, py::arg("sample"));

  py::class_<ExpansionCertificate>(m, "ExpansionCertificate")
      .def_readonly("d", &ExpansionCertificate::d)
      .def_readonly("alpha", &ExpansionCertificate::alpha)
      .def_readonly("set_size", &ExpansionCertificate::set_size)
      .def_readonly("set", &ExpansionCertificate::set)
      .def_readonly("edge_boundary", &ExpansionCertificate::edge_boundary)
      .def_readonly("vertex_boundary", &ExpansionCertificate::vertex_boundary)
      .def_readonly("beta_edge", &ExpansionCertificate::beta_edge)
      .def_readonly("beta_vertex", &ExpansionCertificate::beta_vertex)
      .def_readonly("exhaustive", &ExpansionCertificate::exhaustive)
      .def_readonly("probe_inventory",
                    &ExpansionCertificate::probe_inventory);
  m.def("worst_cut_exact", &worst_cut_exact, py::arg("sample"),
        py::arg("size_lo"), py::arg("size_hi"));
  m.def(
      "worst_cut_heuristic",
      [](const PercolationSample& s, double alpha, uint64_t seed) {
        WorstCutOptions opt;
        opt.seed = seed;
        return worst_cut_heuristic(s, alpha, opt);
      },
      py::arg("sample"), py::arg("alpha"), py::arg("seed") = 0);
  m.def("certificates_csv", &certificates_csv, py::arg("certs"),
        py::arg("epsilon"), py::arg("seed"));

  // tree decomposition
  py::class_<RootedTree>(m, "RootedTree")
      .def_readonly("root", &RootedTree::root)
      .def_readonly("order", &RootedTree::order)
      .def_readonly("parent", &RootedTree::parent)
      .def_readonly("depth", &RootedTree::depth)
      .def("size", &RootedTree::size);
  m.def("spanning_tree", &spanning_tree, py::arg("sample"), py::arg("rep"));
  m.def("tree_from_parents", &tree_from_parents, py::arg("vertex_code"),
        py::arg("parent_code"));

  py::class_<DecompositionParams>(m, "DecompositionParams")
      .def(py::init([](uint64_t ell, uint32_t degree_cap,
                       uint32_t common_degree_cap, uint64_t high_degree_count) {
             return DecompositionParams{ell, degree_cap, common_degree_cap,
                                        high_degree_count};
           }),
           py::arg("ell"), py::arg("degree_cap"), py::arg("common_degree_cap"),
           py::arg("high_degree_count"))
      .def_readwrite("ell", &DecompositionParams::ell)
      .def_readwrite("degree_cap", &DecompositionParams::degree_cap)
      .def_readwrite("common_degree_cap",
                     &DecompositionParams::common_degree_cap)
      .def_readwrite("high_degree_count",
                     &DecompositionParams::high_degree_count);

  py::class_<PieceDecomposition>(m, "PieceDecomposition")
      .def_readonly("host_component", &PieceDecomposition::host_component)
      .def_readonly("pieces", &PieceDecomposition::pieces);
  m.def("decompose", &decompose, py::arg("tree"), py::arg("params"));
  m.def("piece_cover", &piece_cover, py::arg("sample"), py::arg("threshold"),
        py::arg("ell"));
  m.def("flatten_pieces", &flatten_pieces, py::arg("cover"));

  // cycles and minors
  py::class_<CycleCertificate>(m, "CycleCertificate")
      .def(py::init([](std::vector<uint32_t> vertices) {
             return CycleCertificate{std::move(vertices)};
           }),
           py::arg("vertices"))
      .def_readonly("vertices", &CycleCertificate::vertices)
      .def("length", &CycleCertificate::length);
  m.def("check_cycle", &check_cycle, py::arg("cert"), py::arg("sample"),
        "Raises ValueError on the first violation");

  py::class_<CycleCensus>(m, "CycleCensus")
      .def_readonly("max_length", &CycleCensus::max_length)
      .def_readonly("counts", &CycleCensus::counts)
      .def("total", &CycleCensus::total)
      .def("total_up_to", &CycleCensus::total_up_to, py::arg("s"));
  m.def(
      "census_short_cycles",
      [](const PercolationSample& s, uint32_t max_length) {
        return census_short_cycles(s, max_length);
      },
      py::arg("sample"), py::arg("max_length"));
  m.def(
      "host_four_cycles",
      [](uint32_t d) { return host_four_cycles(Dimension(d)); }, py::arg("d"));
  m.def(
      "host_six_cycles",
      [](uint32_t d) { return host_six_cycles(Dimension(d)); }, py::arg("d"));
  m.def("long_cycle_search", &long_cycle_search, py::arg("sample"),
        py::arg("restarts") = 30, py::arg("seed") = 0,
        "Best cycle found, or None for acyclic samples");

  py::class_<MinorCertificate>(m, "MinorCertificate")
      .def(py::init([](uint32_t t,
                       std::vector<std::vector<uint32_t>> branch_sets) {
             return MinorCertificate{t, std::move(branch_sets)};
           }),
           py::arg("t"), py::arg("branch_sets"))
      .def_readonly("t", &MinorCertificate::t)
      .def_readonly("branch_sets", &MinorCertificate::branch_sets);

  py::class_<MinorValidation>(m, "MinorValidation")
      .def_readonly("pass_", &MinorValidation::pass)
      .def_readonly("violation", &MinorValidation::violation);
  m.def("validate_minor", &validate_minor, py::arg("cert"), py::arg("sample"));
  m.def("build_minor", &build_minor, py::arg("sample"), py::arg("pieces"),
        py::arg("target_t"), py::arg("budget") = 0);
  m.def(
      "default_minor_target",
      [](uint32_t d) { return default_minor_target(Dimension(d)); },
      py::arg("d"));

  py::class_<SeparatorReport>(m, "SeparatorReport")
      .def_readonly("requested_t", &SeparatorReport::requested_t)
      .def_readonly("runs", &SeparatorReport::runs)
      .def_readonly("largest_component", &SeparatorReport::largest_component)
      .def_readonly("min_vertex_boundary",
                    &SeparatorReport::min_vertex_boundary)
      .def_readonly("beta_vertex", &SeparatorReport::beta_vertex)
      .def_readonly("constant_c", &SeparatorReport::constant_c)
      .def_readonly("implied_t", &SeparatorReport::implied_t);
  m.def("separator_refutation", &separator_refutation, py::arg("sample"),
        py::arg("t"), py::arg("samples"));

  m.def("cycle_to_json", &cycle_to_json, py::arg("cert"));
  m.def("cycle_from_json", &cycle_from_json, py::arg("text"));
  m.def("minor_to_json", &minor_to_json, py::arg("cert"));
  m.def("minor_from_json", &minor_from_json, py::arg("text"));

  // genus
  py::class_<GenusBound>(m, "GenusBound")
      .def_readonly("vertices", &GenusBound::vertices)
      .def_readonly("edges", &GenusBound::edges)
      .def_readonly("excess", &GenusBound::excess)
      .def_readonly("threshold", &GenusBound::threshold)
      .def_readonly("short_cycle_count", &GenusBound::short_cycle_count)
      .def_readonly("long_face_bound", &GenusBound::long_face_bound)
      .def_readonly("face_bound", &GenusBound::face_bound)
      .def_readonly("kappa", &GenusBound::kappa)
      .def_readonly("lower_bound", &GenusBound::lower_bound);
  m.def("genus_lower_bound", &genus_lower_bound, py::arg("sample"),
        py::arg("rep"), py::arg("s_threshold"));
  m.def("genus_lower_bound_multi", &genus_lower_bound_multi, py::arg("sample"),
        py::arg("s_threshold"));
  m.def(
      "default_face_threshold",
      [](uint32_t d) { return default_face_threshold(Dimension(d)); },
      py::arg("d"));

  py::class_<Summary>(m, "Summary")
      .def_readonly("mean", &Summary::mean)
      .def_readonly("stddev", &Summary::stddev)
      .def_readonly("min", &Summary::min)
      .def_readonly("max", &Summary::max)
      .def_readonly("q10", &Summary::q10)
      .def_readonly("q25", &Summary::q25)
      .def_readonly("q50", &Summary::q50)
      .def_readonly("q75", &Summary::q75)
      .def_readonly("q90", &Summary::q90);

  py::class_<ExcessStats>(m, "ExcessStats")
      .def_readonly("d", &ExcessStats::d)
      .def_readonly("epsilon", &ExcessStats::epsilon)
      .def_readonly("trials", &ExcessStats::trials)
      .def_readonly("seed", &ExcessStats::seed)
      .def_readonly("fractions", &ExcessStats::fractions)
      .def_readonly("summary", &ExcessStats::summary);
  m.def("excess_experiment", &excess_experiment, py::arg("d"),
        py::arg("epsilon"), py::arg("trials"), py::arg("seed"));

  // harness: configs go in as JSON text, reports come back rendered, so the
  // Python side sees exactly what the CLI writes
  m.def(
      "run_experiment_json",
      [](const std::string& config_text) {
        return render_json(run_experiment(parse_config(config_text)));
      },
      py::arg("config_text"),
      "Run a JSON experiment config, return the JSON report text");
  m.def(
      "run_experiment_csv",
      [](const std::string& config_text) {
        return render_csv(run_experiment(parse_config(config_text)));
      },
      py::arg("config_text"),
      "Run a JSON experiment config, return the CSV report text");
  m.def("result_schema_json", &result_schema_json,
        "Schema the JSON reports conform to");

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
}
