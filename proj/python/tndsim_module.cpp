#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tnd/config.hpp"
#include "tnd/report.hpp"
#include "tnd/simulate.hpp"

namespace py = pybind11;
using namespace tnd;

PYBIND11_MODULE(tndsim, m)
{
    m.doc() = "Test-negative design simulation and estimation toolkit.\n\n"
              "Builds study tables from a latent population, pushes them through a\n"
              "misclassifying diagnostic test, and estimates vaccine effectiveness\n"
              "with risk-ratio and odds-ratio estimators, Monte Carlo replication\n"
              "and parameter sweeps.";

    static py::exception<Error> error_type(m, "Error");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            const std::string message = std::string(e.tag()) + ": " + e.what();
            PyErr_SetString(error_type.ptr(), message.c_str());
        }
    });

    py::enum_<Method>(m, "Method")
        .value("risk_ratio", Method::risk_ratio)
        .value("odds_ratio", Method::odds_ratio);
    py::enum_<ControlGroup>(m, "ControlGroup")
        .value("other_pathogen", ControlGroup::other_pathogen)
        .value("pan_negative", ControlGroup::pan_negative)
        .value("combined", ControlGroup::combined)
        .value("not_applicable", ControlGroup::not_applicable);
    py::enum_<Mode>(m, "Mode")
        .value("deterministic", Mode::deterministic)
        .value("stochastic", Mode::stochastic);
    py::enum_<AxisMode>(m, "AxisMode")
        .value("grid", AxisMode::grid)
        .value("zip", AxisMode::zip);

    py::class_<CareSeekProbabilities>(m, "CareSeekProbabilities")
        .def(py::init<>())
        .def_readwrite("vaccinated_target", &CareSeekProbabilities::vaccinated_target)
        .def_readwrite("vaccinated_other", &CareSeekProbabilities::vaccinated_other)
        .def_readwrite("vaccinated_uninfected", &CareSeekProbabilities::vaccinated_uninfected)
        .def_readwrite("unvaccinated_target", &CareSeekProbabilities::unvaccinated_target)
        .def_readwrite("unvaccinated_other", &CareSeekProbabilities::unvaccinated_other)
        .def_readwrite("unvaccinated_uninfected",
                       &CareSeekProbabilities::unvaccinated_uninfected);

    py::class_<LatentPopulation>(m, "LatentPopulation")
        .def(py::init<>())
        .def_readwrite("vaccinated_target", &LatentPopulation::vaccinated_target)
        .def_readwrite("vaccinated_other", &LatentPopulation::vaccinated_other)
        .def_readwrite("vaccinated_uninfected", &LatentPopulation::vaccinated_uninfected)
        .def_readwrite("unvaccinated_target", &LatentPopulation::unvaccinated_target)
        .def_readwrite("unvaccinated_other", &LatentPopulation::unvaccinated_other)
        .def_readwrite("unvaccinated_uninfected", &LatentPopulation::unvaccinated_uninfected)
        .def_readwrite("care_seek", &LatentPopulation::care_seek)
        .def("validate", &LatentPopulation::validate);

    py::class_<StudyTable>(m, "StudyTable")
        .def(py::init<>())
        .def_readwrite("A", &StudyTable::A)
        .def_readwrite("B", &StudyTable::B)
        .def_readwrite("C", &StudyTable::C)
        .def_readwrite("D", &StudyTable::D)
        .def_readwrite("E", &StudyTable::E)
        .def_readwrite("F", &StudyTable::F)
        .def_readwrite("G", &StudyTable::G)
        .def_readwrite("H", &StudyTable::H)
        .def_readwrite("I", &StudyTable::I)
        .def_readwrite("J", &StudyTable::J)
        .def_readwrite("K", &StudyTable::K)
        .def_readwrite("L", &StudyTable::L)
        .def_readwrite("N1", &StudyTable::N1)
        .def_readwrite("N2", &StudyTable::N2)
        .def_readwrite("N3", &StudyTable::N3)
        .def_readwrite("N4", &StudyTable::N4);

    py::class_<TableViolation>(m, "TableViolation")
        .def_readonly("what", &TableViolation::what)
        .def_readonly("magnitude", &TableViolation::magnitude)
        .def("__repr__", [](const TableViolation& v) {
            return "TableViolation('" + v.what + "', " + std::to_string(v.magnitude) + ")";
        });

    py::class_<DiagnosticTest>(m, "DiagnosticTest")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("sensitivity"), py::arg("specificity"))
        .def_readwrite("sensitivity", &DiagnosticTest::sensitivity)
        .def_readwrite("specificity", &DiagnosticTest::specificity)
        .def("informative", &DiagnosticTest::informative, py::arg("eps") = kInformativeEps);

    py::class_<ConfusionTable>(m, "ConfusionTable")
        .def_readonly("true_positive", &ConfusionTable::true_positive)
        .def_readonly("false_positive", &ConfusionTable::false_positive)
        .def_readonly("false_negative", &ConfusionTable::false_negative)
        .def_readonly("true_negative", &ConfusionTable::true_negative)
        .def_property_readonly("positives", &ConfusionTable::positives)
        .def_property_readonly("negatives", &ConfusionTable::negatives);

    py::class_<CorrectedRate>(m, "CorrectedRate")
        .def_readonly("value", &CorrectedRate::value)
        .def_readonly("clamped", &CorrectedRate::clamped);

    py::class_<ObservedCounts>(m, "ObservedCounts")
        .def(py::init<>())
        .def(py::init([](double a, double b, double c, double g, double h, double i) {
                 return ObservedCounts{a, b, c, g, h, i};
             }),
             py::arg("a"), py::arg("b"), py::arg("c"), py::arg("g"), py::arg("h"), py::arg("i"))
        .def_readwrite("a", &ObservedCounts::a)
        .def_readwrite("b", &ObservedCounts::b)
        .def_readwrite("c", &ObservedCounts::c)
        .def_readwrite("g", &ObservedCounts::g)
        .def_readwrite("h", &ObservedCounts::h)
        .def_readwrite("i", &ObservedCounts::i)
        .def_property_readonly("n1", &ObservedCounts::n1)
        .def_property_readonly("n3", &ObservedCounts::n3);

    py::class_<VEEstimate>(m, "VEEstimate")
        .def_readonly("value", &VEEstimate::value)
        .def_readonly("method", &VEEstimate::method)
        .def_readonly("control_group", &VEEstimate::control_group)
        .def_readonly("clamped", &VEEstimate::clamped)
        .def("__repr__", [](const VEEstimate& e) {
            return "VEEstimate(" + format_sig6(e.value) + ", " + std::string(to_string(e.method)) +
                   ", " + std::string(to_string(e.control_group)) + ")";
        });

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("population", &Scenario::population)
        .def_readwrite("test", &Scenario::test)
        .def_readwrite("method", &Scenario::method)
        .def_readwrite("control", &Scenario::control)
        .def_readwrite("correct", &Scenario::correct)
        .def_readwrite("mode", &Scenario::mode)
        .def_readwrite("seed", &Scenario::seed)
        .def("validate", &Scenario::validate);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("estimate", &RunResult::estimate)
        .def_readonly("table", &RunResult::table)
        .def_readonly("observed", &RunResult::observed)
        .def_readonly("gap", &RunResult::gap);

    py::class_<McSummary>(m, "McSummary")
        .def_readonly("replications", &McSummary::replications)
        .def_readonly("valid", &McSummary::valid)
        .def_readonly("errors", &McSummary::errors)
        .def_readonly("error_rate", &McSummary::error_rate)
        .def_readonly("mean", &McSummary::mean)
        .def_readonly("sd", &McSummary::sd)
        .def_readonly("q025", &McSummary::q025)
        .def_readonly("q50", &McSummary::q50)
        .def_readonly("q975", &McSummary::q975)
        .def_readonly("mean_gap", &McSummary::mean_gap)
        .def_readonly("clamped_rate", &McSummary::clamped_rate)
        .def_readonly("first_error", &McSummary::first_error);

    py::class_<SweepAxis>(m, "SweepAxis")
        .def(py::init([](std::string parameter, std::vector<double> values) {
                 return SweepAxis{std::move(parameter), std::move(values)};
             }),
             py::arg("parameter"), py::arg("values"))
        .def_readwrite("parameter", &SweepAxis::parameter)
        .def_readwrite("values", &SweepAxis::values);

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("base", &SweepSpec::base)
        .def_readwrite("axes", &SweepSpec::axes)
        .def_readwrite("axis_mode", &SweepSpec::axis_mode)
        .def_readwrite("replications", &SweepSpec::replications)
        .def("validate", &SweepSpec::validate)
        .def("point_count", &SweepSpec::point_count);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("axis_values", &SweepRow::axis_values)
        .def_readonly("estimate", &SweepRow::estimate)
        .def_readonly("mc", &SweepRow::mc)
        .def_readonly("gap", &SweepRow::gap)
        .def_readonly("error_rate", &SweepRow::error_rate)
        .def_readonly("clamped_rate", &SweepRow::clamped_rate)
        .def_readonly("error", &SweepRow::error);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("axis_names", &SweepResult::axis_names)
        .def_readonly("method", &SweepResult::method)
        .def_readonly("control", &SweepResult::control)
        .def_readonly("rows", &SweepResult::rows);

    py::class_<SignBoundaryCell>(m, "SignBoundaryCell")
        .def_readonly("se_index", &SignBoundaryCell::se_index)
        .def_readonly("sp_index", &SignBoundaryCell::sp_index)
        .def_readonly("se_low", &SignBoundaryCell::se_low)
        .def_readonly("se_high", &SignBoundaryCell::se_high)
        .def_readonly("sp_low", &SignBoundaryCell::sp_low)
        .def_readonly("sp_high", &SignBoundaryCell::sp_high);

    m.def("build_study_table", py::overload_cast<const LatentPopulation&>(&build_study_table),
          py::arg("population"), "Deterministic expected-count care-seeking split.");
    m.def("build_study_table",
          py::overload_cast<const LatentPopulation&, std::uint64_t>(&build_study_table),
          py::arg("population"), py::arg("seed"),
          "Binomial care-seeking split drawn from the given seed.");
    m.def("validate_table", &validate_table, py::arg("table"));
    m.def("assumption_gap", py::overload_cast<const StudyTable&>(&assumption_gap),
          py::arg("table"), "|B/N1 - H/N3| on a study table.");
    m.def("assumption_gap", py::overload_cast<const ObservedCounts&>(&assumption_gap),
          py::arg("counts"), "|b/n1 - h/n3| on sampled counts.");

    m.def(
        "apply_test",
        [](double infected, double not_infected, const DiagnosticTest& test) {
            return apply_test(infected, not_infected, test);
        },
        py::arg("infected"), py::arg("not_infected"), py::arg("test"));
    m.def(
        "apply_test",
        [](double infected, double not_infected, const DiagnosticTest& test,
           std::uint64_t seed) {
            Rng rng(seed);
            return apply_test(infected, not_infected, test, rng);
        },
        py::arg("infected"), py::arg("not_infected"), py::arg("test"), py::arg("seed"));
    m.def("observed_positive_rate", &observed_positive_rate, py::arg("prevalence"),
          py::arg("test"));
    m.def("correct_observed_rate", &correct_observed_rate, py::arg("observed"), py::arg("test"),
          "Rogan-Gladen inversion, clamped to [0,1] with a flag.");
    m.def("fp_exceeds_tp_prevalence", &fp_exceeds_tp_prevalence, py::arg("test"));

    m.def("ve_risk_ratio", &ve_risk_ratio, py::arg("a"), py::arg("n1"), py::arg("g"),
          py::arg("n3"));
    m.def("ve_odds_ratio", &ve_odds_ratio, py::arg("a"), py::arg("control_vax"), py::arg("g"),
          py::arg("control_unvax"), py::arg("control") = ControlGroup::not_applicable);
    m.def("select_control", &select_control, py::arg("counts"), py::arg("policy"));
    m.def("ve_pipeline_with_misclassification", &ve_pipeline_with_misclassification,
          py::arg("vax_size"), py::arg("unvax_size"), py::arg("prevalence_vax"),
          py::arg("prevalence_unvax"), py::arg("test"), py::arg("method") = Method::risk_ratio);
    m.def("ve_corrected", &ve_corrected, py::arg("positives_vax"), py::arg("positives_unvax"),
          py::arg("size_vax"), py::arg("size_unvax"), py::arg("test"));

    m.def("run_scenario", &run_scenario, py::arg("scenario"));
    m.def("monte_carlo", &monte_carlo, py::arg("scenario"), py::arg("replications"),
          py::arg("master_seed"));
    m.def("run_sweep", &run_sweep, py::arg("spec"));
    m.def(
        "find_sign_boundary",
        [](const Scenario& base, const std::vector<double>& se_grid,
           const std::vector<double>& sp_grid) {
            return find_sign_boundary(base, se_grid, sp_grid);
        },
        py::arg("base"), py::arg("se_grid"), py::arg("sp_grid"));
    m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("index"),
          "Fixed splitmix64 replicate-seed derivation.");

    m.def("parse_scenario_config", &parse_scenario_config, py::arg("text"),
          "Parse the key = value config format; returns Scenario or SweepSpec.");
    m.def("write_scenario_config",
          py::overload_cast<const Scenario&>(&write_scenario_config), py::arg("scenario"));
    m.def("write_scenario_config",
          py::overload_cast<const SweepSpec&>(&write_scenario_config), py::arg("spec"));
    m.def("sweep_csv", &sweep_csv, py::arg("result"), "Render a sweep result as CSV.");

    m.def("scenario_parameter_names", [] {
        std::vector<std::string> names;
        for (const std::string_view name : scenario_parameter_names())
            names.emplace_back(name);
        return names;
    });
}
