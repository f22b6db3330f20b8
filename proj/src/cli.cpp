#include "tnd/cli.hpp"

#include <cmath>
#include <sstream>
#include <variant>

#include "tnd/config.hpp"
#include "tnd/report.hpp"
#include "tnd/simulate.hpp"

namespace tnd::cli {

namespace {

struct PaperArmReference {
    double infected;
    double not_infected;
    double tp, fp, fn, tn;
};

struct PaperScenarioReference {
    DiagnosticTest test;
    PaperArmReference vaccinated;
    PaperArmReference unvaccinated;
    double ve; // exact rational, evaluated here rather than stored as a decimal
};

// 10,000 people per arm; true prevalence 1% vaccinated, 10% unvaccinated.
const PaperScenarioReference kPaperScenarios[3] = {
    {{1.0, 1.0},
     {100, 9900, 100, 0, 0, 9900},
     {1000, 9000, 1000, 0, 0, 9000},
     9.0 / 10.0},
    {{0.70, 0.95},
     {100, 9900, 70, 495, 30, 9405},
     {1000, 9000, 700, 450, 300, 8550},
     117.0 / 230.0},
    {{0.95, 0.70},
     {100, 9900, 95, 2970, 5, 6930},
     {1000, 9000, 950, 2700, 50, 6300},
     1.0 - 3065.0 / 3650.0},
};

constexpr double kSelfCheckTolerance = 1e-9;

LatentPopulation paper_population()
{
    LatentPopulation pop;
    pop.vaccinated_target = 100;
    pop.vaccinated_uninfected = 9900;
    pop.unvaccinated_target = 1000;
    pop.unvaccinated_uninfected = 9000;
    return pop;
}

bool check_close(double actual, double expected, double tolerance, const char* what,
                 std::ostream& err)
{
    if (std::abs(actual - expected) <= tolerance)
        return true;
    err << "self-check failed: " << what << " = " << format_sig6(actual) << ", expected "
        << format_sig6(expected) << "\n";
    return false;
}

bool check_arm(const ConfusionTable& table, const PaperArmReference& ref, const char* arm,
               std::ostream& err)
{
    bool ok = true;
    std::string prefix(arm);
    ok &= check_close(table.true_positive, ref.tp, kSelfCheckTolerance,
                      (prefix + " true positives").c_str(), err);
    ok &= check_close(table.false_positive, ref.fp, kSelfCheckTolerance,
                      (prefix + " false positives").c_str(), err);
    ok &= check_close(table.false_negative, ref.fn, kSelfCheckTolerance,
                      (prefix + " false negatives").c_str(), err);
    ok &= check_close(table.true_negative, ref.tn, kSelfCheckTolerance,
                      (prefix + " true negatives").c_str(), err);
    return ok;
}

} // namespace

int cmd_reproduce_paper(std::ostream& out, std::ostream& err)
{
    std::ostringstream report;
    report << "test-negative design: diagnostic misclassification worked examples\n";
    report << "arms: 10000 vaccinated, 10000 unvaccinated; true prevalence 0.01 vs 0.10\n";

    bool ok = true;
    for (int k = 0; k < 3; ++k) {
        const PaperScenarioReference& ref = kPaperScenarios[k];

        const ConfusionTable vax =
            apply_test(ref.vaccinated.infected, ref.vaccinated.not_infected, ref.test);
        const ConfusionTable unvax =
            apply_test(ref.unvaccinated.infected, ref.unvaccinated.not_infected, ref.test);
        const VEEstimate estimate =
            ve_risk_ratio(vax.positives(), 10000, unvax.positives(), 10000);

        ok &= check_arm(vax, ref.vaccinated, "vaccinated", err);
        ok &= check_arm(unvax, ref.unvaccinated, "unvaccinated", err);
        ok &= check_close(estimate.value, ref.ve, kSelfCheckTolerance, "ve", err);

        // Same numbers must fall out of the scenario engine.
        Scenario scenario;
        scenario.population = paper_population();
        scenario.test = ref.test;
        const RunResult run = run_scenario(scenario);
        ok &= check_close(run.estimate.value, ref.ve, kSelfCheckTolerance, "pipeline ve", err);

        report << "\nscenario " << (k + 1)
               << ": sensitivity = " << format_fixed5(ref.test.sensitivity)
               << ", specificity = " << format_fixed5(ref.test.specificity) << "\n\n";
        write_confusion_table(report, "vaccinated people", vax);
        report << "\n";
        write_confusion_table(report, "unvaccinated people", unvax);
        report << "\n";
        write_ve_table(report, vax.positives(), vax.negatives(), unvax.positives(),
                       unvax.negatives());
        report << "\n  ve = " << format_fixed5(estimate.value) << "\n";
    }

    if (!ok) {
        err << "reproduce-paper: reference values not reproduced\n";
        return kExitSelfCheck;
    }
    report << "\nself-check: all reference values reproduced within 1e-09\n";
    out << report.str();
    return kExitOk;
}

namespace {

void write_observed_counts(std::ostream& out, const ObservedCounts& counts)
{
    out << "observed counts\n";
    out << "  a = " << format_count(counts.a) << "  b = " << format_count(counts.b)
        << "  c = " << format_count(counts.c) << "  (n1 = " << format_count(counts.n1()) << ")\n";
    out << "  g = " << format_count(counts.g) << "  h = " << format_count(counts.h)
        << "  i = " << format_count(counts.i) << "  (n3 = " << format_count(counts.n3()) << ")\n";
}

struct EstimateOutcome {
    Method method;
    ControlGroup control;
    std::optional<VEEstimate> estimate;
    std::string error;
};

std::vector<EstimateOutcome> all_estimates(const ObservedCounts& counts)
{
    std::vector<EstimateOutcome> outcomes;
    {
        EstimateOutcome outcome{Method::risk_ratio, ControlGroup::not_applicable, {}, {}};
        try {
            outcome.estimate = ve_risk_ratio(counts.a, counts.n1(), counts.g, counts.n3());
        } catch (const Error& e) {
            outcome.error = std::string(e.tag());
        }
        outcomes.push_back(std::move(outcome));
    }
    for (ControlGroup policy :
         {ControlGroup::other_pathogen, ControlGroup::pan_negative, ControlGroup::combined}) {
        EstimateOutcome outcome{Method::odds_ratio, policy, {}, {}};
        try {
            const auto [control_vax, control_unvax] = select_control(counts, policy);
            outcome.estimate =
                ve_odds_ratio(counts.a, control_vax, counts.g, control_unvax, policy);
        } catch (const Error& e) {
            outcome.error = std::string(e.tag());
        }
        outcomes.push_back(std::move(outcome));
    }
    return outcomes;
}

} // namespace

int cmd_estimate(const ObservedCounts& counts, Format format, std::ostream& out,
                 std::ostream& err)
{
    try {
        counts.validate();
    } catch (const Error& e) {
        err << "estimate: " << e.what() << "\n";
        return kExitUsage;
    }

    std::optional<double> gap;
    try {
        gap = assumption_gap(counts);
    } catch (const Error&) {
        // n1 or n3 empty: gap stays undefined
    }

    const std::vector<EstimateOutcome> outcomes = all_estimates(counts);

    if (format == Format::csv) {
        out << "method,control_group,ve,error,assumption_gap\n";
        for (const EstimateOutcome& outcome : outcomes) {
            out << to_string(outcome.method) << "," << to_string(outcome.control) << ",";
            out << (outcome.estimate ? format_sig6(outcome.estimate->value) : "NA") << ",";
            out << outcome.error << ",";
            out << (gap ? format_sig6(*gap) : "NA") << "\n";
        }
        return kExitOk;
    }

    write_observed_counts(out, counts);
    out << "\nestimates\n";
    for (const EstimateOutcome& outcome : outcomes) {
        std::string label(to_string(outcome.method));
        if (outcome.method == Method::odds_ratio)
            label += " / " + std::string(to_string(outcome.control));
        char line[128];
        if (outcome.estimate) {
            std::snprintf(line, sizeof(line), "  %-30s%s\n", label.c_str(),
                          format_fixed5(outcome.estimate->value).c_str());
        } else {
            std::snprintf(line, sizeof(line), "  %-30serror: %s\n", label.c_str(),
                          outcome.error.c_str());
        }
        out << line;
    }
    out << "\nassumption gap = " << (gap ? format_fixed5(*gap) : "NA") << "\n";
    return kExitOk;
}

namespace {

SweepRow single_run_row(const Scenario& scenario)
{
    SweepRow row;
    try {
        const RunResult run = run_scenario(scenario);
        row.estimate = run.estimate;
        row.gap = run.gap;
        row.clamped_rate = run.estimate.clamped ? 1.0 : 0.0;
    } catch (const Error& e) {
        row.error = std::string(e.tag());
        row.error_rate = 1.0;
    }
    return row;
}

SweepRow replicated_row(const Scenario& scenario, std::size_t replications)
{
    SweepRow row;
    try {
        const McSummary mc = monte_carlo(scenario, replications, scenario.seed);
        row.mc = mc;
        row.gap = mc.mean_gap;
        row.error_rate = mc.error_rate;
        row.clamped_rate = mc.clamped_rate;
    } catch (const Error& e) {
        row.error = std::string(e.tag());
        row.error_rate = 1.0;
    }
    return row;
}

} // namespace

int cmd_simulate(const std::string& config_text, std::optional<std::uint64_t> seed_override,
                 std::size_t replications, Format format, std::ostream& out, std::ostream& err)
{
    ParsedConfig config{Scenario{}};
    try {
        config = parse_scenario_config(config_text);
    } catch (const Error& e) {
        err << "simulate: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!std::holds_alternative<Scenario>(config)) {
        err << "simulate: config declares sweep axes; use the sweep command\n";
        return kExitUsage;
    }

    Scenario scenario = std::get<Scenario>(config);
    if (seed_override)
        scenario.seed = *seed_override;
    if (replications < 1) {
        err << "simulate: --replications must be >= 1\n";
        return kExitUsage;
    }
    if (replications > 1 && scenario.mode != Mode::stochastic) {
        err << "simulate: --replications needs a stochastic scenario\n";
        return kExitUsage;
    }

    const SweepRow row = replications > 1 ? replicated_row(scenario, replications)
                                          : single_run_row(scenario);

    SweepResult shell;
    shell.method = scenario.method;
    shell.control = scenario.method == Method::risk_ratio ? ControlGroup::not_applicable
                                                          : scenario.control;
    shell.rows.push_back(row);

    if (format == Format::csv) {
        out << sweep_csv(shell);
        return kExitOk;
    }

    out << "mode = " << to_string(scenario.mode);
    if (scenario.mode == Mode::stochastic)
        out << "  (seed = " << scenario.seed << ")";
    out << "\n";

    if (!row.error.empty()) {
        out << "ve = undefined  (error: " << row.error << ")\n";
        return kExitOk;
    }
    if (row.mc) {
        const McSummary& mc = *row.mc;
        out << "replications = " << mc.replications << "  valid = " << mc.valid
            << "  error_rate = " << format_sig6(mc.error_rate) << "\n";
        out << "ve mean = " << format_fixed5(mc.mean) << "  sd = " << format_fixed5(mc.sd)
            << "\n";
        out << "quantiles: q025 = " << format_fixed5(mc.q025)
            << "  q50 = " << format_fixed5(mc.q50) << "  q975 = " << format_fixed5(mc.q975)
            << "\n";
        out << "assumption gap (mean) = " << format_fixed5(mc.mean_gap) << "\n";
        out << "clamped rate = " << format_sig6(mc.clamped_rate) << "\n";
        return kExitOk;
    }

    out << "ve = " << format_fixed5(row.estimate->value)
        << "  (method = " << to_string(row.estimate->method)
        << ", control = " << to_string(row.estimate->control_group) << ")\n";
    out << "assumption gap = " << (row.gap ? format_fixed5(*row.gap) : "NA") << "\n";
    out << "clamped = " << (row.estimate->clamped ? "yes" : "no") << "\n";
    return kExitOk;
}

int cmd_sweep(const std::string& config_text, std::optional<std::uint64_t> seed_override,
              Format format, std::ostream& out, std::ostream& err)
{
    ParsedConfig config{Scenario{}};
    try {
        config = parse_scenario_config(config_text);
    } catch (const Error& e) {
        err << "sweep: " << e.what() << "\n";
        return kExitUsage;
    }
    if (!std::holds_alternative<SweepSpec>(config)) {
        err << "sweep: config declares no axis.* keys (schema violation for sweeps)\n";
        return kExitUsage;
    }

    SweepSpec spec = std::get<SweepSpec>(config);
    if (seed_override)
        spec.base.seed = *seed_override;

    SweepResult result;
    try {
        result = run_sweep(spec);
    } catch (const Error& e) {
        err << "sweep: " << e.what() << "\n";
        return kExitUsage;
    }

    out << (format == Format::csv ? sweep_csv(result) : sweep_text(result));
    return kExitOk;
}

} // namespace tnd::cli
