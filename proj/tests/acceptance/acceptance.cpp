// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code is the failure count.
//
//   acceptance --cli <tnd binary> --configs <dir> --golden <dir> --tmp <dir>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "tnd/cli.hpp"
#include "tnd/config.hpp"
#include "tnd/estimators.hpp"
#include "tnd/simulate.hpp"

using namespace tnd;

namespace {

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message)
{
    if (!condition)
        throw CheckFailure(message);
}

void require_close(double actual, double expected, double tolerance, const std::string& what)
{
    if (!(std::abs(actual - expected) <= tolerance)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << what << ": got " << actual << ", expected " << expected << " within " << tolerance;
        throw CheckFailure(msg.str());
    }
}

Scenario paper_scenario(double se, double sp)
{
    Scenario s;
    s.population.vaccinated_target = 100;
    s.population.vaccinated_uninfected = 9900;
    s.population.unvaccinated_target = 1000;
    s.population.unvaccinated_uninfected = 9000;
    s.test = DiagnosticTest{se, sp};
    return s;
}

// ---- criterion bodies -----------------------------------------------------

void criterion_paper_example_1()
{
    const double pipeline =
        ve_pipeline_with_misclassification(10000, 10000, 0.01, 0.10, DiagnosticTest{1, 1}).value;
    require_close(pipeline, 0.90, 1e-12, "pipeline ve, perfect test");

    const double engine = run_scenario(paper_scenario(1, 1)).estimate.value;
    require_close(engine, 0.90, 1e-12, "scenario-engine ve, perfect test");
}

void criterion_paper_example_2()
{
    const DiagnosticTest test{0.70, 0.95};

    const ConfusionTable vax = apply_test(100, 9900, test);
    require_close(vax.true_positive, 70, 1e-12, "vaccinated tp");
    require_close(vax.false_positive, 495, 1e-12, "vaccinated fp");
    require_close(vax.positives(), 565, 1e-12, "vaccinated positives");
    require_close(vax.negatives(), 9435, 1e-12, "vaccinated negatives");

    const ConfusionTable unvax = apply_test(1000, 9000, test);
    require_close(unvax.true_positive, 700, 1e-12, "unvaccinated tp");
    require_close(unvax.false_positive, 450, 1e-12, "unvaccinated fp");
    require_close(unvax.positives(), 1150, 1e-12, "unvaccinated positives");
    require_close(unvax.negatives(), 8850, 1e-12, "unvaccinated negatives");

    const double ve = run_scenario(paper_scenario(0.70, 0.95)).estimate.value;
    require_close(ve, 117.0 / 230.0, 1e-9, "ve");
}

void criterion_paper_example_3()
{
    const double ve = run_scenario(paper_scenario(0.95, 0.70)).estimate.value;
    require_close(ve, 1.0 - 3065.0 / 3650.0, 1e-9, "ve");
}

void criterion_identity_suite()
{
    // random tables built so b/n1 == h/n3 holds exactly in floating point:
    // n1 = k*d, b = k*n, n3 = m*d, h = m*n share the rational n/d
    Rng rng(20250810);
    for (int trial = 0; trial < 1000; ++trial) {
        const double d = 2 + std::floor(rng.uniform01() * 49);
        const double n = 1 + std::floor(rng.uniform01() * (d - 1));
        const double k = 1 + std::floor(rng.uniform01() * 1000);
        const double m = 1 + std::floor(rng.uniform01() * 1000);
        const double n1 = k * d;
        const double b = k * n;
        const double n3 = m * d;
        const double h = m * n;
        const double a = 1 + std::floor(rng.uniform01() * (n1 - b));
        const double g_min = std::max(1.0, std::floor(n3 / 100.0));
        const double g = std::min(n3 - h,
                                  g_min + std::floor(rng.uniform01() * (n3 - h - g_min + 1)));

        require(std::abs(b / n1 - h / n3) == 0.0, "generator produced a nonzero gap");
        require(b > 0 && g > 0, "generator produced an empty cell");

        const double rr = ve_risk_ratio(a, n1, g, n3).value;
        const double orr = ve_odds_ratio(a, b, g, h).value;
        require_close(orr, rr, 1e-10, "odds-ratio vs risk-ratio, trial " + std::to_string(trial));
    }
}

void criterion_sign_flip_grid()
{
    // 50x50 grid chosen off the se+sp = 1 line: se = 0.02 + 0.02i,
    // sp = 0.01 + 0.02j, so se + sp = 0.03 + 0.02(i+j) never equals 1 and
    // the sign classification is unambiguous.
    int negative = 0;
    int positive = 0;
    for (int i = 0; i < 50; ++i) {
        for (int j = 0; j < 50; ++j) {
            const double se = 0.02 + 0.02 * i;
            const double sp = 0.01 + 0.02 * j;
            const double ve = run_scenario(paper_scenario(se, sp)).estimate.value;
            const bool below_line = (3 + 2 * (i + j)) < 100; // 100*(se+sp) < 100
            if (below_line) {
                require(ve < 0.0, "expected negative ve at se+sp<1 (se=" + std::to_string(se) +
                                      ", sp=" + std::to_string(sp) + ")");
                ++negative;
            } else {
                require(ve > 0.0, "expected positive ve at se+sp>1 (se=" + std::to_string(se) +
                                      ", sp=" + std::to_string(sp) + ")");
                ++positive;
            }
        }
    }
    require(negative > 0 && positive > 0, "grid failed to straddle the boundary");
}

void criterion_attenuation()
{
    Rng rng(77001);
    int checked = 0;
    while (checked < 1000) {
        const double se = rng.uniform01();
        const double sp = rng.uniform01();
        if (se + sp <= 1.0)
            continue;
        const double p_unvax = 0.001 + 0.499 * rng.uniform01();
        const double p_vax = p_unvax * 0.99 * rng.uniform01();
        ++checked;

        const double true_ve = 1.0 - p_vax / p_unvax;
        const double observed =
            ve_pipeline_with_misclassification(8000, 8000, p_vax, p_unvax,
                                               DiagnosticTest{se, sp})
                .value;
        require(observed >= -1e-12, "observed ve below 0 at trial " + std::to_string(checked));
        require(observed <= true_ve + 1e-12,
                "observed ve above the true ve at trial " + std::to_string(checked));
    }
}

void criterion_fp_tp_crossover()
{
    const DiagnosticTest test{0.70, 0.95};
    const double crossover = fp_exceeds_tp_prevalence(test);
    require_close(crossover, 1.0 / 15.0, 1e-12, "crossover prevalence");

    for (int i = 0; i <= 1000; ++i) {
        const double p = i / 1000.0;
        // brute force: expected counts in a population of 10,000
        const ConfusionTable t = apply_test(p * 10000, (1 - p) * 10000, test);
        const bool fp_wins = t.false_positive > t.true_positive;
        const bool below = p < crossover;
        require(fp_wins == below,
                "crossover mismatch at prevalence " + std::to_string(p));
    }
}

void criterion_correction_round_trip()
{
    const VEEstimate second = ve_corrected(565, 1150, 10000, 10000, DiagnosticTest{0.70, 0.95});
    require_close(second.value, 0.90, 1e-9, "corrected ve, se=0.70/sp=0.95");
    require(!second.clamped, "correction unexpectedly clamped (scenario 2)");

    const VEEstimate third = ve_corrected(3065, 3650, 10000, 10000, DiagnosticTest{0.95, 0.70});
    require_close(third.value, 0.90, 1e-9, "corrected ve, se=0.95/sp=0.70");
    require(!third.clamped, "correction unexpectedly clamped (scenario 3)");

    // same numbers through the scenario engine's correct flag
    Scenario corrected = paper_scenario(0.70, 0.95);
    corrected.correct = true;
    require_close(run_scenario(corrected).estimate.value, 0.90, 1e-9,
                  "scenario-engine corrected ve");
}

void criterion_monte_carlo_consistency()
{
    Scenario s = paper_scenario(0.70, 0.95);
    s.mode = Mode::stochastic;

    const McSummary mc = monte_carlo(s, 10000, 20250810);
    require(mc.valid == 10000, "replicates failed: " + std::to_string(mc.errors));

    const double target = 117.0 / 230.0;
    const double standard_error = mc.sd / std::sqrt(static_cast<double>(mc.valid));
    require_close(mc.mean, target, 4.0 * standard_error, "monte carlo mean");

    const McSummary rerun = monte_carlo(s, 10000, 20250810);
    require(mc.mean == rerun.mean && mc.sd == rerun.sd && mc.q025 == rerun.q025 &&
                mc.q50 == rerun.q50 && mc.q975 == rerun.q975 &&
                mc.error_rate == rerun.error_rate && mc.mean_gap == rerun.mean_gap,
            "summaries differ across reruns with the same master seed");
}

// ---- criterion 10: CLI golden files ----------------------------------------

std::string g_cli;
std::string g_configs;
std::string g_golden;
std::string g_tmp;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void run_cli(const std::string& args)
{
    const std::string command = "\"" + g_cli + "\" " + args;
    const int status = std::system(command.c_str());
    require(status != -1, "failed to spawn: " + command);
    require(WIFEXITED(status) && WEXITSTATUS(status) == 0,
            "nonzero exit from: " + command);
}

void require_same_bytes(const std::string& actual_path, const std::string& expected_path)
{
    const std::string actual = read_file(actual_path);
    const std::string expected = read_file(expected_path);
    if (actual == expected)
        return;
    std::size_t offset = 0;
    while (offset < std::min(actual.size(), expected.size()) &&
           actual[offset] == expected[offset])
        ++offset;
    throw CheckFailure(actual_path + " differs from " + expected_path + " at byte " +
                       std::to_string(offset));
}

void criterion_cli_golden_files()
{
    const std::string report1 = g_tmp + "/reproduce_1.txt";
    const std::string report2 = g_tmp + "/reproduce_2.txt";
    run_cli("reproduce-paper --output \"" + report1 + "\"");
    run_cli("reproduce-paper --output \"" + report2 + "\"");
    require_same_bytes(report1, report2);
    require_same_bytes(report1, g_golden + "/reproduce_paper.txt");

    const std::string sweep1 = g_tmp + "/paper_sweep_1.csv";
    const std::string sweep2 = g_tmp + "/paper_sweep_2.csv";
    const std::string config = g_configs + "/paper_sweep.tnd";
    run_cli("sweep --config \"" + config + "\" --output \"" + sweep1 + "\"");
    run_cli("sweep --config \"" + config + "\" --output \"" + sweep2 + "\"");
    require_same_bytes(sweep1, sweep2);
    require_same_bytes(sweep1, g_golden + "/paper_sweep.csv");
}

struct Criterion {
    int number;
    std::string name;
    double time_limit_s; // 0 = no limit
    std::function<void()> body;
};

} // namespace

int main(int argc, char** argv)
{
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--cli")
            g_cli = argv[i + 1];
        else if (flag == "--configs")
            g_configs = argv[i + 1];
        else if (flag == "--golden")
            g_golden = argv[i + 1];
        else if (flag == "--tmp")
            g_tmp = argv[i + 1];
    }
    if (g_cli.empty() || g_configs.empty() || g_golden.empty() || g_tmp.empty()) {
        std::cerr << "usage: acceptance --cli PATH --configs DIR --golden DIR --tmp DIR\n";
        return 64;
    }

    const std::vector<Criterion> criteria = {
        {1, "paper example 1: perfect test gives ve 0.90 (1e-12)", 1.0,
         criterion_paper_example_1},
        {2, "paper example 2: se 0.70 / sp 0.95 tables and ve 117/230", 1.0,
         criterion_paper_example_2},
        {3, "paper example 3: se 0.95 / sp 0.70 gives ve 1 - 3065/3650", 1.0,
         criterion_paper_example_3},
        {4, "identity: odds-ratio equals risk-ratio on 1000 zero-gap tables (1e-10)", 0.0,
         criterion_identity_suite},
        {5, "sign flip: ve < 0 iff se+sp < 1 on a 50x50 grid", 5.0, criterion_sign_flip_grid},
        {6, "attenuation: 0 <= ve_observed <= ve_true on 1000 informative draws", 0.0,
         criterion_attenuation},
        {7, "fp/tp crossover at prevalence 1/15 (grid step 0.001)", 0.0,
         criterion_fp_tp_crossover},
        {8, "correction round-trip recovers ve 0.90 (1e-9)", 0.0,
         criterion_correction_round_trip},
        {9, "monte carlo: 10000 replicates centered on 0.508696, reproducible", 30.0,
         criterion_monte_carlo_consistency},
        {10, "cli golden files: reproduce-paper and the 3-point sweep", 0.0,
         criterion_cli_golden_files},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string failure;
        try {
            criterion.body();
        } catch (const std::exception& e) {
            failure = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (failure.empty() && criterion.time_limit_s > 0.0 &&
            elapsed > criterion.time_limit_s) {
            std::ostringstream msg;
            msg << "exceeded time limit of " << criterion.time_limit_s << "s";
            failure = msg.str();
        }

        char line[512];
        std::snprintf(line, sizeof(line), "%s  %2d  %-70s (%.2fs)",
                      failure.empty() ? "PASS" : "FAIL", criterion.number,
                      criterion.name.c_str(), elapsed);
        std::cout << line << "\n";
        if (!failure.empty()) {
            std::cout << "      " << failure << "\n";
            ++failures;
        }
    }

    std::cout << (failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: " + std::to_string(failures) + " criteria failed")
              << "\n";
    return failures;
}
