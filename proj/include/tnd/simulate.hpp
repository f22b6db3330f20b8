#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tnd/estimators.hpp"
#include "tnd/population.hpp"

namespace tnd {

enum class Mode { deterministic, stochastic };

constexpr std::string_view to_string(Mode mode) noexcept
{
    return mode == Mode::deterministic ? "deterministic" : "stochastic";
}

// A full study recipe: ground truth, diagnostic test, estimator choice and
// sampling mode. With correct = true the engine applies the Rogan-Gladen
// inversion to each arm's observed rate before the risk-ratio estimate.
struct Scenario {
    LatentPopulation population;
    DiagnosticTest test;
    Method method = Method::risk_ratio;
    ControlGroup control = ControlGroup::combined;
    bool correct = false;
    Mode mode = Mode::deterministic;
    std::uint64_t seed = 0;

    void validate() const;

    bool operator==(const Scenario&) const = default;
};

struct RunResult {
    VEEstimate estimate;
    StudyTable table;        // care-seeking split of the latent population
    ObservedCounts observed; // study counts after the diagnostic test
    std::optional<double> gap; // assumption gap of the observed counts
};

// One full study: care-seeking split, target test applied to every
// care-seeker (se on the target-infected, 1-sp on everyone else; people
// testing target-positive are counted as cases regardless of other-pathogen
// status, other-pathogen detection is exact among target-negatives), then
// the configured estimator. Stochastic draws come from a single stream
// seeded with the scenario seed; draw order is the population split
// (6 cells) followed by the per-arm test draws (target, other, uninfected).
// Errors are tagged with the stage that raised them.
RunResult run_scenario(const Scenario& scenario);

struct McSummary {
    std::size_t replications = 0;
    std::size_t valid = 0;
    std::size_t errors = 0;
    double error_rate = 0.0;
    double mean = 0.0;
    double sd = 0.0; // sample sd (n-1), 0 for a single valid replicate
    double q025 = 0.0;
    double q50 = 0.0;
    double q975 = 0.0;
    double mean_gap = 0.0;     // over valid replicates
    double clamped_rate = 0.0; // fraction of valid replicates with a clamped correction
    std::string first_error;   // tag of the first failed replicate, empty if none
};

// Replicate i runs the scenario with seed derive_seed(master_seed, i).
// Failed replicates are counted, never averaged. Quantiles use linear
// interpolation between order statistics (numpy/R type 7).
McSummary monte_carlo(const Scenario& scenario, std::size_t replications,
                      std::uint64_t master_seed);

enum class AxisMode { grid, zip };

constexpr std::string_view to_string(AxisMode mode) noexcept
{
    return mode == AxisMode::grid ? "grid" : "zip";
}

struct SweepAxis {
    std::string parameter;
    std::vector<double> values;

    bool operator==(const SweepAxis&) const = default;
};

struct SweepSpec {
    Scenario base;
    std::vector<SweepAxis> axes;
    AxisMode axis_mode = AxisMode::grid;
    std::size_t replications = 1;

    void validate() const;
    std::size_t point_count() const;

    bool operator==(const SweepSpec&) const = default;
};

struct SweepRow {
    std::vector<double> axis_values;
    std::optional<VEEstimate> estimate; // single-evaluation result
    std::optional<McSummary> mc;        // present when replications > 1
    std::optional<double> gap;
    double error_rate = 0.0;
    double clamped_rate = 0.0;
    std::string error; // error tag for a failed point, empty otherwise
};

struct SweepResult {
    std::vector<std::string> axis_names;
    Method method = Method::risk_ratio;
    ControlGroup control = ControlGroup::not_applicable;
    std::vector<SweepRow> rows;
};

// Numeric scenario fields an axis may address.
std::span<const std::string_view> scenario_parameter_names();
double* resolve_scenario_parameter(Scenario& scenario, std::string_view path);

// Evaluates every grid point (Cartesian product in grid mode, pointwise in
// zip mode), rows in lexicographic axis order. Estimate failures become row
// outcomes; the sweep itself only fails on an invalid spec. Grid point k
// uses derive_seed(base.seed, k) as its Monte Carlo master seed.
SweepResult run_sweep(const SweepSpec& spec);

struct SignBoundaryCell {
    std::size_t se_index = 0; // lower corner
    std::size_t sp_index = 0;
    double se_low = 0, se_high = 0;
    double sp_low = 0, sp_high = 0;
};

// Scans the (se, sp) grid for cells whose corner VE evaluations straddle
// zero (min <= 0 <= max). Requires a deterministic scenario whose study
// table has equal seek-care arms and a strictly protective true prevalence
// split. Cells with an undefined corner estimate are skipped.
std::vector<SignBoundaryCell> find_sign_boundary(const Scenario& base,
                                                 std::span<const double> se_grid,
                                                 std::span<const double> sp_grid);

} // namespace tnd
