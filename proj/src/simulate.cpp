#include "tnd/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace tnd {

void Scenario::validate() const
{
    population.validate();
    test.validate();
    if (method == Method::odds_ratio && control == ControlGroup::not_applicable)
        fail(ErrorKind::invalid_input,
             "odds-ratio estimation needs a control-group policy "
             "(other-pathogen, pan-negative or combined)");
    if (correct && method != Method::risk_ratio)
        fail(ErrorKind::invalid_input,
             "rate correction is only defined for the risk-ratio estimator");
}

namespace {

[[noreturn]] void rethrow_with_stage(const Error& e, const char* stage)
{
    throw Error(e.kind(), std::string(stage) + ": " + e.what());
}

// Target test applied to one arm of care-seekers. Returns the observed
// (target-positive, other-positive, pan-negative) triple; conservation with
// the input triple is exact in both modes.
std::array<double, 3> observe_arm(double seek_target, double seek_other, double seek_uninfected,
                                  const DiagnosticTest& test, Rng* rng)
{
    ConfusionTable target = rng ? apply_test(seek_target, 0.0, test, *rng)
                                : apply_test(seek_target, 0.0, test);
    ConfusionTable other = rng ? apply_test(0.0, seek_other, test, *rng)
                               : apply_test(0.0, seek_other, test);
    ConfusionTable uninfected = rng ? apply_test(0.0, seek_uninfected, test, *rng)
                                    : apply_test(0.0, seek_uninfected, test);

    const double a = target.true_positive + other.false_positive + uninfected.false_positive;
    const double b = other.true_negative;
    const double c = target.false_negative + uninfected.true_negative;
    return {a, b, c};
}

VEEstimate estimate_from_observed(const Scenario& scenario, const ObservedCounts& obs)
{
    if (scenario.method == Method::risk_ratio) {
        if (scenario.correct)
            return ve_corrected(obs.a, obs.g, obs.n1(), obs.n3(), scenario.test);
        return ve_risk_ratio(obs.a, obs.n1(), obs.g, obs.n3());
    }
    const auto [control_vax, control_unvax] = select_control(obs, scenario.control);
    return ve_odds_ratio(obs.a, control_vax, obs.g, control_unvax, scenario.control);
}

} // namespace

RunResult run_scenario(const Scenario& scenario)
{
    scenario.validate();

    Rng rng(scenario.seed);
    Rng* draws = scenario.mode == Mode::stochastic ? &rng : nullptr;

    RunResult result;
    try {
        result.table = draws ? build_study_table(scenario.population, *draws)
                             : build_study_table(scenario.population);
    } catch (const Error& e) {
        rethrow_with_stage(e, "population stage");
    }

    try {
        const auto [a, b, c] =
            observe_arm(result.table.A, result.table.B, result.table.C, scenario.test, draws);
        const auto [g, h, i] =
            observe_arm(result.table.G, result.table.H, result.table.I, scenario.test, draws);
        result.observed = ObservedCounts{a, b, c, g, h, i};
    } catch (const Error& e) {
        rethrow_with_stage(e, "testing stage");
    }

    if (result.observed.n1() > 0.0 && result.observed.n3() > 0.0)
        result.gap = assumption_gap(result.observed);

    try {
        result.estimate = estimate_from_observed(scenario, result.observed);
    } catch (const Error& e) {
        rethrow_with_stage(e, "estimation stage");
    }
    return result;
}

namespace {

double quantile_type7(const std::vector<double>& sorted, double p)
{
    if (sorted.empty())
        return 0.0;
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size())
        return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

} // namespace

McSummary monte_carlo(const Scenario& scenario, std::size_t replications,
                      std::uint64_t master_seed)
{
    scenario.validate();
    if (scenario.mode != Mode::stochastic)
        fail(ErrorKind::invalid_input, "monte_carlo needs a stochastic scenario");
    if (replications < 1)
        fail(ErrorKind::invalid_input, "monte_carlo needs at least one replication");

    McSummary summary;
    summary.replications = replications;

    std::vector<double> values;
    values.reserve(replications);
    double gap_sum = 0.0;
    std::size_t clamped = 0;

    for (std::size_t i = 0; i < replications; ++i) {
        Scenario replicate = scenario;
        replicate.seed = derive_seed(master_seed, i);
        try {
            const RunResult run = run_scenario(replicate);
            values.push_back(run.estimate.value);
            if (run.gap)
                gap_sum += *run.gap;
            if (run.estimate.clamped)
                ++clamped;
        } catch (const Error& e) {
            ++summary.errors;
            if (summary.first_error.empty())
                summary.first_error = std::string(e.tag());
        }
    }

    summary.valid = values.size();
    summary.error_rate =
        static_cast<double>(summary.errors) / static_cast<double>(replications);
    if (summary.valid == 0)
        fail(ErrorKind::no_valid_replicates,
             "all " + std::to_string(replications) + " replicates failed (first error: " +
                 summary.first_error + ")");

    const double n = static_cast<double>(summary.valid);
    summary.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (summary.valid > 1) {
        double ss = 0.0;
        for (double v : values) {
            const double d = v - summary.mean;
            ss += d * d;
        }
        summary.sd = std::sqrt(ss / (n - 1.0));
    }

    std::sort(values.begin(), values.end());
    summary.q025 = quantile_type7(values, 0.025);
    summary.q50 = quantile_type7(values, 0.5);
    summary.q975 = quantile_type7(values, 0.975);
    summary.mean_gap = gap_sum / n;
    summary.clamped_rate = static_cast<double>(clamped) / n;
    return summary;
}

namespace {

constexpr std::array<std::string_view, 14> kParameterNames = {
    "vaccinated_target",
    "vaccinated_other",
    "vaccinated_uninfected",
    "unvaccinated_target",
    "unvaccinated_other",
    "unvaccinated_uninfected",
    "care_seek_vaccinated_target",
    "care_seek_vaccinated_other",
    "care_seek_vaccinated_uninfected",
    "care_seek_unvaccinated_target",
    "care_seek_unvaccinated_other",
    "care_seek_unvaccinated_uninfected",
    "sensitivity",
    "specificity",
};

} // namespace

std::span<const std::string_view> scenario_parameter_names()
{
    return kParameterNames;
}

double* resolve_scenario_parameter(Scenario& s, std::string_view path)
{
    LatentPopulation& pop = s.population;
    CareSeekProbabilities& care = pop.care_seek;
    if (path == "vaccinated_target") return &pop.vaccinated_target;
    if (path == "vaccinated_other") return &pop.vaccinated_other;
    if (path == "vaccinated_uninfected") return &pop.vaccinated_uninfected;
    if (path == "unvaccinated_target") return &pop.unvaccinated_target;
    if (path == "unvaccinated_other") return &pop.unvaccinated_other;
    if (path == "unvaccinated_uninfected") return &pop.unvaccinated_uninfected;
    if (path == "care_seek_vaccinated_target") return &care.vaccinated_target;
    if (path == "care_seek_vaccinated_other") return &care.vaccinated_other;
    if (path == "care_seek_vaccinated_uninfected") return &care.vaccinated_uninfected;
    if (path == "care_seek_unvaccinated_target") return &care.unvaccinated_target;
    if (path == "care_seek_unvaccinated_other") return &care.unvaccinated_other;
    if (path == "care_seek_unvaccinated_uninfected") return &care.unvaccinated_uninfected;
    if (path == "sensitivity") return &s.test.sensitivity;
    if (path == "specificity") return &s.test.specificity;
    return nullptr;
}

void SweepSpec::validate() const
{
    base.validate();
    if (axes.empty())
        fail(ErrorKind::invalid_input, "sweep needs at least one axis");
    Scenario probe = base;
    for (const SweepAxis& axis : axes) {
        if (resolve_scenario_parameter(probe, axis.parameter) == nullptr)
            fail(ErrorKind::invalid_input,
                 "unknown sweep parameter '" + axis.parameter + "'");
        if (axis.values.empty())
            fail(ErrorKind::invalid_input,
                 "sweep axis '" + axis.parameter + "' has no values");
    }
    if (axis_mode == AxisMode::zip) {
        for (const SweepAxis& axis : axes) {
            if (axis.values.size() != axes.front().values.size())
                fail(ErrorKind::invalid_input,
                     "zip mode needs axes of equal length; '" + axis.parameter + "' has " +
                         std::to_string(axis.values.size()) + " values, '" +
                         axes.front().parameter + "' has " +
                         std::to_string(axes.front().values.size()));
        }
    }
    if (replications < 1)
        fail(ErrorKind::invalid_input, "replications must be >= 1");
    if (replications > 1 && base.mode != Mode::stochastic)
        fail(ErrorKind::invalid_input,
             "replications > 1 needs stochastic mode (deterministic replicates are identical)");
}

std::size_t SweepSpec::point_count() const
{
    if (axis_mode == AxisMode::zip)
        return axes.front().values.size();
    std::size_t n = 1;
    for (const SweepAxis& axis : axes)
        n *= axis.values.size();
    return n;
}

namespace {

SweepRow evaluate_point(const SweepSpec& spec, std::vector<double> axis_values,
                        std::size_t point_index)
{
    SweepRow row;
    row.axis_values = std::move(axis_values);
    try {
        Scenario point = spec.base;
        for (std::size_t k = 0; k < spec.axes.size(); ++k)
            *resolve_scenario_parameter(point, spec.axes[k].parameter) = row.axis_values[k];

        if (point.mode == Mode::deterministic) {
            const RunResult run = run_scenario(point);
            row.estimate = run.estimate;
            row.gap = run.gap;
            row.clamped_rate = run.estimate.clamped ? 1.0 : 0.0;
            return row;
        }

        const McSummary mc =
            monte_carlo(point, spec.replications, derive_seed(spec.base.seed, point_index));
        row.gap = mc.mean_gap;
        row.error_rate = mc.error_rate;
        row.clamped_rate = mc.clamped_rate;
        if (spec.replications == 1) {
            VEEstimate single;
            single.value = mc.mean;
            single.method = point.method;
            single.control_group = point.method == Method::risk_ratio
                                       ? ControlGroup::not_applicable
                                       : point.control;
            single.clamped = mc.clamped_rate > 0.0;
            row.estimate = single;
        } else {
            row.mc = mc;
        }
    } catch (const Error& e) {
        row.error = std::string(e.tag());
        row.error_rate = 1.0;
        row.gap.reset();
        row.estimate.reset();
        row.mc.reset();
    }
    return row;
}

} // namespace

SweepResult run_sweep(const SweepSpec& spec)
{
    spec.validate();

    SweepResult result;
    for (const SweepAxis& axis : spec.axes)
        result.axis_names.push_back(axis.parameter);
    result.method = spec.base.method;
    result.control = spec.base.method == Method::risk_ratio ? ControlGroup::not_applicable
                                                            : spec.base.control;

    const std::size_t points = spec.point_count();
    result.rows.reserve(points);

    if (spec.axis_mode == AxisMode::zip) {
        for (std::size_t k = 0; k < points; ++k) {
            std::vector<double> values;
            values.reserve(spec.axes.size());
            for (const SweepAxis& axis : spec.axes)
                values.push_back(axis.values[k]);
            result.rows.push_back(evaluate_point(spec, std::move(values), k));
        }
        return result;
    }

    // Cartesian product, first axis slowest: lexicographic row order.
    std::vector<std::size_t> index(spec.axes.size(), 0);
    for (std::size_t k = 0; k < points; ++k) {
        std::vector<double> values;
        values.reserve(spec.axes.size());
        for (std::size_t d = 0; d < spec.axes.size(); ++d)
            values.push_back(spec.axes[d].values[index[d]]);
        result.rows.push_back(evaluate_point(spec, std::move(values), k));

        for (std::size_t d = spec.axes.size(); d-- > 0;) {
            if (++index[d] < spec.axes[d].values.size())
                break;
            index[d] = 0;
        }
    }
    return result;
}

std::vector<SignBoundaryCell> find_sign_boundary(const Scenario& base,
                                                 std::span<const double> se_grid,
                                                 std::span<const double> sp_grid)
{
    base.validate();
    if (base.mode != Mode::deterministic)
        fail(ErrorKind::invalid_input, "sign-boundary search needs a deterministic scenario");
    for (const auto grid : {se_grid, sp_grid}) {
        if (grid.size() < 2)
            fail(ErrorKind::invalid_input, "sign-boundary grids need at least two points");
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (!(grid[i] >= 0.0 && grid[i] <= 1.0))
                fail(ErrorKind::invalid_input, "sign-boundary grid values must be in [0,1]");
            if (i > 0 && !(grid[i] > grid[i - 1]))
                fail(ErrorKind::invalid_input,
                     "sign-boundary grids must be strictly increasing");
        }
    }

    // The zero crossing is only the clean se+sp=1 line when the seek-care
    // arms are equal in size and the vaccinated arm has the lower true rate.
    const StudyTable table = build_study_table(base.population);
    if (!(table.N1 > 0.0) || !(table.N3 > 0.0) ||
        std::abs(table.N1 - table.N3) > 1e-9 * std::max(table.N1, table.N3))
        fail(ErrorKind::invalid_input,
             "sign-boundary search needs equal seek-care arm sizes");
    if (!(table.A / table.N1 < table.G / table.N3))
        fail(ErrorKind::invalid_input,
             "sign-boundary search needs a lower true rate in the vaccinated arm");

    const std::size_t rows = se_grid.size();
    const std::size_t cols = sp_grid.size();
    std::vector<double> ve(rows * cols, 0.0);
    std::vector<char> defined(rows * cols, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            Scenario corner = base;
            corner.test = DiagnosticTest{se_grid[i], sp_grid[j]};
            try {
                ve[i * cols + j] = run_scenario(corner).estimate.value;
                defined[i * cols + j] = 1;
            } catch (const Error&) {
                // corner with no usable estimate: adjacent cells are skipped
            }
        }
    }

    std::vector<SignBoundaryCell> cells;
    for (std::size_t i = 0; i + 1 < rows; ++i) {
        for (std::size_t j = 0; j + 1 < cols; ++j) {
            const std::size_t corners[4] = {i * cols + j, (i + 1) * cols + j,
                                            i * cols + j + 1, (i + 1) * cols + j + 1};
            bool ok = true;
            double lo = 0.0;
            double hi = 0.0;
            for (std::size_t n = 0; n < 4; ++n) {
                if (!defined[corners[n]]) {
                    ok = false;
                    break;
                }
                const double v = ve[corners[n]];
                lo = n == 0 ? v : std::min(lo, v);
                hi = n == 0 ? v : std::max(hi, v);
            }
            if (ok && lo <= 0.0 && hi >= 0.0)
                cells.push_back({i, j, se_grid[i], se_grid[i + 1], sp_grid[j], sp_grid[j + 1]});
        }
    }
    return cells;
}

} // namespace tnd
