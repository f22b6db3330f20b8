#include "tnd/estimators.hpp"

#include <cmath>
#include <string>

namespace tnd {

namespace {

void check_count(double value, const char* name)
{
    if (!(value >= 0.0) || !std::isfinite(value))
        fail(ErrorKind::invalid_input,
             std::string(name) + " must be finite and >= 0, got " + std::to_string(value));
}

} // namespace

void ObservedCounts::validate() const
{
    check_count(a, "a");
    check_count(b, "b");
    check_count(c, "c");
    check_count(g, "g");
    check_count(h, "h");
    check_count(i, "i");
}

double assumption_gap(const ObservedCounts& counts)
{
    counts.validate();
    if (!(counts.n1() > 0.0))
        fail(ErrorKind::invalid_input, "assumption gap needs n1 > 0");
    if (!(counts.n3() > 0.0))
        fail(ErrorKind::invalid_input, "assumption gap needs n3 > 0");
    return std::abs(counts.b / counts.n1() - counts.h / counts.n3());
}

VEEstimate ve_risk_ratio(double a, double n1, double g, double n3)
{
    check_count(a, "a");
    check_count(g, "g");
    check_count(n1, "n1");
    check_count(n3, "n3");
    if (!(n1 > 0.0))
        fail(ErrorKind::invalid_input, "risk-ratio estimate needs n1 > 0");
    if (!(n3 > 0.0))
        fail(ErrorKind::invalid_input, "risk-ratio estimate needs n3 > 0");
    if (g == 0.0)
        fail(ErrorKind::undefined_estimate,
             "risk-ratio estimate undefined: unvaccinated attack rate g/n3 is zero");

    VEEstimate out;
    out.value = 1.0 - (a / n1) / (g / n3);
    out.method = Method::risk_ratio;
    out.control_group = ControlGroup::not_applicable;
    return out;
}

VEEstimate ve_odds_ratio(double a, double control_vax, double g, double control_unvax,
                         ControlGroup control)
{
    check_count(a, "a");
    check_count(control_vax, "control_vax");
    check_count(g, "g");
    check_count(control_unvax, "control_unvax");
    if (g == 0.0 || control_vax == 0.0)
        fail(ErrorKind::undefined_estimate,
             "odds-ratio estimate undefined: denominator g*control_vax is zero");

    VEEstimate out;
    out.value = 1.0 - (a * control_unvax) / (g * control_vax);
    out.method = Method::odds_ratio;
    out.control_group = control;
    return out;
}

std::pair<double, double> select_control(const ObservedCounts& counts, ControlGroup policy)
{
    counts.validate();

    double vax = 0.0;
    double unvax = 0.0;
    switch (policy) {
    case ControlGroup::other_pathogen:
        vax = counts.b;
        unvax = counts.h;
        break;
    case ControlGroup::pan_negative:
        vax = counts.c;
        unvax = counts.i;
        break;
    case ControlGroup::combined:
        vax = counts.b + counts.c;
        unvax = counts.h + counts.i;
        break;
    case ControlGroup::not_applicable:
        fail(ErrorKind::invalid_input, "control policy must be one of other-pathogen, "
                                       "pan-negative, combined");
    }
    if (vax == 0.0 || unvax == 0.0)
        fail(ErrorKind::empty_control_group,
             std::string("control group '") + std::string(to_string(policy)) +
                 "' is empty in at least one arm (vaccinated=" + std::to_string(vax) +
                 ", unvaccinated=" + std::to_string(unvax) + ")");
    return {vax, unvax};
}

VEEstimate ve_pipeline_with_misclassification(double vax_size, double unvax_size,
                                              double prevalence_vax, double prevalence_unvax,
                                              const DiagnosticTest& test, Method method)
{
    if (!(vax_size > 0.0) || !(unvax_size > 0.0))
        fail(ErrorKind::invalid_input, "arm sizes must be > 0");
    if (!(prevalence_vax >= 0.0 && prevalence_vax <= 1.0))
        fail(ErrorKind::invalid_input, "vaccinated prevalence must be in [0,1]");
    if (!(prevalence_unvax >= 0.0 && prevalence_unvax <= 1.0))
        fail(ErrorKind::invalid_input, "unvaccinated prevalence must be in [0,1]");

    const double infected_vax = prevalence_vax * vax_size;
    const double infected_unvax = prevalence_unvax * unvax_size;
    const ConfusionTable vax = apply_test(infected_vax, vax_size - infected_vax, test);
    const ConfusionTable unvax = apply_test(infected_unvax, unvax_size - infected_unvax, test);

    if (method == Method::risk_ratio)
        return ve_risk_ratio(vax.positives(), vax_size, unvax.positives(), unvax_size);
    return ve_odds_ratio(vax.positives(), vax.negatives(), unvax.positives(), unvax.negatives(),
                         ControlGroup::combined);
}

VEEstimate ve_corrected(double positives_vax, double positives_unvax, double size_vax,
                        double size_unvax, const DiagnosticTest& test)
{
    check_count(positives_vax, "positives_vax");
    check_count(positives_unvax, "positives_unvax");
    if (!(size_vax > 0.0) || !(size_unvax > 0.0))
        fail(ErrorKind::invalid_input, "arm sizes must be > 0");
    if (positives_vax > size_vax || positives_unvax > size_unvax)
        fail(ErrorKind::invalid_input, "arm positives cannot exceed the arm size");

    const CorrectedRate vax = correct_observed_rate(positives_vax / size_vax, test);
    const CorrectedRate unvax = correct_observed_rate(positives_unvax / size_unvax, test);
    if (unvax.value == 0.0)
        fail(ErrorKind::undefined_estimate,
             "corrected estimate undefined: corrected unvaccinated prevalence is zero");

    VEEstimate out;
    out.value = 1.0 - vax.value / unvax.value;
    out.method = Method::risk_ratio;
    out.control_group = ControlGroup::not_applicable;
    out.clamped = vax.clamped || unvax.clamped;
    return out;
}

} // namespace tnd
