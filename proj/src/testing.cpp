#include "tnd/testing.hpp"

#include <cmath>
#include <string>

namespace tnd {

bool DiagnosticTest::informative(double eps) const
{
    return std::abs(sensitivity + specificity - 1.0) > eps;
}

void DiagnosticTest::validate() const
{
    if (!(sensitivity >= 0.0 && sensitivity <= 1.0))
        fail(ErrorKind::invalid_input,
             "sensitivity must be in [0,1], got " + std::to_string(sensitivity));
    if (!(specificity >= 0.0 && specificity <= 1.0))
        fail(ErrorKind::invalid_input,
             "specificity must be in [0,1], got " + std::to_string(specificity));
}

namespace {

void check_counts(double infected, double not_infected)
{
    if (!(infected >= 0.0) || !std::isfinite(infected))
        fail(ErrorKind::invalid_input,
             "infected count must be finite and >= 0, got " + std::to_string(infected));
    if (!(not_infected >= 0.0) || !std::isfinite(not_infected))
        fail(ErrorKind::invalid_input,
             "not-infected count must be finite and >= 0, got " + std::to_string(not_infected));
}

} // namespace

ConfusionTable apply_test(double infected, double not_infected, const DiagnosticTest& test)
{
    test.validate();
    check_counts(infected, not_infected);

    ConfusionTable out;
    out.true_positive = test.sensitivity * infected;
    out.false_negative = infected - out.true_positive;
    out.false_positive = (1.0 - test.specificity) * not_infected;
    out.true_negative = not_infected - out.false_positive;
    return out;
}

ConfusionTable apply_test(double infected, double not_infected, const DiagnosticTest& test, Rng& rng)
{
    test.validate();
    check_counts(infected, not_infected);

    ConfusionTable out;
    out.true_positive = rng.binomial(infected, test.sensitivity);
    out.false_negative = infected - out.true_positive;
    out.false_positive = rng.binomial(not_infected, 1.0 - test.specificity);
    out.true_negative = not_infected - out.false_positive;
    return out;
}

double observed_positive_rate(double prevalence, const DiagnosticTest& test)
{
    test.validate();
    if (!(prevalence >= 0.0 && prevalence <= 1.0))
        fail(ErrorKind::invalid_input,
             "prevalence must be in [0,1], got " + std::to_string(prevalence));
    return test.sensitivity * prevalence + (1.0 - test.specificity) * (1.0 - prevalence);
}

CorrectedRate correct_observed_rate(double observed, const DiagnosticTest& test)
{
    test.validate();
    if (!(observed >= 0.0 && observed <= 1.0))
        fail(ErrorKind::invalid_input,
             "observed rate must be in [0,1], got " + std::to_string(observed));
    if (!test.informative())
        fail(ErrorKind::non_invertible_test,
             "test with se + sp = 1 (within " + std::to_string(kInformativeEps) +
                 ") cannot be inverted");

    const double raw =
        (observed - (1.0 - test.specificity)) / (test.sensitivity + test.specificity - 1.0);
    CorrectedRate out;
    out.value = raw;
    if (raw < 0.0) {
        out.value = 0.0;
        out.clamped = true;
    } else if (raw > 1.0) {
        out.value = 1.0;
        out.clamped = true;
    }
    return out;
}

double fp_exceeds_tp_prevalence(const DiagnosticTest& test)
{
    test.validate();
    const double fp_rate = 1.0 - test.specificity;
    if (test.sensitivity + fp_rate <= 0.0)
        fail(ErrorKind::degenerate_test,
             "test with se = 0 and sp = 1 never produces a positive result");
    return fp_rate / (test.sensitivity + fp_rate);
}

} // namespace tnd
