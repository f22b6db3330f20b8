#pragma once

#include "tnd/rng.hpp"

namespace tnd {

// A test with se + sp = 1 carries no information: the positive rate is then
// independent of infection status and the misclassification model cannot be
// inverted. A hard threshold keeps that failure deterministic.
inline constexpr double kInformativeEps = 1e-9;

struct DiagnosticTest {
    double sensitivity = 1.0;
    double specificity = 1.0;

    bool informative(double eps = kInformativeEps) const;
    void validate() const;

    bool operator==(const DiagnosticTest&) const = default;
};

struct ConfusionTable {
    double true_positive = 0.0;
    double false_positive = 0.0;
    double false_negative = 0.0;
    double true_negative = 0.0;

    double positives() const { return true_positive + false_positive; }
    double negatives() const { return false_negative + true_negative; }
    double infected() const { return true_positive + false_negative; }
    double not_infected() const { return false_positive + true_negative; }
};

// Forward misclassification: tp = se*infected, fp = (1-sp)*not_infected,
// complements exact. The Rng form draws tp and fp from binomials (counts
// must be integral); tp is drawn before fp.
ConfusionTable apply_test(double infected, double not_infected, const DiagnosticTest& test);
ConfusionTable apply_test(double infected, double not_infected, const DiagnosticTest& test, Rng& rng);

// se*p + (1-sp)*(1-p): the positive-test rate a prevalence produces.
double observed_positive_rate(double prevalence, const DiagnosticTest& test);

struct CorrectedRate {
    double value = 0.0;
    bool clamped = false;
};

// Rogan-Gladen inversion (observed - (1-sp)) / (se + sp - 1), clamped to
// [0,1]. Sampled rates can legitimately fall below 1-sp, so clamping is a
// flagged outcome, not an error. Uninformative tests cannot be inverted.
CorrectedRate correct_observed_rate(double observed, const DiagnosticTest& test);

// The prevalence (1-sp) / (se + (1-sp)) below which expected false positives
// outnumber expected true positives. se = 0 with sp = 1 yields no positives
// of either kind and is rejected as degenerate.
double fp_exceeds_tp_prevalence(const DiagnosticTest& test);

} // namespace tnd
