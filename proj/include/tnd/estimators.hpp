#pragma once

#include <string_view>
#include <utility>

#include "tnd/testing.hpp"

namespace tnd {

enum class Method { risk_ratio, odds_ratio };

enum class ControlGroup { other_pathogen, pan_negative, combined, not_applicable };

constexpr std::string_view to_string(Method method) noexcept
{
    return method == Method::risk_ratio ? "risk-ratio" : "odds-ratio";
}

constexpr std::string_view to_string(ControlGroup control) noexcept
{
    switch (control) {
    case ControlGroup::other_pathogen: return "other-pathogen";
    case ControlGroup::pan_negative: return "pan-negative";
    case ControlGroup::combined: return "combined";
    case ControlGroup::not_applicable: return "not-applicable";
    }
    return "unknown";
}

// Study-level sampled counts: test-positive-target (a, g), positive with
// another pathogen (b, h) and pan-negative (c, i), per arm. Row totals are
// derived so they cannot drift out of sync with the components.
struct ObservedCounts {
    double a = 0, b = 0, c = 0;
    double g = 0, h = 0, i = 0;

    double n1() const { return a + b + c; }
    double n3() const { return g + h + i; }

    void validate() const;

    bool operator==(const ObservedCounts&) const = default;
};

// |b/n1 - h/n3| on sampled counts.
double assumption_gap(const ObservedCounts& counts);

struct VEEstimate {
    double value = 0.0;
    Method method = Method::risk_ratio;
    ControlGroup control_group = ControlGroup::not_applicable;
    bool clamped = false; // set only by corrected estimates
};

// 1 - (a/n1)/(g/n3): attack-rate ratio between arms.
VEEstimate ve_risk_ratio(double a, double n1, double g, double n3);

// 1 - (a*control_unvax)/(g*control_vax): case/control odds ratio. The
// control tag records which policy produced the control counts.
VEEstimate ve_odds_ratio(double a, double control_vax, double g, double control_unvax,
                         ControlGroup control = ControlGroup::not_applicable);

// Control-group policy: other-pathogen positives (b, h), pan-negatives
// (c, i), or both groups together. Returns (control_vax, control_unvax).
std::pair<double, double> select_control(const ObservedCounts& counts, ControlGroup policy);

// The worked-example pipeline: per-arm forward misclassification of the true
// prevalences, then the estimate on observed positives. The two-column
// positive/negative table this produces supports the risk-ratio estimator
// and the combined-control odds-ratio variant.
VEEstimate ve_pipeline_with_misclassification(double vax_size, double unvax_size,
                                              double prevalence_vax, double prevalence_unvax,
                                              const DiagnosticTest& test,
                                              Method method = Method::risk_ratio);

// Rogan-Gladen correction of each arm's observed positive rate, then the
// risk-ratio estimate on corrected prevalences. clamped is set when either
// arm's correction hit the [0,1] clamp.
VEEstimate ve_corrected(double positives_vax, double positives_unvax, double size_vax,
                        double size_unvax, const DiagnosticTest& test);

} // namespace tnd
