#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tnd/rng.hpp"

namespace tnd {

enum class Arm { vaccinated, unvaccinated };
enum class InfectionCategory { target, other, uninfected };

// Probability of seeking care for an influenza-like illness, one value per
// (arm x infection category) cell. Defaults describe a population where
// everyone with symptoms seeks care.
struct CareSeekProbabilities {
    double vaccinated_target = 1.0;
    double vaccinated_other = 1.0;
    double vaccinated_uninfected = 1.0;
    double unvaccinated_target = 1.0;
    double unvaccinated_other = 1.0;
    double unvaccinated_uninfected = 1.0;

    double at(Arm arm, InfectionCategory category) const;
    double& at(Arm arm, InfectionCategory category);

    bool operator==(const CareSeekProbabilities&) const = default;
};

// Ground-truth population: counts per arm and infection category plus the
// care-seeking behavior that turns them into an observable study table.
// Counts are real-valued; the expected-count split of n by probability q is
// n*q, which need not be integral.
struct LatentPopulation {
    double vaccinated_target = 0.0;
    double vaccinated_other = 0.0;
    double vaccinated_uninfected = 0.0;
    double unvaccinated_target = 0.0;
    double unvaccinated_other = 0.0;
    double unvaccinated_uninfected = 0.0;
    CareSeekProbabilities care_seek;

    double count(Arm arm, InfectionCategory category) const;
    double arm_total(Arm arm) const;

    // Throws invalid-input listing every violated invariant (negative count,
    // probability outside [0,1], empty arm).
    void validate() const;

    bool operator==(const LatentPopulation&) const = default;
};

// The 12-cell study table. Cells A..C / G..I hold care-seekers per infection
// category (target-positive, other-pathogen-positive, not positive), D..F /
// J..L the matching non-care-seekers, N1..N4 the row totals.
struct StudyTable {
    double A = 0, B = 0, C = 0;
    double D = 0, E = 0, F = 0;
    double G = 0, H = 0, I = 0;
    double J = 0, K = 0, L = 0;
    double N1 = 0, N2 = 0, N3 = 0, N4 = 0;

    bool operator==(const StudyTable&) const = default;
};

struct TableViolation {
    std::string what;
    double magnitude = 0.0;
};

// Splits every latent cell into seek-care / not-seek-care parts.
// Deterministic form uses exact expectations n*q; the Rng form draws the
// seek-care count from Binomial(n, q) per cell (counts must be integral).
// Draw order is fixed: vaccinated target/other/uninfected, then
// unvaccinated target/other/uninfected.
StudyTable build_study_table(const LatentPopulation& pop);
StudyTable build_study_table(const LatentPopulation& pop, Rng& rng);
StudyTable build_study_table(const LatentPopulation& pop, std::uint64_t seed);

// Diagnostic check of the table invariants (row conservation, nonnegative
// cells). Returns every violation; never throws.
std::vector<TableViolation> validate_table(const StudyTable& table);

// |B/N1 - H/N3|: deviation from the assumption that other-pathogen illness
// hits both arms of the care-seeking population at the same rate.
double assumption_gap(const StudyTable& table);

} // namespace tnd
