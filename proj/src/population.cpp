#include "tnd/population.hpp"

#include <cmath>
#include <sstream>

namespace tnd {

namespace {

const char* category_name(InfectionCategory category)
{
    switch (category) {
    case InfectionCategory::target: return "target";
    case InfectionCategory::other: return "other";
    case InfectionCategory::uninfected: return "uninfected";
    }
    return "?";
}

const char* arm_name(Arm arm)
{
    return arm == Arm::vaccinated ? "vaccinated" : "unvaccinated";
}

} // namespace

double CareSeekProbabilities::at(Arm arm, InfectionCategory category) const
{
    return const_cast<CareSeekProbabilities*>(this)->at(arm, category);
}

double& CareSeekProbabilities::at(Arm arm, InfectionCategory category)
{
    if (arm == Arm::vaccinated) {
        switch (category) {
        case InfectionCategory::target: return vaccinated_target;
        case InfectionCategory::other: return vaccinated_other;
        case InfectionCategory::uninfected: return vaccinated_uninfected;
        }
    }
    switch (category) {
    case InfectionCategory::target: return unvaccinated_target;
    case InfectionCategory::other: return unvaccinated_other;
    case InfectionCategory::uninfected: return unvaccinated_uninfected;
    }
    return unvaccinated_uninfected; // unreachable
}

double LatentPopulation::count(Arm arm, InfectionCategory category) const
{
    if (arm == Arm::vaccinated) {
        switch (category) {
        case InfectionCategory::target: return vaccinated_target;
        case InfectionCategory::other: return vaccinated_other;
        case InfectionCategory::uninfected: return vaccinated_uninfected;
        }
    }
    switch (category) {
    case InfectionCategory::target: return unvaccinated_target;
    case InfectionCategory::other: return unvaccinated_other;
    case InfectionCategory::uninfected: return unvaccinated_uninfected;
    }
    return 0.0; // unreachable
}

double LatentPopulation::arm_total(Arm arm) const
{
    return count(arm, InfectionCategory::target) + count(arm, InfectionCategory::other) +
           count(arm, InfectionCategory::uninfected);
}

void LatentPopulation::validate() const
{
    std::ostringstream problems;
    auto report = [&problems](const std::string& text) {
        if (problems.tellp() > 0)
            problems << "; ";
        problems << text;
    };

    for (Arm arm : {Arm::vaccinated, Arm::unvaccinated}) {
        for (InfectionCategory category :
             {InfectionCategory::target, InfectionCategory::other, InfectionCategory::uninfected}) {
            const double n = count(arm, category);
            if (!(n >= 0.0) || !std::isfinite(n))
                report(std::string(arm_name(arm)) + "_" + category_name(category) +
                       " count must be finite and >= 0, got " + std::to_string(n));
            const double q = care_seek.at(arm, category);
            if (!(q >= 0.0 && q <= 1.0))
                report(std::string("care_seek_") + arm_name(arm) + "_" + category_name(category) +
                       " must be in [0,1], got " + std::to_string(q));
        }
    }
    if (problems.tellp() > 0)
        fail(ErrorKind::invalid_input, "invalid latent population: " + problems.str());

    if (!(arm_total(Arm::vaccinated) > 0.0))
        fail(ErrorKind::invalid_input, "invalid latent population: vaccinated arm total must be > 0");
    if (!(arm_total(Arm::unvaccinated) > 0.0))
        fail(ErrorKind::invalid_input, "invalid latent population: unvaccinated arm total must be > 0");
}

namespace {

struct CellSplit {
    double seek = 0.0;
    double stay = 0.0;
};

CellSplit split_cell(double n, double q, Rng* rng)
{
    CellSplit out;
    out.seek = rng ? rng->binomial(n, q) : n * q;
    out.stay = n - out.seek;
    return out;
}

StudyTable build_table(const LatentPopulation& pop, Rng* rng)
{
    pop.validate();

    // Fixed draw order; part of the reproducibility contract.
    const CellSplit vt = split_cell(pop.vaccinated_target, pop.care_seek.vaccinated_target, rng);
    const CellSplit vo = split_cell(pop.vaccinated_other, pop.care_seek.vaccinated_other, rng);
    const CellSplit vu = split_cell(pop.vaccinated_uninfected, pop.care_seek.vaccinated_uninfected, rng);
    const CellSplit ut = split_cell(pop.unvaccinated_target, pop.care_seek.unvaccinated_target, rng);
    const CellSplit uo = split_cell(pop.unvaccinated_other, pop.care_seek.unvaccinated_other, rng);
    const CellSplit uu = split_cell(pop.unvaccinated_uninfected, pop.care_seek.unvaccinated_uninfected, rng);

    StudyTable t;
    t.A = vt.seek;
    t.B = vo.seek;
    t.C = vu.seek;
    t.D = vt.stay;
    t.E = vo.stay;
    t.F = vu.stay;
    t.G = ut.seek;
    t.H = uo.seek;
    t.I = uu.seek;
    t.J = ut.stay;
    t.K = uo.stay;
    t.L = uu.stay;
    t.N1 = t.A + t.B + t.C;
    t.N2 = t.D + t.E + t.F;
    t.N3 = t.G + t.H + t.I;
    t.N4 = t.J + t.K + t.L;
    return t;
}

} // namespace

StudyTable build_study_table(const LatentPopulation& pop)
{
    return build_table(pop, nullptr);
}

StudyTable build_study_table(const LatentPopulation& pop, Rng& rng)
{
    return build_table(pop, &rng);
}

StudyTable build_study_table(const LatentPopulation& pop, std::uint64_t seed)
{
    Rng rng(seed);
    return build_table(pop, &rng);
}

std::vector<TableViolation> validate_table(const StudyTable& t)
{
    std::vector<TableViolation> violations;

    struct Row {
        const char* name;
        double sum;
        double total;
    };
    const Row rows[] = {
        {"row 1 (A+B+C vs N1)", t.A + t.B + t.C, t.N1},
        {"row 2 (D+E+F vs N2)", t.D + t.E + t.F, t.N2},
        {"row 3 (G+H+I vs N3)", t.G + t.H + t.I, t.N3},
        {"row 4 (J+K+L vs N4)", t.J + t.K + t.L, t.N4},
    };
    for (const Row& row : rows) {
        const double gap = std::abs(row.sum - row.total);
        const double tolerance = 1e-9 * std::max(1.0, std::abs(row.total));
        if (!(gap <= tolerance))
            violations.push_back({std::string(row.name) + " must agree", gap});
    }

    struct Cell {
        const char* name;
        double value;
    };
    const Cell cells[] = {
        {"A", t.A}, {"B", t.B}, {"C", t.C}, {"D", t.D}, {"E", t.E}, {"F", t.F},
        {"G", t.G}, {"H", t.H}, {"I", t.I}, {"J", t.J}, {"K", t.K}, {"L", t.L},
        {"N1", t.N1}, {"N2", t.N2}, {"N3", t.N3}, {"N4", t.N4},
    };
    for (const Cell& cell : cells) {
        if (!(cell.value >= 0.0))
            violations.push_back({std::string(cell.name) + " must be >= 0", -cell.value});
    }
    return violations;
}

double assumption_gap(const StudyTable& t)
{
    if (!(t.N1 > 0.0))
        fail(ErrorKind::invalid_input, "assumption gap needs N1 > 0");
    if (!(t.N3 > 0.0))
        fail(ErrorKind::invalid_input, "assumption gap needs N3 > 0");
    return std::abs(t.B / t.N1 - t.H / t.N3);
}

} // namespace tnd
