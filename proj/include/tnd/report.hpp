#pragma once

#include <ostream>
#include <string>

#include "tnd/simulate.hpp"

namespace tnd {

// Fixed renderings keep golden-file comparisons portable: CSV numerics use
// 6 significant digits with trailing zeros kept, report values use 5 fixed
// decimals, counts print as integers when they are integral.
std::string format_sig6(double value);
std::string format_fixed5(double value);
std::string format_count(double value);

// CSV per the sweep interface: header row, NA for undefined numeric cells,
// LF line endings, no quoting (all cells are numbers or enum words).
std::string sweep_csv(const SweepResult& result);

// Space-aligned text rendering of the same rows.
std::string sweep_text(const SweepResult& result);

// Per-arm confusion table, paper layout (rows: test result, columns: true
// infection status).
void write_confusion_table(std::ostream& out, const std::string& title,
                           const ConfusionTable& table);

// The two-arm positive/negative table the estimate is read from.
void write_ve_table(std::ostream& out, double positives_vax, double negatives_vax,
                    double positives_unvax, double negatives_unvax);

} // namespace tnd
