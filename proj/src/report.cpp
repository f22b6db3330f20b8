#include "tnd/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace tnd {

std::string format_sig6(double value)
{
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%#.6g", value);
    return buffer;
}

std::string format_fixed5(double value)
{
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.5f", value);
    return buffer;
}

std::string format_count(double value)
{
    // Expected counts like (1-sp)*9900 land within an ulp of an integer;
    // print those as integers and keep %#.6g for genuinely fractional cells.
    const double rounded = std::round(value);
    if (std::abs(value - rounded) <= 1e-9 * std::max(1.0, std::abs(value)) &&
        std::abs(rounded) < 9.007199254740992e15) {
        char buffer[32];
        std::snprintf(buffer, sizeof(buffer), "%.0f", rounded);
        return buffer;
    }
    return format_sig6(value);
}

namespace {

constexpr std::string_view kNa = "NA";

std::vector<std::string> row_cells(const SweepResult& result, const SweepRow& row)
{
    std::vector<std::string> cells;
    cells.reserve(result.axis_names.size() + 12);
    for (double v : row.axis_values)
        cells.push_back(format_sig6(v));

    const Method method = row.estimate ? row.estimate->method : result.method;
    const ControlGroup control = row.estimate ? row.estimate->control_group : result.control;
    cells.push_back(row.estimate ? format_sig6(row.estimate->value) : std::string(kNa));
    cells.emplace_back(to_string(method));
    cells.emplace_back(to_string(control));
    if (row.mc) {
        cells.push_back(format_sig6(row.mc->mean));
        cells.push_back(format_sig6(row.mc->sd));
        cells.push_back(format_sig6(row.mc->q025));
        cells.push_back(format_sig6(row.mc->q50));
        cells.push_back(format_sig6(row.mc->q975));
    } else {
        for (int i = 0; i < 5; ++i)
            cells.emplace_back(kNa);
    }
    cells.push_back(format_sig6(row.error_rate));
    cells.push_back(row.gap ? format_sig6(*row.gap) : std::string(kNa));
    cells.push_back(format_sig6(row.clamped_rate));
    return cells;
}

std::vector<std::string> header_cells(const SweepResult& result)
{
    std::vector<std::string> cells(result.axis_names.begin(), result.axis_names.end());
    for (const char* name : {"ve", "method", "control_group", "mc_mean", "mc_sd", "q025", "q50",
                             "q975", "error_rate", "assumption_gap", "clamped"})
        cells.emplace_back(name);
    return cells;
}

} // namespace

std::string sweep_csv(const SweepResult& result)
{
    std::ostringstream out;
    const std::vector<std::string> header = header_cells(result);
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i > 0 ? "," : "") << header[i];
    out << "\n";
    for (const SweepRow& row : result.rows) {
        const std::vector<std::string> cells = row_cells(result, row);
        for (std::size_t i = 0; i < cells.size(); ++i)
            out << (i > 0 ? "," : "") << cells[i];
        out << "\n";
    }
    return out.str();
}

std::string sweep_text(const SweepResult& result)
{
    const std::vector<std::string> header = header_cells(result);
    std::vector<std::vector<std::string>> body;
    body.reserve(result.rows.size());
    for (const SweepRow& row : result.rows)
        body.push_back(row_cells(result, row));

    std::vector<std::size_t> widths(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) {
        widths[i] = header[i].size();
        for (const auto& cells : body)
            widths[i] = std::max(widths[i], cells[i].size());
    }

    std::ostringstream out;
    auto emit = [&out, &widths](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0)
                out << "  ";
            out << std::string(widths[i] - cells[i].size(), ' ') << cells[i];
        }
        out << "\n";
    };
    emit(header);
    for (const auto& cells : body)
        emit(cells);
    return out.str();
}

namespace {

void write_table_line(std::ostream& out, int indent, const std::string& label,
                      const std::string& c1, const std::string& c2, const std::string& c3)
{
    char buffer[160];
    std::snprintf(buffer, sizeof(buffer), "%*s%-*s%15s%15s%15s\n", indent, "", 26 - indent,
                  label.c_str(), c1.c_str(), c2.c_str(), c3.c_str());
    out << buffer;
}

} // namespace

void write_confusion_table(std::ostream& out, const std::string& title, const ConfusionTable& t)
{
    write_table_line(out, 2, title, "infected", "not infected", "total");
    write_table_line(out, 4, "test positive", format_count(t.true_positive),
                     format_count(t.false_positive), format_count(t.positives()));
    write_table_line(out, 4, "test negative", format_count(t.false_negative),
                     format_count(t.true_negative), format_count(t.negatives()));
    write_table_line(out, 4, "total", format_count(t.infected()), format_count(t.not_infected()),
                     format_count(t.infected() + t.not_infected()));
}

void write_ve_table(std::ostream& out, double positives_vax, double negatives_vax,
                    double positives_unvax, double negatives_unvax)
{
    write_table_line(out, 2, "study table", "test positive", "test negative", "total");
    write_table_line(out, 4, "vaccinated", format_count(positives_vax),
                     format_count(negatives_vax), format_count(positives_vax + negatives_vax));
    write_table_line(out, 4, "not vaccinated", format_count(positives_unvax),
                     format_count(negatives_unvax),
                     format_count(positives_unvax + negatives_unvax));
    write_table_line(out, 4, "total", format_count(positives_vax + positives_unvax),
                     format_count(negatives_vax + negatives_unvax),
                     format_count(positives_vax + negatives_vax + positives_unvax +
                                  negatives_unvax));
}

} // namespace tnd
