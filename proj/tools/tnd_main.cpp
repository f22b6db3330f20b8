#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tnd/cli.hpp"
#include "tnd/config.hpp"
#include "tnd/report.hpp"

namespace {

using tnd::cli::Format;

bool read_file(const std::string& path, std::string& text, std::ostream& err)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << "tnd: cannot read '" << path << "'\n";
        return false;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
    return true;
}

// Runs a command against stdout or --output, writing the file only on
// success so a failed run never leaves a half-written report behind.
template <typename Command>
int with_output(const std::optional<std::string>& output_path, Command&& command)
{
    if (!output_path) {
        const int code = command(std::cout);
        std::cout.flush();
        return code;
    }
    std::ostringstream buffer;
    const int code = command(buffer);
    if (code != tnd::cli::kExitOk && code != tnd::cli::kExitSelfCheck)
        return code;
    std::ofstream out(*output_path, std::ios::binary);
    if (!out) {
        std::cerr << "tnd: cannot write '" << *output_path << "'\n";
        return tnd::cli::kExitUsage;
    }
    out << buffer.str();
    if (!out.flush()) {
        std::cerr << "tnd: error writing '" << *output_path << "'\n";
        return tnd::cli::kExitUsage;
    }
    return code;
}

bool parse_counts_csv(const std::string& text, tnd::ObservedCounts& counts, std::ostream& err)
{
    std::istringstream in(text);
    std::string header;
    std::string data;
    if (!std::getline(in, header) || !std::getline(in, data)) {
        err << "tnd: counts CSV needs a header row and one data row\n";
        return false;
    }
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::istringstream stream(line);
        std::string cell;
        while (std::getline(stream, cell, ','))
        {
            while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t'))
                cell.erase(cell.begin());
            while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' ||
                                     cell.back() == '\r'))
                cell.pop_back();
            cells.push_back(cell);
        }
        return cells;
    };
    const std::vector<std::string> names = split(header);
    const std::vector<std::string> values = split(data);
    const std::vector<std::string> expected = {"a", "b", "c", "g", "h", "i"};
    if (names != expected) {
        err << "tnd: counts CSV header must be exactly 'a,b,c,g,h,i'\n";
        return false;
    }
    if (values.size() != expected.size()) {
        err << "tnd: counts CSV data row must have 6 values\n";
        return false;
    }
    double* fields[] = {&counts.a, &counts.b, &counts.c, &counts.g, &counts.h, &counts.i};
    for (std::size_t k = 0; k < values.size(); ++k) {
        try {
            std::size_t consumed = 0;
            *fields[k] = std::stod(values[k], &consumed);
            if (consumed != values[k].size())
                throw std::invalid_argument(values[k]);
        } catch (const std::exception&) {
            err << "tnd: counts CSV value '" << values[k] << "' for '" << expected[k]
                << "' is not a number\n";
            return false;
        }
    }
    return true;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"test-negative design simulation and estimation toolkit"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;
    std::optional<std::string> output_path;
    std::string format_name = "text";
    app.add_option("--seed", seed, "master seed for stochastic runs (overrides the config)");
    app.add_option("--output", output_path, "write the report to this path instead of stdout");
    app.add_option("--format", format_name, "output format")
        ->check(CLI::IsMember({"text", "csv"}));

    CLI::App* reproduce = app.add_subcommand(
        "reproduce-paper", "print the three worked misclassification examples (self-checked)");
    reproduce->fallthrough();

    CLI::App* estimate = app.add_subcommand(
        "estimate", "estimate VE from observed counts under every method and control policy");
    estimate->fallthrough();
    // --h would collide with the default -h help alias
    estimate->set_help_flag("--help", "print this help message and exit");
    std::optional<double> a, b, c, g, h, i;
    std::string counts_path;
    std::vector<CLI::Option*> count_options = {
        estimate->add_option("--a", a, "test-positive-target count, vaccinated arm"),
        estimate->add_option("--b", b, "positive-with-other-pathogen count, vaccinated arm"),
        estimate->add_option("--c", c, "pan-negative count, vaccinated arm"),
        estimate->add_option("--g", g, "test-positive-target count, unvaccinated arm"),
        estimate->add_option("--h", h, "positive-with-other-pathogen count, unvaccinated arm"),
        estimate->add_option("--i", i, "pan-negative count, unvaccinated arm"),
    };
    CLI::Option* input_option =
        estimate->add_option("--input", counts_path, "CSV file with header a,b,c,g,h,i and one row");
    for (CLI::Option* option : count_options)
        input_option->excludes(option);

    CLI::App* simulate =
        app.add_subcommand("simulate", "run one scenario from a config file");
    simulate->fallthrough();
    std::string simulate_config;
    std::size_t replications = 1;
    simulate->add_option("--config", simulate_config, "scenario config file")->required();
    simulate->add_option("--replications", replications,
                         "Monte Carlo replications (stochastic scenarios)");

    CLI::App* sweep = app.add_subcommand("sweep", "evaluate a parameter sweep from a config file");
    sweep->fallthrough();
    std::string sweep_config;
    sweep->add_option("--config", sweep_config, "sweep config file (axis.* keys)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : tnd::cli::kExitUsage;
    }

    const Format format = format_name == "csv" ? Format::csv : Format::text;

    if (reproduce->parsed()) {
        return with_output(output_path,
                           [](std::ostream& out) {
                               return tnd::cli::cmd_reproduce_paper(out, std::cerr);
                           });
    }

    if (estimate->parsed()) {
        tnd::ObservedCounts counts;
        if (!counts_path.empty()) {
            std::string text;
            if (!read_file(counts_path, text, std::cerr))
                return tnd::cli::kExitUsage;
            if (!parse_counts_csv(text, counts, std::cerr))
                return tnd::cli::kExitUsage;
        } else {
            if (!a || !b || !c || !g || !h || !i) {
                std::cerr << "tnd: estimate needs --a --b --c --g --h --i (or --input FILE)\n";
                return tnd::cli::kExitUsage;
            }
            counts = tnd::ObservedCounts{*a, *b, *c, *g, *h, *i};
        }
        return with_output(output_path, [&counts, format](std::ostream& out) {
            return tnd::cli::cmd_estimate(counts, format, out, std::cerr);
        });
    }

    if (simulate->parsed()) {
        std::string text;
        if (!read_file(simulate_config, text, std::cerr))
            return tnd::cli::kExitUsage;
        return with_output(output_path, [&](std::ostream& out) {
            return tnd::cli::cmd_simulate(text, seed, replications, format, out, std::cerr);
        });
    }

    std::string text;
    if (!read_file(sweep_config, text, std::cerr))
        return tnd::cli::kExitUsage;
    // sweep emits CSV unless text is asked for explicitly
    const Format sweep_format = app.count("--format") > 0 ? format : Format::csv;
    return with_output(output_path, [&](std::ostream& out) {
        return tnd::cli::cmd_sweep(text, seed, sweep_format, out, std::cerr);
    });
}
