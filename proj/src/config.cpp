#include "tnd/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tnd {

namespace {

std::string join_violations(const std::vector<ConfigViolation>& violations)
{
    std::ostringstream out;
    out << "invalid scenario config (" << violations.size() << " violation"
        << (violations.size() == 1 ? "" : "s") << ")";
    for (const ConfigViolation& v : violations) {
        out << "\n  ";
        if (v.line > 0)
            out << "line " << v.line << ": ";
        out << v.message;
    }
    return out.str();
}

} // namespace

ConfigParseError::ConfigParseError(std::vector<ConfigViolation> violations)
    : Error(ErrorKind::config_error, join_violations(violations)),
      violations_(std::move(violations))
{
}

namespace {

constexpr std::string_view kSchemaVersion = "1";

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view text, double& out)
{
    text = trim(text);
    if (text.empty())
        return false;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parse_u64(std::string_view text, std::uint64_t& out)
{
    text = trim(text);
    if (text.empty())
        return false;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

struct Entry {
    std::string key;
    std::string value;
    int line = 0;
    bool used = false;
};

class ConfigReader {
public:
    explicit ConfigReader(std::string_view text)
    {
        int line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t eol = text.find('\n', pos);
            std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                         ? std::string_view::npos
                                                         : eol - pos);
            ++line_no;
            pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

            if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;

            const std::size_t eq = line.find('=');
            if (eq == std::string_view::npos) {
                violate(line_no, "expected 'key = value', got '" + std::string(line) + "'");
                continue;
            }
            Entry entry;
            entry.key = std::string(trim(line.substr(0, eq)));
            entry.value = std::string(trim(line.substr(eq + 1)));
            entry.line = line_no;
            if (entry.key.empty()) {
                violate(line_no, "empty key");
                continue;
            }
            if (find(entry.key) != nullptr) {
                violate(line_no, "duplicate key '" + entry.key + "'");
                continue;
            }
            entries_.push_back(std::move(entry));
        }
    }

    void violate(int line, const std::string& message)
    {
        violations_.push_back({line, message});
    }

    Entry* find(const std::string& key)
    {
        const auto it = std::find_if(entries_.begin(), entries_.end(),
                                     [&key](const Entry& e) { return e.key == key; });
        return it == entries_.end() ? nullptr : &*it;
    }

    Entry* take(const std::string& key)
    {
        Entry* entry = find(key);
        if (entry != nullptr)
            entry->used = true;
        return entry;
    }

    // Required number; any violation leaves `out` untouched.
    void require_double(const std::string& key, double& out, double min, double max)
    {
        Entry* entry = take(key);
        if (entry == nullptr) {
            violate(0, "missing required key '" + key + "'");
            return;
        }
        read_double(*entry, out, min, max);
    }

    void optional_double(const std::string& key, double& out, double min, double max)
    {
        if (Entry* entry = take(key))
            read_double(*entry, out, min, max);
    }

    void read_double(const Entry& entry, double& out, double min, double max)
    {
        double value = 0.0;
        if (!parse_double(entry.value, value)) {
            violate(entry.line, "'" + entry.key + "' must be a number, got '" + entry.value + "'");
            return;
        }
        if (value < min || value > max) {
            std::ostringstream msg;
            msg << "'" << entry.key << "' must be in [" << min << ", " << max << "], got "
                << entry.value;
            violate(entry.line, msg.str());
            return;
        }
        out = value;
    }

    template <typename Enum>
    void optional_enum(const std::string& key, Enum& out,
                       std::initializer_list<std::pair<std::string_view, Enum>> table)
    {
        Entry* entry = take(key);
        if (entry == nullptr)
            return;
        for (const auto& [name, value] : table) {
            if (entry->value == name) {
                out = value;
                return;
            }
        }
        std::ostringstream msg;
        msg << "'" << key << "' must be one of {";
        bool first = true;
        for (const auto& [name, value] : table) {
            msg << (first ? "" : ", ") << name;
            first = false;
        }
        msg << "}, got '" << entry->value << "'";
        violate(entry->line, msg.str());
    }

    std::vector<ConfigViolation> violations_;
    std::vector<Entry> entries_;
};

} // namespace

ParsedConfig parse_scenario_config(std::string_view text)
{
    ConfigReader reader(text);

    // Schema version gate first: everything else is meaningless on mismatch.
    if (Entry* schema = reader.take("schema")) {
        if (trim(schema->value) != kSchemaVersion)
            reader.violate(schema->line, "schema version mismatch: expected " +
                                             std::string(kSchemaVersion) + ", got '" +
                                             schema->value + "'");
    } else {
        reader.violate(0, "missing required key 'schema'");
    }

    Scenario scenario;
    constexpr double kMaxCount = 1e15; // counts stay exactly representable
    reader.require_double("vaccinated_target", scenario.population.vaccinated_target, 0, kMaxCount);
    reader.require_double("vaccinated_other", scenario.population.vaccinated_other, 0, kMaxCount);
    reader.require_double("vaccinated_uninfected", scenario.population.vaccinated_uninfected, 0,
                          kMaxCount);
    reader.require_double("unvaccinated_target", scenario.population.unvaccinated_target, 0,
                          kMaxCount);
    reader.require_double("unvaccinated_other", scenario.population.unvaccinated_other, 0,
                          kMaxCount);
    reader.require_double("unvaccinated_uninfected", scenario.population.unvaccinated_uninfected,
                          0, kMaxCount);

    CareSeekProbabilities& care = scenario.population.care_seek;
    reader.optional_double("care_seek_vaccinated_target", care.vaccinated_target, 0, 1);
    reader.optional_double("care_seek_vaccinated_other", care.vaccinated_other, 0, 1);
    reader.optional_double("care_seek_vaccinated_uninfected", care.vaccinated_uninfected, 0, 1);
    reader.optional_double("care_seek_unvaccinated_target", care.unvaccinated_target, 0, 1);
    reader.optional_double("care_seek_unvaccinated_other", care.unvaccinated_other, 0, 1);
    reader.optional_double("care_seek_unvaccinated_uninfected", care.unvaccinated_uninfected, 0,
                           1);

    reader.require_double("sensitivity", scenario.test.sensitivity, 0, 1);
    reader.require_double("specificity", scenario.test.specificity, 0, 1);

    reader.optional_enum("method", scenario.method,
                         {{"risk-ratio", Method::risk_ratio}, {"odds-ratio", Method::odds_ratio}});
    reader.optional_enum("control_group", scenario.control,
                         {{"other-pathogen", ControlGroup::other_pathogen},
                          {"pan-negative", ControlGroup::pan_negative},
                          {"combined", ControlGroup::combined},
                          {"not-applicable", ControlGroup::not_applicable}});
    reader.optional_enum("correct", scenario.correct, {{"true", true}, {"false", false}});

    if (Entry* mode = reader.take("mode")) {
        if (mode->value == "deterministic")
            scenario.mode = Mode::deterministic;
        else if (mode->value == "stochastic")
            scenario.mode = Mode::stochastic;
        else
            reader.violate(mode->line, "'mode' must be one of {deterministic, stochastic}, got '" +
                                           mode->value + "'");
    } else {
        reader.violate(0, "missing required key 'mode'");
    }

    Entry* seed = reader.take("seed");
    if (seed != nullptr) {
        if (!parse_u64(seed->value, scenario.seed))
            reader.violate(seed->line, "'seed' must be an unsigned 64-bit integer, got '" +
                                           seed->value + "'");
    } else if (scenario.mode == Mode::stochastic) {
        reader.violate(0, "missing required key 'seed' (required when mode = stochastic)");
    }

    // Sweep-only keys.
    std::vector<SweepAxis> axes;
    for (Entry& entry : reader.entries_) {
        if (entry.used || entry.key.rfind("axis.", 0) != 0)
            continue;
        entry.used = true;
        SweepAxis axis;
        axis.parameter = entry.key.substr(5);
        Scenario probe;
        if (resolve_scenario_parameter(probe, axis.parameter) == nullptr) {
            reader.violate(entry.line,
                           "unknown sweep parameter '" + axis.parameter + "' in '" + entry.key +
                               "'");
            continue;
        }
        std::string_view rest = entry.value;
        bool ok = true;
        while (true) {
            const std::size_t comma = rest.find(',');
            const std::string_view token = trim(rest.substr(0, comma));
            double value = 0.0;
            if (!parse_double(token, value)) {
                reader.violate(entry.line, "'" + entry.key + "' has a non-numeric value '" +
                                               std::string(token) + "'");
                ok = false;
                break;
            }
            axis.values.push_back(value);
            if (comma == std::string_view::npos)
                break;
            rest.remove_prefix(comma + 1);
        }
        if (ok && axis.values.empty())
            reader.violate(entry.line, "'" + entry.key + "' has no values");
        else if (ok)
            axes.push_back(std::move(axis));
    }

    SweepSpec sweep;
    sweep.replications = 1;
    bool is_sweep = !axes.empty();
    if (Entry* reps = reader.take("replications")) {
        std::uint64_t value = 0;
        if (!parse_u64(reps->value, value) || value < 1)
            reader.violate(reps->line, "'replications' must be a positive integer, got '" +
                                           reps->value + "'");
        else
            sweep.replications = static_cast<std::size_t>(value);
        if (!is_sweep)
            reader.violate(reps->line,
                           "'replications' is only valid in sweep configs (no axis.* keys here); "
                           "use the simulate command's --replications flag for a single scenario");
    }
    if (Entry* axis_mode = reader.take("axis_mode")) {
        if (axis_mode->value == "grid")
            sweep.axis_mode = AxisMode::grid;
        else if (axis_mode->value == "zip")
            sweep.axis_mode = AxisMode::zip;
        else
            reader.violate(axis_mode->line, "'axis_mode' must be one of {grid, zip}, got '" +
                                                axis_mode->value + "'");
        if (!is_sweep)
            reader.violate(axis_mode->line,
                           "'axis_mode' is only valid in sweep configs (no axis.* keys here)");
    }

    for (const Entry& entry : reader.entries_) {
        if (!entry.used)
            reader.violate(entry.line, "unknown key '" + entry.key + "'");
    }

    // Cross-field checks that only make sense on a syntactically clean spec.
    if (reader.violations_.empty()) {
        try {
            if (is_sweep) {
                sweep.base = scenario;
                sweep.axes = std::move(axes);
                sweep.validate();
            } else {
                scenario.validate();
            }
        } catch (const Error& e) {
            reader.violate(0, e.what());
        }
    }

    if (!reader.violations_.empty()) {
        std::stable_sort(reader.violations_.begin(), reader.violations_.end(),
                         [](const ConfigViolation& a, const ConfigViolation& b) {
                             if ((a.line == 0) != (b.line == 0))
                                 return b.line == 0;
                             return a.line < b.line;
                         });
        throw ConfigParseError(std::move(reader.violations_));
    }

    if (is_sweep)
        return sweep;
    return scenario;
}

namespace {

std::string format_exact(double value)
{
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    // Shortest representation that round-trips keeps the files readable.
    for (int precision = 1; precision < 17; ++precision) {
        char probe[64];
        std::snprintf(probe, sizeof(probe), "%.*g", precision, value);
        double back = 0.0;
        if (parse_double(probe, back) && back == value)
            return probe;
    }
    return buffer;
}

void write_scenario_fields(std::ostringstream& out, const Scenario& s)
{
    out << "schema = " << kSchemaVersion << "\n";
    out << "\n# latent population (counts per arm and infection category)\n";
    out << "vaccinated_target = " << format_exact(s.population.vaccinated_target) << "\n";
    out << "vaccinated_other = " << format_exact(s.population.vaccinated_other) << "\n";
    out << "vaccinated_uninfected = " << format_exact(s.population.vaccinated_uninfected) << "\n";
    out << "unvaccinated_target = " << format_exact(s.population.unvaccinated_target) << "\n";
    out << "unvaccinated_other = " << format_exact(s.population.unvaccinated_other) << "\n";
    out << "unvaccinated_uninfected = " << format_exact(s.population.unvaccinated_uninfected)
        << "\n";
    out << "\n# care-seeking probabilities\n";
    const CareSeekProbabilities& care = s.population.care_seek;
    out << "care_seek_vaccinated_target = " << format_exact(care.vaccinated_target) << "\n";
    out << "care_seek_vaccinated_other = " << format_exact(care.vaccinated_other) << "\n";
    out << "care_seek_vaccinated_uninfected = " << format_exact(care.vaccinated_uninfected)
        << "\n";
    out << "care_seek_unvaccinated_target = " << format_exact(care.unvaccinated_target) << "\n";
    out << "care_seek_unvaccinated_other = " << format_exact(care.unvaccinated_other) << "\n";
    out << "care_seek_unvaccinated_uninfected = " << format_exact(care.unvaccinated_uninfected)
        << "\n";
    out << "\n# diagnostic test\n";
    out << "sensitivity = " << format_exact(s.test.sensitivity) << "\n";
    out << "specificity = " << format_exact(s.test.specificity) << "\n";
    out << "\n# estimator\n";
    out << "method = " << to_string(s.method) << "\n";
    out << "control_group = " << to_string(s.control) << "\n";
    out << "correct = " << (s.correct ? "true" : "false") << "\n";
    out << "\n# sampling\n";
    out << "mode = " << to_string(s.mode) << "\n";
    out << "seed = " << s.seed << "\n";
}

} // namespace

std::string write_scenario_config(const Scenario& scenario)
{
    std::ostringstream out;
    write_scenario_fields(out, scenario);
    return out.str();
}

std::string write_scenario_config(const SweepSpec& spec)
{
    std::ostringstream out;
    write_scenario_fields(out, spec.base);
    out << "\n# sweep\n";
    out << "axis_mode = " << to_string(spec.axis_mode) << "\n";
    out << "replications = " << spec.replications << "\n";
    for (const SweepAxis& axis : spec.axes) {
        out << "axis." << axis.parameter << " = ";
        for (std::size_t i = 0; i < axis.values.size(); ++i)
            out << (i > 0 ? ", " : "") << format_exact(axis.values[i]);
        out << "\n";
    }
    return out.str();
}

std::string write_scenario_config(const ParsedConfig& config)
{
    if (const auto* scenario = std::get_if<Scenario>(&config))
        return write_scenario_config(*scenario);
    return write_scenario_config(std::get<SweepSpec>(config));
}

} // namespace tnd
