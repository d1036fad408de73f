#include "axipot/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace axipot {

namespace {

const std::map<std::string, std::string>& default_entries() {
    static const std::map<std::string, std::string> defaults = {
        {"case.name", ""},
        {"case.U", "1"},
        {"case.A", "1"},
        {"case.m", "1"},
        {"case.z0", "-0.5"},
        {"case.g", "0"},
        {"case.nu", "0.5"},
        {"case.rho", "1"},
        {"case.envelope", "none"},
        {"case.exclusion_radius", "0"},
        {"time.t", "0"},
        {"grid.nr", "33"},
        {"grid.nz", "33"},
        {"grid.rmax", "1"},
        {"grid.zmin", "0"},
        {"grid.zmax", "1"},
        {"solver.tol", "1e-10"},
        {"solver.max_iter", "0"},
        {"solver.guess", "zeros"},
        {"derivatives.source", "analytic"},
        {"psi.source", "sample"},
        {"thresholds.analytic", "1e-10"},
        {"thresholds.discrete_coeff", "50"},
        {"falsify.stable_pct", "5"},
        {"falsify.min_ratio", "10"},
        {"levels", "17,33,65"},
        {"out.dir", ""},
    };
    return defaults;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE)
        throw config_error("config: key '" + key + "' has non-numeric value '" + value + "'");
    return v;
}

long parse_long(const std::string& key, const std::string& value) {
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE)
        throw config_error("config: key '" + key + "' has non-integer value '" + value + "'");
    return v;
}

void require_one_of(const std::string& key, const std::string& value,
                    std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (value == a)
            return;
    std::string msg = "config: key '" + key + "' must be one of {";
    bool first = true;
    for (const char* a : allowed) {
        if (!first)
            msg += ", ";
        msg += a;
        first = false;
    }
    throw config_error(msg + "}, got '" + value + "'");
}

} // namespace

Config::Config() : values_(default_entries()) {}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw config_error("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

Config Config::from_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config: line " + std::to_string(lineno) +
                               " is not key=value: '" + line + "'");
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

void Config::set(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw config_error("config: override is not key=value: '" + assignment + "'");
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void Config::set(const std::string& key, const std::string& value) {
    if (default_entries().find(key) == default_entries().end())
        throw config_error("config: unknown key '" + key + "'");
    values_[key] = value;
}

const std::string& Config::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end())
        throw config_error("config: unknown key '" + key + "'");
    return it->second;
}

double Config::get_double(const std::string& key) const {
    return parse_double(key, get(key));
}

int Config::get_int(const std::string& key) const {
    return static_cast<int>(parse_long(key, get(key)));
}

long Config::get_long(const std::string& key) const {
    return parse_long(key, get(key));
}

std::vector<int> Config::levels(int min_levels) const {
    std::vector<int> out;
    std::istringstream in(get("levels"));
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(static_cast<int>(parse_long("levels", trim(item))));
    if (static_cast<int>(out.size()) < min_levels)
        throw config_error("config: 'levels' needs at least " + std::to_string(min_levels) +
                           " entries, got " + std::to_string(out.size()));
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (out[k] < 3)
            throw config_error("config: level node counts must be >= 3");
        if (k > 0 && out[k] - 1 != 2 * (out[k - 1] - 1))
            throw config_error("config: each level must refine the previous by factor 2 "
                               "(node count n -> 2n-1)");
    }
    return out;
}

void Config::validate() const {
    require_one_of("case.name", get("case.name"),
                   {"uniform", "stagnation", "source", "rest"});
    require_one_of("case.envelope", get("case.envelope"), {"none", "cos"});
    require_one_of("derivatives.source", get("derivatives.source"), {"analytic", "discrete"});
    require_one_of("psi.source", get("psi.source"), {"sample", "solve"});
    require_one_of("solver.guess", get("solver.guess"), {"zeros", "boundary_average"});

    if (!(get_double("case.nu") > 0.0))
        throw config_error("config: case.nu must be > 0");
    if (!(get_double("case.rho") > 0.0))
        throw config_error("config: case.rho must be > 0");
    if (get_int("grid.nr") < 3 || get_int("grid.nz") < 3)
        throw config_error("config: grid.nr and grid.nz must be >= 3");
    if (!(get_double("grid.rmax") > 0.0))
        throw config_error("config: grid.rmax must be > 0");
    if (!(get_double("grid.zmin") < get_double("grid.zmax")))
        throw config_error("config: grid.zmin must be < grid.zmax");
    if (!(get_double("solver.tol") > 0.0))
        throw config_error("config: solver.tol must be > 0");
    if (!(get_double("thresholds.analytic") > 0.0))
        throw config_error("config: thresholds.analytic must be > 0");
    if (!(get_double("thresholds.discrete_coeff") > 0.0))
        throw config_error("config: thresholds.discrete_coeff must be > 0");
    if (get("psi.source") == "solve" && get("derivatives.source") == "analytic")
        throw config_error("config: psi.source=solve requires derivatives.source=discrete "
                           "(a solved field has no analytic derivatives)");
}

} // namespace axipot
