#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace axipot {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key=value run configuration ('#' starts a comment). Dotted keys are
/// grouped by module: grid.*, case.*, solver.*, time.*, derivatives.*,
/// psi.*, thresholds.*, falsify.*, levels, out.dir. Unknown keys and
/// malformed values are rejected. Every key has a default except case.name.
class Config {
public:
    /// Defaults only; case.name still unset.
    Config();

    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    /// Applies one "key=value" override (the --set flag).
    void set(const std::string& assignment);
    void set(const std::string& key, const std::string& value);

    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;
    int get_int(const std::string& key) const;
    long get_long(const std::string& key) const;

    /// Parsed "levels" list, validated: >= min_levels entries, each >= 3,
    /// each refining the previous by factor 2 (n-1 doubles).
    std::vector<int> levels(int min_levels) const;

    /// Fully-resolved key->value map (defaults filled in), for the report echo.
    const std::map<std::string, std::string>& entries() const { return values_; }

    /// Checks cross-field consistency (positive nu/rho, known case name,
    /// known enum values, grid preconditions). Throws config_error.
    void validate() const;

private:
    std::map<std::string, std::string> values_;
};

} // namespace axipot
