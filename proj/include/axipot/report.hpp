#pragma once

#include "axipot/grid.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace axipot {

/// 17 significant digits, enough to round-trip a double exactly.
std::string fmt17(double v);

/// Column bundle for the per-node fields CSV. Rows are emitted j-major
/// (i fastest), one row per valid node; the radial momentum residual is
/// masked on the axis column and emits as an empty cell there.
struct FieldsTable {
    const ScalarField* psi = nullptr;
    const ScalarField* u = nullptr;
    const ScalarField* w = nullptr;
    const ScalarField* p = nullptr;
    const ScalarField* phi = nullptr;
    const ScalarField* eq6_r = nullptr;
    const ScalarField* eq7_z = nullptr;
    const ScalarField* eq11_correct = nullptr;
    const ScalarField* eq11_erroneous = nullptr;
    const NodeMask* mask = nullptr;
    const NodeMask* eq6_mask = nullptr;
};

void write_fields_csv(const std::string& path, const FieldsTable& table);

void write_text_file(const std::string& path, const std::string& content);

void write_json_file(const std::string& path, const nlohmann::json& j);

} // namespace axipot
