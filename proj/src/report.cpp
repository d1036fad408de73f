#include "axipot/report.hpp"

#include "axipot/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace axipot {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_fields_csv(const std::string& path, const FieldsTable& t) {
    const AxiGrid& g = t.psi->grid();
    std::ostringstream out;
    out << "r,z,psi,u,w,p,phi,eq6_r,eq7_z,eq11_correct,eq11_erroneous\n";
    for (int j = 0; j < g.nz; ++j) {
        for (int i = 0; i < g.nr; ++i) {
            if (!t.mask->valid(i, j))
                continue;
            out << fmt17(g.r(i)) << ',' << fmt17(g.z(j)) << ',' << fmt17((*t.psi)(i, j))
                << ',' << fmt17((*t.u)(i, j)) << ',' << fmt17((*t.w)(i, j)) << ','
                << fmt17((*t.p)(i, j)) << ',' << fmt17((*t.phi)(i, j)) << ',';
            if (t.eq6_mask->valid(i, j))
                out << fmt17((*t.eq6_r)(i, j));
            // masked entries stay empty, never a NaN spelling
            out << ',' << fmt17((*t.eq7_z)(i, j)) << ',' << fmt17((*t.eq11_correct)(i, j))
                << ',' << fmt17((*t.eq11_erroneous)(i, j)) << '\n';
        }
    }
    write_text_file(path, out.str());
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw config_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out)
        throw config_error("write failed for '" + path + "'");
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

} // namespace axipot
