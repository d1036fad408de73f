#include "axipot/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace axipot {

AxiGrid build_grid(int nr, int nz, double rmax, double zmin, double zmax) {
    if (nr < 3 || nz < 3)
        throw std::invalid_argument("build_grid: nr and nz must be >= 3 (got nr=" +
                                    std::to_string(nr) + ", nz=" + std::to_string(nz) + ")");
    if (!std::isfinite(rmax) || !std::isfinite(zmin) || !std::isfinite(zmax))
        throw std::invalid_argument("build_grid: non-finite extent");
    if (rmax <= 0.0)
        throw std::invalid_argument("build_grid: rmax must be > 0");
    if (zmin >= zmax)
        throw std::invalid_argument("build_grid: zmin must be < zmax");

    AxiGrid g;
    g.nr = nr;
    g.nz = nz;
    g.rmax = rmax;
    g.zmin = zmin;
    g.zmax = zmax;
    g.hr = rmax / (nr - 1);
    g.hz = (zmax - zmin) / (nz - 1);
    return g;
}

int NodeMask::count_valid() const {
    int n = 0;
    for (std::uint8_t v : valid_)
        n += v;
    return n;
}

NodeMask NodeMask::without_axis_column() const {
    NodeMask m = *this;
    for (int j = 0; j < grid_.nz; ++j)
        m.set_valid(0, j, false);
    return m;
}

Norms field_norms(const ScalarField& f, const NodeMask& mask) {
    if (!(f.grid() == mask.grid()))
        throw std::invalid_argument("field_norms: field and mask grids differ");

    double linf = 0.0;
    double sumsq = 0.0;
    long count = 0;
    const AxiGrid& g = f.grid();
    for (int j = 0; j < g.nz; ++j) {
        for (int i = 0; i < g.nr; ++i) {
            if (!mask.valid(i, j))
                continue;
            const double v = f(i, j);
            const double a = std::fabs(v);
            if (a > linf)
                linf = a;
            sumsq += v * v;
            ++count;
        }
    }
    if (count == 0)
        throw std::invalid_argument("field_norms: mask has no valid nodes");
    return Norms{linf, std::sqrt(sumsq / static_cast<double>(count))};
}

} // namespace axipot
