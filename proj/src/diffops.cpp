#include "axipot/diffops.hpp"

#include <stdexcept>

namespace axipot {

namespace {

// First derivative along i within one row of n contiguous values.
// even_ghost: v(-1) = v(1), the axis closure for even scalars.
void d1_row(const double* v, double* out, int n, double h, bool even_ghost) {
    const double inv2h = 0.5 / h;
    out[0] = even_ghost ? 0.0 : (-3.0 * v[0] + 4.0 * v[1] - v[2]) * inv2h;
    for (int i = 1; i < n - 1; ++i)
        out[i] = (v[i + 1] - v[i - 1]) * inv2h;
    out[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) * inv2h;
}

// Second derivative along i within one row. Edges use the 4-point one-sided
// stencil (second-order); on a 3-node row that degenerates to the 3-point
// form, which is still exact on quadratics.
void d2_row(const double* v, double* out, int n, double h, bool even_ghost) {
    const double invh2 = 1.0 / (h * h);
    if (even_ghost)
        out[0] = 2.0 * (v[1] - v[0]) * invh2;
    else if (n >= 4)
        out[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) * invh2;
    else
        out[0] = (v[0] - 2.0 * v[1] + v[2]) * invh2;
    for (int i = 1; i < n - 1; ++i)
        out[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) * invh2;
    if (n >= 4)
        out[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) * invh2;
    else
        out[n - 1] = (v[n - 1] - 2.0 * v[n - 2] + v[n - 3]) * invh2;
}

// Same stencils along j (stride nr between consecutive z-values).
void d_col(const double* v, double* out, int n, int stride, double h, int order) {
    auto at = [&](int j) { return v[j * stride]; };
    if (order == 1) {
        const double inv2h = 0.5 / h;
        out[0] = (-3.0 * at(0) + 4.0 * at(1) - at(2)) * inv2h;
        for (int j = 1; j < n - 1; ++j)
            out[j * stride] = (at(j + 1) - at(j - 1)) * inv2h;
        out[(n - 1) * stride] = (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) * inv2h;
    } else {
        const double invh2 = 1.0 / (h * h);
        if (n >= 4) {
            out[0] = (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) * invh2;
            out[(n - 1) * stride] =
                (2.0 * at(n - 1) - 5.0 * at(n - 2) + 4.0 * at(n - 3) - at(n - 4)) * invh2;
        } else {
            out[0] = (at(0) - 2.0 * at(1) + at(2)) * invh2;
            out[(n - 1) * stride] = (at(n - 1) - 2.0 * at(n - 2) + at(n - 3)) * invh2;
        }
        for (int j = 1; j < n - 1; ++j)
            out[j * stride] = (at(j + 1) - 2.0 * at(j) + at(j - 1)) * invh2;
    }
}

void check_grid(const ScalarField& f) {
    if (f.grid().nr < 3 || f.grid().nz < 3)
        throw std::invalid_argument("diffops: grid needs >= 3 nodes per axis");
}

} // namespace

ScalarField diff(const ScalarField& f, Axis axis, int order) {
    check_grid(f);
    if (order != 1 && order != 2)
        throw std::invalid_argument("diff: order must be 1 or 2");
    const AxiGrid& g = f.grid();
    ScalarField out(g);
    if (axis == Axis::r) {
        for (int j = 0; j < g.nz; ++j) {
            const double* row = f.data() + g.index(0, j);
            double* orow = out.data() + g.index(0, j);
            if (order == 1)
                d1_row(row, orow, g.nr, g.hr, /*even_ghost=*/true);
            else
                d2_row(row, orow, g.nr, g.hr, /*even_ghost=*/true);
        }
    } else {
        for (int i = 0; i < g.nr; ++i)
            d_col(f.data() + i, out.data() + i, g.nz, g.nr, g.hz, order);
    }
    return out;
}

ScalarField axisymmetric_laplacian(const ScalarField& f) {
    const ScalarField frr = diff(f, Axis::r, 2);
    const ScalarField fr = diff(f, Axis::r, 1);
    const ScalarField fzz = diff(f, Axis::z, 2);
    const AxiGrid& g = f.grid();
    ScalarField out(g);
    for (int j = 0; j < g.nz; ++j) {
        out(0, j) = 2.0 * frr(0, j) + fzz(0, j);
        for (int i = 1; i < g.nr; ++i)
            out(i, j) = frr(i, j) + fr(i, j) / g.r(i) + fzz(i, j);
    }
    return out;
}

ScalarField laplacian_missing_axis_term(const ScalarField& f) {
    const ScalarField frr = diff(f, Axis::r, 2);
    const ScalarField fzz = diff(f, Axis::z, 2);
    const AxiGrid& g = f.grid();
    ScalarField out(g);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i)
            out(i, j) = frr(i, j) + fzz(i, j);
    return out;
}

ScalarField divergence_axi(const ScalarField& u, const ScalarField& w) {
    check_grid(u);
    if (!(u.grid() == w.grid()))
        throw std::invalid_argument("divergence_axi: u and w grids differ");
    const AxiGrid& g = u.grid();
    const ScalarField wz = diff(w, Axis::z, 1);
    ScalarField out(g);
    const double inv2h = 0.5 / g.hr;
    for (int j = 0; j < g.nz; ++j) {
        const double* row = u.data() + g.index(0, j);
        // u is odd in r: one-sided stencil at the axis, then 2 u_r + w_z.
        const double ur0 = (-3.0 * row[0] + 4.0 * row[1] - row[2]) * inv2h;
        out(0, j) = 2.0 * ur0 + wz(0, j);
        for (int i = 1; i < g.nr - 1; ++i) {
            const double ur = (row[i + 1] - row[i - 1]) * inv2h;
            out(i, j) = ur + row[i] / g.r(i) + wz(i, j);
        }
        const int n = g.nr;
        const double urn = (3.0 * row[n - 1] - 4.0 * row[n - 2] + row[n - 3]) * inv2h;
        out(n - 1, j) = urn + row[n - 1] / g.r(n - 1) + wz(n - 1, j);
    }
    return out;
}

ScalarField curl_theta(const ScalarField& u, const ScalarField& w) {
    if (!(u.grid() == w.grid()))
        throw std::invalid_argument("curl_theta: u and w grids differ");
    const ScalarField uz = diff(u, Axis::z, 1);
    const ScalarField wr = diff(w, Axis::r, 1);
    const AxiGrid& g = u.grid();
    ScalarField out(g);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i)
            out(i, j) = uz(i, j) - wr(i, j);
    return out;
}

} // namespace axipot
