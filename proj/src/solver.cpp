#include "axipot/solver.hpp"

#include "axipot/diffops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace axipot {

namespace {

bool is_dirichlet(const AxiGrid& g, int i, int j) {
    return i == g.nr - 1 || j == 0 || j == g.nz - 1;
}

// Compact stencil of the axisymmetric Laplacian at non-Dirichlet nodes.
// Every unknown has all its stencil neighbours in range, so no one-sided
// forms appear inside the solve.
void apply_lap(const AxiGrid& g, const ScalarField& v, ScalarField& out) {
    const double ir2 = 1.0 / (g.hr * g.hr);
    const double iz2 = 1.0 / (g.hz * g.hz);
    const double i2h = 0.5 / g.hr;
    for (int j = 1; j < g.nz - 1; ++j) {
        out(0, j) = 4.0 * (v(1, j) - v(0, j)) * ir2 +
                    (v(0, j + 1) - 2.0 * v(0, j) + v(0, j - 1)) * iz2;
        for (int i = 1; i < g.nr - 1; ++i) {
            const double frr = (v(i + 1, j) - 2.0 * v(i, j) + v(i - 1, j)) * ir2;
            const double fr = (v(i + 1, j) - v(i - 1, j)) * i2h;
            const double fzz = (v(i, j + 1) - 2.0 * v(i, j) + v(i, j - 1)) * iz2;
            out(i, j) = frr + fr / g.r(i) + fzz;
        }
    }
}

double weight(const AxiGrid& g, int i) {
    return i == 0 ? 0.125 * g.hr : g.r(i);
}

double dot_unknowns(const AxiGrid& g, const ScalarField& a, const ScalarField& b) {
    double s = 0.0;
    for (int j = 1; j < g.nz - 1; ++j)
        for (int i = 0; i < g.nr - 1; ++i)
            s += a(i, j) * b(i, j);
    return s;
}

// Official residual: the public operator evaluated on the assembled field,
// max over non-Dirichlet nodes, relative to the boundary-data scale.
double official_residual(const AxiGrid& g, const ScalarField& full, double scale) {
    const ScalarField lap = axisymmetric_laplacian(full);
    double linf = 0.0;
    for (int j = 1; j < g.nz - 1; ++j)
        for (int i = 0; i < g.nr - 1; ++i)
            linf = std::max(linf, std::fabs(lap(i, j)));
    return linf / scale;
}

} // namespace

SolveOutcome solve_laplace_dirichlet(const AxiGrid& grid, const ScalarField& boundary,
                                     const SolveParams& params) {
    if (!(boundary.grid() == grid))
        throw std::invalid_argument("solve_laplace_dirichlet: boundary field on wrong grid");
    if (!(params.tol > 0.0))
        throw std::invalid_argument("solve_laplace_dirichlet: tol must be > 0");

    double bmax = 0.0;
    double bsum = 0.0;
    long bcount = 0;
    for (int j = 0; j < grid.nz; ++j) {
        for (int i = 0; i < grid.nr; ++i) {
            if (!is_dirichlet(grid, i, j))
                continue;
            const double v = boundary(i, j);
            if (!std::isfinite(v))
                throw std::invalid_argument("solve_laplace_dirichlet: non-finite boundary data");
            bmax = std::max(bmax, std::fabs(v));
            bsum += v;
            ++bcount;
        }
    }
    const double scale = std::max(1.0, bmax);
    const long max_iter = params.max_iter > 0
                              ? params.max_iter
                              : 100L * static_cast<long>(std::max(grid.nr, grid.nz)) *
                                    static_cast<long>(std::max(grid.nr, grid.nz));

    // Full field with boundary data in place; unknowns start from the guess.
    ScalarField full(grid, 0.0);
    const double guess =
        params.guess == InitialGuess::boundary_average ? bsum / static_cast<double>(bcount) : 0.0;
    for (int j = 0; j < grid.nz; ++j)
        for (int i = 0; i < grid.nr; ++i)
            full(i, j) = is_dirichlet(grid, i, j) ? boundary(i, j) : guess;

    ScalarField lap(grid, 0.0), r(grid, 0.0), p(grid, 0.0), Ap(grid, 0.0);

    // Weighted residual r = w * L[full]; that is b - A x of the SPD system.
    auto refresh_residual = [&]() {
        apply_lap(grid, full, lap);
        for (int j = 1; j < grid.nz - 1; ++j)
            for (int i = 0; i < grid.nr - 1; ++i)
                r(i, j) = weight(grid, i) * lap(i, j);
    };
    auto recurrence_linf = [&]() {
        double linf = 0.0;
        for (int j = 1; j < grid.nz - 1; ++j)
            for (int i = 0; i < grid.nr - 1; ++i)
                linf = std::max(linf, std::fabs(r(i, j) / weight(grid, i)));
        return linf;
    };

    refresh_residual();
    SolveOutcome out;
    out.iterations = 0;

    double check_at = params.tol * scale;
    double rs = dot_unknowns(grid, r, r);
    for (int j = 1; j < grid.nz - 1; ++j)
        for (int i = 0; i < grid.nr - 1; ++i)
            p(i, j) = r(i, j);

    bool converged = false;
    if (recurrence_linf() <= check_at)
        converged = official_residual(grid, full, scale) <= params.tol;

    while (!converged && out.iterations < max_iter) {
        apply_lap(grid, p, Ap);  // p is zero on Dirichlet nodes
        double pAp = 0.0;
        for (int j = 1; j < grid.nz - 1; ++j)
            for (int i = 0; i < grid.nr - 1; ++i) {
                Ap(i, j) = -weight(grid, i) * Ap(i, j);
                pAp += p(i, j) * Ap(i, j);
            }
        if (!(pAp > 0.0))
            break;  // exhausted in finite precision
        const double alpha = rs / pAp;
        for (int j = 1; j < grid.nz - 1; ++j)
            for (int i = 0; i < grid.nr - 1; ++i) {
                full(i, j) += alpha * p(i, j);
                r(i, j) -= alpha * Ap(i, j);
            }
        ++out.iterations;

        if (out.iterations % 128 == 0)
            refresh_residual();  // counter recurrence drift

        const double rs_new = dot_unknowns(grid, r, r);
        if (recurrence_linf() <= check_at) {
            if (official_residual(grid, full, scale) <= params.tol) {
                converged = true;
                break;
            }
            check_at *= 0.5;  // recurrence was optimistic; tighten and go on
            refresh_residual();
            rs = dot_unknowns(grid, r, r);
            for (int j = 1; j < grid.nz - 1; ++j)
                for (int i = 0; i < grid.nr - 1; ++i)
                    p(i, j) = r(i, j);
            continue;
        }
        const double beta = rs_new / rs;
        rs = rs_new;
        for (int j = 1; j < grid.nz - 1; ++j)
            for (int i = 0; i < grid.nr - 1; ++i)
                p(i, j) = r(i, j) + beta * p(i, j);
    }

    out.field = std::move(full);
    out.residual = official_residual(grid, out.field, scale);
    out.converged = out.residual <= params.tol;
    return out;
}

std::vector<ConvergenceLevel> convergence_study(const FlowCase& c, const Domain& domain,
                                                const std::vector<std::pair<int, int>>& grids,
                                                double t, const SolveParams& params) {
    if (grids.size() < 2)
        throw std::invalid_argument("convergence_study: need at least 2 grid levels");
    for (std::size_t k = 1; k < grids.size(); ++k) {
        if (grids[k].first - 1 != 2 * (grids[k - 1].first - 1) ||
            grids[k].second - 1 != 2 * (grids[k - 1].second - 1))
            throw std::invalid_argument(
                "convergence_study: each level must refine the previous by factor 2");
    }

    std::vector<ConvergenceLevel> levels;
    levels.reserve(grids.size());
    for (const auto& [nr, nz] : grids) {
        const AxiGrid grid = build_grid(nr, nz, domain.rmax, domain.zmin, domain.zmax);
        const CaseSample sample = sample_case(c, grid, t);
        const SolveOutcome sol = solve_laplace_dirichlet(grid, sample.psi, params);
        if (!sol.converged)
            throw solve_failure("convergence_study: solver did not converge on " +
                                std::to_string(nr) + "x" + std::to_string(nz) +
                                " (residual " + std::to_string(sol.residual) + ")");

        double scale = 1.0;
        double sup = 0.0;
        for (int j = 0; j < grid.nz; ++j)
            for (int i = 0; i < grid.nr; ++i) {
                if (!sample.mask.valid(i, j))
                    continue;
                sup = std::max(sup, std::fabs(sol.field(i, j) - sample.psi(i, j)));
                if (is_dirichlet(grid, i, j))
                    scale = std::max(scale, std::fabs(sample.psi(i, j)));
            }

        ConvergenceLevel lev;
        lev.nr = nr;
        lev.nz = nz;
        lev.h = std::max(grid.hr, grid.hz);
        lev.sup_error = sup;
        lev.at_floor = sup <= 10.0 * params.tol * scale;
        lev.iterations = sol.iterations;
        lev.residual = sol.residual;
        if (!levels.empty() && !lev.at_floor && !levels.back().at_floor &&
            levels.back().sup_error > 0.0 && sup > 0.0)
            lev.order = std::log2(levels.back().sup_error / sup);
        levels.push_back(lev);
    }
    return levels;
}

} // namespace axipot
