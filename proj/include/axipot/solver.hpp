#pragma once

#include "axipot/cases.hpp"
#include "axipot/grid.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace axipot {

enum class InitialGuess { zeros, boundary_average };

struct SolveParams {
    double tol = 1e-10;       // relative residual target
    long max_iter = 0;        // 0 -> 100 * max(nr,nz)^2
    InitialGuess guess = InitialGuess::zeros;
};

struct SolveOutcome {
    ScalarField field;        // full field, boundary data carried exactly
    long iterations = 0;
    double residual = 0.0;    // final relative residual (see below)
    bool converged = false;
};

struct solve_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Solves the discrete axisymmetric Laplace problem with Dirichlet data on
/// the r=rmax, z=zmin and z=zmax sides. The axis r=0 carries the symmetry
/// closure of the operator, not boundary data; axis nodes are unknowns.
///
/// The discrete operator is the same compact stencil axisymmetric_laplacian
/// exposes at interior nodes. Rows are volume-weighted by the node radius
/// (hr/8 on the axis column), which makes the system symmetric positive
/// definite, and solved by plain conjugate gradients.
///
/// The reported residual is max over non-Dirichlet nodes of
/// |axisymmetric_laplacian(field)| divided by max(1, |boundary data|_inf),
/// recomputed from the assembled field, so an independent recomputation
/// through the public operator reproduces it exactly.
///
/// Non-convergence is not an exception: the outcome carries converged=false.
/// Non-finite boundary data throws std::invalid_argument.
SolveOutcome solve_laplace_dirichlet(const AxiGrid& grid, const ScalarField& boundary,
                                     const SolveParams& params = {});

struct Domain {
    double rmax = 1.0;
    double zmin = 0.0;
    double zmax = 1.0;
};

struct ConvergenceLevel {
    int nr = 0, nz = 0;
    double h = 0.0;
    double sup_error = 0.0;
    std::optional<double> order;  // vs previous level; absent on the first
                                  // level and below the solver error floor
    bool at_floor = false;
    long iterations = 0;
    double residual = 0.0;
};

/// Solves the case on each grid level with boundary data sampled from the
/// analytic potential and measures sup errors against it. Levels must refine
/// by exactly a factor 2 per direction. Throws solve_failure if any level
/// fails to converge.
std::vector<ConvergenceLevel> convergence_study(const FlowCase& c, const Domain& domain,
                                                const std::vector<std::pair<int, int>>& grids,
                                                double t, const SolveParams& params = {});

} // namespace axipot
