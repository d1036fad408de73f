#pragma once

#include "axipot/grid.hpp"

#include <functional>
#include <string>
#include <vector>

namespace axipot {

/// Pointwise analytic evaluation of a flow case: the velocity potential psi,
/// every derivative the residual evaluators consume, and the force potential T.
/// Mixed and third derivatives are carried because the component momentum
/// residuals need them on the analytic path.
struct CaseEval {
    double psi = 0.0;
    double psi_r = 0.0, psi_z = 0.0;
    double psi_rr = 0.0, psi_zz = 0.0, psi_rz = 0.0;
    double psi_t = 0.0, psi_rt = 0.0, psi_zt = 0.0;
    double psi_rrr = 0.0, psi_rrz = 0.0, psi_rzz = 0.0, psi_zzz = 0.0;
    double T = 0.0, T_r = 0.0, T_z = 0.0;
};

/// Analytic singular point of a potential. radius <= 0 means "use the grid
/// default 3*max(hr,hz) when sampling".
struct Singularity {
    double r = 0.0;
    double z = 0.0;
    double radius = 0.0;
};

/// Smooth time envelope g(t) with its derivative, for modulated potentials.
struct Envelope {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
};

Envelope cosine_envelope();

/// A manufactured axisymmetric potential-flow state: harmonic psi(r,z,t),
/// conservative force potential T(r,z,t), and the fluid parameters.
/// Gauge: every catalog potential is pinned so that psi(0, z_ref) follows
/// directly from the formula (uniform/stagnation: psi(0,0)=0; source: decay
/// at infinity). Additive shifts in psi rescale phi, so the gauge matters.
struct FlowCase {
    std::string name;
    double nu = 1.0;
    double rho = 1.0;
    std::function<CaseEval(double r, double z, double t)> eval;
    std::vector<Singularity> singularities;
};

// Catalog. All potentials are harmonic in the axisymmetric sense:
// psi_rr + psi_r/r + psi_zz = 0 away from declared singularities.
FlowCase uniform_case(double U, double nu, double rho);                // psi = U z
FlowCase stagnation_case(double A, double nu, double rho);             // psi = A (z^2 - r^2/2)
FlowCase source_case(double m, double z0, double nu, double rho,
                     double exclusion_radius = 0.0);                   // psi = -m / (4 pi s)
FlowCase rest_case(double nu, double rho);                             // psi = 0

/// Adds the gravity potential g*z to the case's force potential.
FlowCase with_gravity(FlowCase base, double g);

/// Evaluates the case at one point. Throws if (r,z) lies inside a declared
/// exclusion zone or if any entry comes out non-finite.
CaseEval eval_case(const FlowCase& c, double r, double z, double t);

/// Linear combination ca*a + cb*b. Requires matching nu and rho;
/// singularity lists are concatenated.
FlowCase superpose(const FlowCase& a, const FlowCase& b, double ca, double cb);

/// psi_new = g(t) * psi_base; spatial derivatives scale with g(t),
/// psi_t picks up the g'(t) term. T is left unchanged.
FlowCase modulate_time(FlowCase base, Envelope envelope);

/// The base fields of a snapshot sampled on a grid.
struct CaseSample {
    ScalarField psi;
    ScalarField psi_t;
    ScalarField T;
    NodeMask mask;
};

/// Every analytic derivative sampled on a grid (the analytic derivative
/// source for the residual evaluators).
struct CaseBundle {
    ScalarField psi, psi_r, psi_z, psi_rr, psi_zz, psi_rz;
    ScalarField psi_t, psi_rt, psi_zt;
    ScalarField psi_rrr, psi_rrz, psi_rzz, psi_zzz;
    ScalarField T, T_r, T_z;
    NodeMask mask;
};

/// Samples psi, psi_t, T on the grid. Nodes inside an exclusion zone are
/// masked invalid; a non-finite value on a valid node throws (it signals an
/// undeclared singularity inside the domain).
CaseSample sample_case(const FlowCase& c, const AxiGrid& grid, double t);

CaseBundle sample_case_derivatives(const FlowCase& c, const AxiGrid& grid, double t);

} // namespace axipot
