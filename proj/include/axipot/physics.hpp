#pragma once

#include "axipot/cases.hpp"
#include "axipot/grid.hpp"

#include <optional>
#include <utility>

namespace axipot {

/// Where downstream residual evaluators take their derivatives from:
/// the case's analytic formulas, or finite-difference stencils applied to
/// the sampled fields. Every residual is tagged with this provenance.
enum class DerivSource { analytic, discrete };

/// One instant of a flow: the sampled base fields plus everything needed to
/// differentiate them. The case is retained (analytic derivatives, force
/// potential data); the bundle holds the sampled analytic derivatives and is
/// only present on the analytic path.
struct StateSnapshot {
    FlowCase flow;
    AxiGrid grid;
    double t = 0.0;
    double nu = 1.0;
    double rho = 1.0;
    DerivSource source = DerivSource::analytic;
    ScalarField psi, psi_t, T;
    NodeMask mask;
    std::optional<CaseBundle> bundle;
};

StateSnapshot make_snapshot(const FlowCase& c, const AxiGrid& grid, double t,
                            DerivSource source);

/// Snapshot around an externally produced psi field (e.g. a Laplace solve);
/// psi_t and T are sampled from the case, derivatives are necessarily
/// discrete.
StateSnapshot make_snapshot(const FlowCase& c, const AxiGrid& grid, double t,
                            ScalarField psi_field);

struct VelocityField {
    ScalarField u;  // radial, psi_r
    ScalarField w;  // axial, psi_z
};

/// Pressure with optional sampled analytic gradients. pressure_from_bernoulli
/// fills the gradients on the analytic path so the momentum residuals stay at
/// analytic accuracy; a bare field (no gradients) is differentiated with
/// stencils instead.
struct PressureField {
    ScalarField p;
    std::optional<VelocityField> grad;  // (p_r, p_z) when known analytically

    PressureField() = default;
    explicit PressureField(ScalarField values) : p(std::move(values)) {}
};

struct ConsistencyStats {
    double C_estimate = 0.0;      // spatial mean of F at this instant
    double spatial_std = 0.0;
    double spatial_sup_dev = 0.0;
};

struct MomentumResiduals {
    ScalarField res_r;
    ScalarField res_z;
    NodeMask res_r_mask;  // axis column masked: the psi_r/r^2 term is 0/0 there
};

/// u = psi_r, w = psi_z via the snapshot's derivative source.
VelocityField velocity_from_potential(const StateSnapshot& s);

/// Unsteady Bernoulli recovery:
///   p = rho * (-psi_t - (psi_r^2 + psi_z^2)/2 + nu * lap(psi) - T)
/// with the axisymmetric Laplacian. The spatially uniform integration
/// function C(t) is fixed to zero (absorbed into T). The viscous term is
/// evaluated, never assumed zero: it vanishes only for exactly harmonic psi.
PressureField pressure_from_bernoulli(const StateSnapshot& s);

/// Pointwise residuals of the radial and axial momentum equations written in
/// the potential:
///   res_r = (psi_r)_t + psi_r (psi_r)_r + psi_z (psi_r)_z
///           - nu * { (psi_r)_rr + (psi_r)_r / r - psi_r / r^2 + (psi_r)_zz }
///           + p_r / rho + T_r
/// and the analogous res_z without the -psi_z/r^2 term. With p recovered from
/// the Bernoulli relation both residuals vanish to the derivative-source
/// accuracy.
MomentumResiduals momentum_residuals(const StateSnapshot& s, const PressureField& p);

/// F = psi_t + (psi_r^2 + psi_z^2)/2 - nu * lap(psi) + p/rho + T must be
/// spatially constant at each instant (the merged integration function of
/// the component momentum equations). Returns F and deviation statistics
/// around its spatial mean.
std::pair<ScalarField, ConsistencyStats> bernoulli_consistency(const StateSnapshot& s,
                                                               const ScalarField& p);

/// Pointwise u + w: the quantity the surrogate relation u + w = 0 forces to
/// zero. Generically nonzero for a real flow.
ScalarField sum_uw(const VelocityField& v);

/// Divergence of the potential velocity, which coincides with the
/// axisymmetric Laplacian of psi: the continuity residual.
ScalarField continuity_residual(const StateSnapshot& s);

/// Azimuthal vorticity of the potential velocity; zero for any gradient
/// field (mixed partials coincide).
ScalarField curl_residual(const StateSnapshot& s);

} // namespace axipot
