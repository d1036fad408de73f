#pragma once

#include "axipot/grid.hpp"
#include "axipot/physics.hpp"

namespace axipot {

/// phi = exp(-psi / (2 nu)), the substitution psi = -2 nu log(phi).
/// Strictly positive wherever psi is finite.
struct PhiField {
    ScalarField phi;
    double nu = 1.0;
};

/// Forward transform. Arguments with |psi|/(2 nu) > 500 at a valid node are
/// rejected with a diagnostic naming the node: exp past that range is
/// meaningless in finite precision. Invalid nodes get phi = 1.
PhiField psi_to_phi(const ScalarField& psi, double nu, const NodeMask* mask = nullptr);

/// Inverse transform; throws on nonpositive phi at a valid node.
ScalarField phi_to_psi(const PhiField& phi, const NodeMask* mask = nullptr);

enum class PhiVariant {
    correct,    // nu * { phi_rr + phi_r/r + phi_zz }
    erroneous,  // nu * { phi_rr + phi_zz }: the axis term dropped
};

/// Residual of the transformed pressure relation
///   phi_t - nu * lap(phi) = (phi / (2 nu)) * (p/rho + T),
/// as LHS - RHS. phi_t always comes from the chain rule
/// phi_t = -psi_t phi/(2 nu); spatial derivatives follow the snapshot's
/// derivative source (chain-rule composition, or stencils on the sampled phi
/// field). With variant = erroneous the Laplacian drops its axis term, which
/// shifts the residual by exactly nu * phi_r / r.
ScalarField phi_equation_residual(const StateSnapshot& s, const ScalarField& p,
                                  PhiVariant variant);

/// |(u + w) + 2 nu (phi_r + phi_z) / phi|: the gap of the algebraic identity
/// linking u + w to the transformed variable. Vanishes identically; its
/// companion sup|u+w| shows that the surrogate relation u + w = 0 does not.
ScalarField uw_transform_identity_gap(const VelocityField& v, const PhiField& phi,
                                      DerivSource source);

} // namespace axipot
