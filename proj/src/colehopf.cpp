#include "axipot/colehopf.hpp"

#include "axipot/diffops.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace axipot {

namespace {

constexpr double kMaxExponent = 500.0;

} // namespace

PhiField psi_to_phi(const ScalarField& psi, double nu, const NodeMask* mask) {
    if (!(nu > 0.0) || !std::isfinite(nu))
        throw std::invalid_argument("psi_to_phi: nu must be > 0");
    const AxiGrid& g = psi.grid();
    PhiField out{ScalarField(g), nu};
    const double inv2nu = 1.0 / (2.0 * nu);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) {
            if (mask && !mask->valid(i, j)) {
                out.phi(i, j) = 1.0;
                continue;
            }
            const double a = -psi(i, j) * inv2nu;
            if (!(std::fabs(a) <= kMaxExponent))
                throw std::runtime_error(
                    "psi_to_phi: |psi|/(2 nu) = " + std::to_string(std::fabs(a)) +
                    " exceeds the exponent guard at node (" + std::to_string(i) + "," +
                    std::to_string(j) + ")");
            out.phi(i, j) = std::exp(a);
        }
    return out;
}

ScalarField phi_to_psi(const PhiField& phi, const NodeMask* mask) {
    if (!(phi.nu > 0.0))
        throw std::invalid_argument("phi_to_psi: nu must be > 0");
    const AxiGrid& g = phi.phi.grid();
    ScalarField psi(g);
    const double c = -2.0 * phi.nu;
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) {
            if (mask && !mask->valid(i, j)) {
                psi(i, j) = 0.0;
                continue;
            }
            const double v = phi.phi(i, j);
            if (!(v > 0.0))
                throw std::runtime_error("phi_to_psi: nonpositive phi = " + std::to_string(v) +
                                         " at node (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
            psi(i, j) = c * std::log(v);
        }
    return psi;
}

ScalarField phi_equation_residual(const StateSnapshot& s, const ScalarField& p,
                                  PhiVariant variant) {
    const AxiGrid& g = s.grid;
    if (!(p.grid() == g))
        throw std::invalid_argument("phi_equation_residual: pressure on wrong grid");

    const PhiField phi = psi_to_phi(s.psi, s.nu, &s.mask);
    const double inv2nu = 1.0 / (2.0 * s.nu);

    // Laplacian pieces of phi per derivative source.
    ScalarField lap(g);
    if (s.source == DerivSource::analytic) {
        const CaseBundle* b = s.bundle ? &*s.bundle : nullptr;
        if (!b)
            throw std::logic_error("phi_equation_residual: analytic path without bundle");
        for (int j = 0; j < g.nz; ++j)
            for (int i = 0; i < g.nr; ++i) {
                const double f = phi.phi(i, j);
                const double pr = b->psi_r(i, j);
                const double pz = b->psi_z(i, j);
                // chain rule: phi_x = -psi_x phi/(2 nu),
                // phi_xx = (psi_x^2/(4 nu^2) - psi_xx/(2 nu)) phi
                const double phi_r = -pr * f * inv2nu;
                const double phi_rr =
                    (pr * pr * inv2nu * inv2nu - b->psi_rr(i, j) * inv2nu) * f;
                const double phi_zz =
                    (pz * pz * inv2nu * inv2nu - b->psi_zz(i, j) * inv2nu) * f;
                if (variant == PhiVariant::erroneous)
                    lap(i, j) = phi_rr + phi_zz;
                else if (i == 0)
                    lap(i, j) = 2.0 * phi_rr + phi_zz;
                else
                    lap(i, j) = phi_rr + phi_r / g.r(i) + phi_zz;
            }
    } else {
        lap = variant == PhiVariant::erroneous ? laplacian_missing_axis_term(phi.phi)
                                               : axisymmetric_laplacian(phi.phi);
    }

    ScalarField res(g);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) {
            const double f = phi.phi(i, j);
            const double phi_t = -s.psi_t(i, j) * f * inv2nu;
            const double rhs = f * inv2nu * (p(i, j) / s.rho + s.T(i, j));
            res(i, j) = phi_t - s.nu * lap(i, j) - rhs;
        }
    return res;
}

ScalarField uw_transform_identity_gap(const VelocityField& v, const PhiField& phi,
                                      DerivSource source) {
    const AxiGrid& g = v.u.grid();
    if (!(phi.phi.grid() == g))
        throw std::invalid_argument("uw_transform_identity_gap: grids differ");

    ScalarField phi_r(g), phi_z(g);
    if (source == DerivSource::analytic) {
        const double inv2nu = 1.0 / (2.0 * phi.nu);
        for (int j = 0; j < g.nz; ++j)
            for (int i = 0; i < g.nr; ++i) {
                phi_r(i, j) = -v.u(i, j) * phi.phi(i, j) * inv2nu;
                phi_z(i, j) = -v.w(i, j) * phi.phi(i, j) * inv2nu;
            }
    } else {
        phi_r = diff(phi.phi, Axis::r, 1);
        phi_z = diff(phi.phi, Axis::z, 1);
    }

    ScalarField gap(g);
    const double two_nu = 2.0 * phi.nu;
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i) {
            const double f = phi.phi(i, j);
            if (!(f > 0.0))
                throw std::runtime_error("uw_transform_identity_gap: nonpositive phi at node (" +
                                         std::to_string(i) + "," + std::to_string(j) + ")");
            gap(i, j) = std::fabs(v.u(i, j) + v.w(i, j) +
                                  two_nu * (phi_r(i, j) + phi_z(i, j)) / f);
        }
    return gap;
}

} // namespace axipot
