#include "axipot/physics.hpp"

#include "axipot/diffops.hpp"

#include <cmath>
#include <stdexcept>

// The chain of identities implemented here:
//
//   u = psi_r, w = psi_z           irrotational by construction (curl = 0)
//   div V = lap(psi)               continuity <=> Laplace for the potential
//   momentum components integrate in r and z to one scalar relation,
//   F(r,z,t) = psi_t + |grad psi|^2/2 - nu*lap(psi) + p/rho + T = C(t),
//   so recovering p from F = 0 makes both momentum residuals vanish.
//
// Each evaluator below has two derivative paths: sampled analytic formulas
// (exact up to roundoff) and finite-difference stencils on the sampled
// fields (second order in h).

namespace axipot {

namespace {

// lap(psi) sampled from analytic derivatives, with the axis limit
// 2 psi_rr + psi_zz.
ScalarField analytic_laplacian(const CaseBundle& b) {
    const AxiGrid& g = b.psi.grid();
    ScalarField lap(g);
    for (int j = 0; j < g.nz; ++j) {
        lap(0, j) = 2.0 * b.psi_rr(0, j) + b.psi_zz(0, j);
        for (int i = 1; i < g.nr; ++i)
            lap(i, j) = b.psi_rr(i, j) + b.psi_r(i, j) / g.r(i) + b.psi_zz(i, j);
    }
    return lap;
}

const CaseBundle& bundle_of(const StateSnapshot& s) {
    if (!s.bundle)
        throw std::logic_error("physics: analytic path requested without a sampled bundle");
    return *s.bundle;
}

} // namespace

StateSnapshot make_snapshot(const FlowCase& c, const AxiGrid& grid, double t,
                            DerivSource source) {
    StateSnapshot s;
    s.flow = c;
    s.grid = grid;
    s.t = t;
    s.nu = c.nu;
    s.rho = c.rho;
    s.source = source;
    if (source == DerivSource::analytic) {
        CaseBundle b = sample_case_derivatives(c, grid, t);
        s.psi = b.psi;
        s.psi_t = b.psi_t;
        s.T = b.T;
        s.mask = b.mask;
        s.bundle = std::move(b);
    } else {
        CaseSample smp = sample_case(c, grid, t);
        s.psi = std::move(smp.psi);
        s.psi_t = std::move(smp.psi_t);
        s.T = std::move(smp.T);
        s.mask = std::move(smp.mask);
    }
    return s;
}

StateSnapshot make_snapshot(const FlowCase& c, const AxiGrid& grid, double t,
                            ScalarField psi_field) {
    if (!(psi_field.grid() == grid))
        throw std::invalid_argument("make_snapshot: psi field on wrong grid");
    StateSnapshot s = make_snapshot(c, grid, t, DerivSource::discrete);
    s.psi = std::move(psi_field);
    return s;
}

VelocityField velocity_from_potential(const StateSnapshot& s) {
    if (s.source == DerivSource::analytic) {
        const CaseBundle& b = bundle_of(s);
        return VelocityField{b.psi_r, b.psi_z};
    }
    return VelocityField{diff(s.psi, Axis::r, 1), diff(s.psi, Axis::z, 1)};
}

PressureField pressure_from_bernoulli(const StateSnapshot& s) {
    const AxiGrid& g = s.grid;
    PressureField out(ScalarField(g));

    if (s.source == DerivSource::discrete) {
        const ScalarField u = diff(s.psi, Axis::r, 1);
        const ScalarField w = diff(s.psi, Axis::z, 1);
        const ScalarField lap = axisymmetric_laplacian(s.psi);
        for (int j = 0; j < g.nz; ++j)
            for (int i = 0; i < g.nr; ++i) {
                const double ke = 0.5 * (u(i, j) * u(i, j) + w(i, j) * w(i, j));
                out.p(i, j) =
                    s.rho * (-s.psi_t(i, j) - ke + s.nu * lap(i, j) - s.T(i, j));
            }
        return out;
    }

    const CaseBundle& b = bundle_of(s);
    const ScalarField lap = analytic_laplacian(b);
    VelocityField grad{ScalarField(g), ScalarField(g)};
    for (int j = 0; j < g.nz; ++j) {
        for (int i = 0; i < g.nr; ++i) {
            const double ke =
                0.5 * (b.psi_r(i, j) * b.psi_r(i, j) + b.psi_z(i, j) * b.psi_z(i, j));
            out.p(i, j) = s.rho * (-b.psi_t(i, j) - ke + s.nu * lap(i, j) - b.T(i, j));

            // Gradients of lap(psi); the 1/r terms vanish on the axis for a
            // smooth even potential (their limits cancel term by term).
            const double r = g.r(i);
            const double lap_r =
                i == 0 ? 0.0
                       : b.psi_rrr(i, j) + b.psi_rr(i, j) / r -
                             b.psi_r(i, j) / (r * r) + b.psi_rzz(i, j);
            const double lap_z = i == 0 ? 2.0 * b.psi_rrz(i, j) + b.psi_zzz(i, j)
                                        : b.psi_rrz(i, j) + b.psi_rz(i, j) / r +
                                              b.psi_zzz(i, j);
            grad.u(i, j) = s.rho * (-b.psi_rt(i, j) -
                                    (b.psi_r(i, j) * b.psi_rr(i, j) +
                                     b.psi_z(i, j) * b.psi_rz(i, j)) +
                                    s.nu * lap_r - b.T_r(i, j));
            grad.w(i, j) = s.rho * (-b.psi_zt(i, j) -
                                    (b.psi_r(i, j) * b.psi_rz(i, j) +
                                     b.psi_z(i, j) * b.psi_zz(i, j)) +
                                    s.nu * lap_z - b.T_z(i, j));
        }
    }
    out.grad = std::move(grad);
    return out;
}

MomentumResiduals momentum_residuals(const StateSnapshot& s, const PressureField& p) {
    const AxiGrid& g = s.grid;
    if (!(p.p.grid() == g))
        throw std::invalid_argument("momentum_residuals: pressure on wrong grid");

    const bool have_grad = p.grad.has_value();
    const ScalarField p_r = have_grad ? p.grad->u : diff(p.p, Axis::r, 1);
    const ScalarField p_z = have_grad ? p.grad->w : diff(p.p, Axis::z, 1);

    MomentumResiduals out{ScalarField(g), ScalarField(g), s.mask.without_axis_column()};

    if (s.source == DerivSource::analytic) {
        const CaseBundle& b = bundle_of(s);
        for (int j = 0; j < g.nz; ++j) {
            for (int i = 1; i < g.nr; ++i) {
                const double r = g.r(i);
                const double visc_r = b.psi_rrr(i, j) + b.psi_rr(i, j) / r -
                                      b.psi_r(i, j) / (r * r) + b.psi_rzz(i, j);
                out.res_r(i, j) = b.psi_rt(i, j) +
                                  b.psi_r(i, j) * b.psi_rr(i, j) +
                                  b.psi_z(i, j) * b.psi_rz(i, j) - s.nu * visc_r +
                                  p_r(i, j) / s.rho + b.T_r(i, j);
            }
            for (int i = 0; i < g.nr; ++i) {
                const double visc_z =
                    i == 0 ? 2.0 * b.psi_rrz(i, j) + b.psi_zzz(i, j)
                           : b.psi_rrz(i, j) + b.psi_rz(i, j) / g.r(i) + b.psi_zzz(i, j);
                out.res_z(i, j) = b.psi_zt(i, j) +
                                  b.psi_r(i, j) * b.psi_rz(i, j) +
                                  b.psi_z(i, j) * b.psi_zz(i, j) - s.nu * visc_z +
                                  p_z(i, j) / s.rho + b.T_z(i, j);
            }
        }
        return out;
    }

    // Discrete path: compose stencils on the sampled fields, no shortcuts.
    const ScalarField u = diff(s.psi, Axis::r, 1);
    const ScalarField w = diff(s.psi, Axis::z, 1);
    const ScalarField ur = diff(u, Axis::r, 1);
    const ScalarField uz = diff(u, Axis::z, 1);
    const ScalarField urr = diff(u, Axis::r, 2);
    const ScalarField uzz = diff(u, Axis::z, 2);
    const ScalarField wr = diff(w, Axis::r, 1);
    const ScalarField wz = diff(w, Axis::z, 1);
    const ScalarField lap_w = axisymmetric_laplacian(w);
    const ScalarField ut = diff(s.psi_t, Axis::r, 1);
    const ScalarField wt = diff(s.psi_t, Axis::z, 1);

    // T is case data, so its gradient stays analytic on both paths.
    const CaseBundle tb = sample_case_derivatives(s.flow, g, s.t);

    for (int j = 0; j < g.nz; ++j) {
        for (int i = 1; i < g.nr; ++i) {
            const double r = g.r(i);
            const double visc_r =
                urr(i, j) + ur(i, j) / r - u(i, j) / (r * r) + uzz(i, j);
            out.res_r(i, j) = ut(i, j) + u(i, j) * ur(i, j) + w(i, j) * uz(i, j) -
                              s.nu * visc_r + p_r(i, j) / s.rho + tb.T_r(i, j);
        }
        for (int i = 0; i < g.nr; ++i)
            out.res_z(i, j) = wt(i, j) + u(i, j) * wr(i, j) + w(i, j) * wz(i, j) -
                              s.nu * lap_w(i, j) + p_z(i, j) / s.rho + tb.T_z(i, j);
    }
    return out;
}

std::pair<ScalarField, ConsistencyStats> bernoulli_consistency(const StateSnapshot& s,
                                                               const ScalarField& p) {
    const AxiGrid& g = s.grid;
    if (!(p.grid() == g))
        throw std::invalid_argument("bernoulli_consistency: pressure on wrong grid");

    ScalarField F(g);
    if (s.source == DerivSource::analytic) {
        const CaseBundle& b = bundle_of(s);
        const ScalarField lap = analytic_laplacian(b);
        for (int j = 0; j < g.nz; ++j)
            for (int i = 0; i < g.nr; ++i) {
                const double ke = 0.5 * (b.psi_r(i, j) * b.psi_r(i, j) +
                                         b.psi_z(i, j) * b.psi_z(i, j));
                F(i, j) = b.psi_t(i, j) + ke - s.nu * lap(i, j) + p(i, j) / s.rho +
                          b.T(i, j);
            }
    } else {
        const ScalarField u = diff(s.psi, Axis::r, 1);
        const ScalarField w = diff(s.psi, Axis::z, 1);
        const ScalarField lap = axisymmetric_laplacian(s.psi);
        for (int j = 0; j < g.nz; ++j)
            for (int i = 0; i < g.nr; ++i) {
                const double ke = 0.5 * (u(i, j) * u(i, j) + w(i, j) * w(i, j));
                F(i, j) = s.psi_t(i, j) + ke - s.nu * lap(i, j) + p(i, j) / s.rho +
                          s.T(i, j);
            }
    }

    double sum = 0.0;
    long count = 0;
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i)
            if (s.mask.valid(i, j)) {
                sum += F(i, j);
                ++count;
            }
    if (count == 0)
        throw std::invalid_argument("bernoulli_consistency: no valid nodes");

    ConsistencyStats stats;
    stats.C_estimate = sum / static_cast<double>(count);
    double var = 0.0;
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i)
            if (s.mask.valid(i, j)) {
                const double d = F(i, j) - stats.C_estimate;
                var += d * d;
                stats.spatial_sup_dev = std::max(stats.spatial_sup_dev, std::fabs(d));
            }
    stats.spatial_std = std::sqrt(var / static_cast<double>(count));
    return {std::move(F), stats};
}

ScalarField sum_uw(const VelocityField& v) {
    if (!(v.u.grid() == v.w.grid()))
        throw std::invalid_argument("sum_uw: component grids differ");
    const AxiGrid& g = v.u.grid();
    ScalarField out(g);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i)
            out(i, j) = v.u(i, j) + v.w(i, j);
    return out;
}

ScalarField continuity_residual(const StateSnapshot& s) {
    if (s.source == DerivSource::analytic)
        return analytic_laplacian(bundle_of(s));
    const VelocityField v = velocity_from_potential(s);
    return divergence_axi(v.u, v.w);
}

ScalarField curl_residual(const StateSnapshot& s) {
    if (s.source == DerivSource::analytic) {
        // u_z = psi_rz and w_r = psi_rz: the analytic vorticity cancels
        // identically; evaluated as stated to keep the residual honest.
        const CaseBundle& b = bundle_of(s);
        const AxiGrid& g = s.grid;
        ScalarField out(g);
        for (int j = 0; j < g.nz; ++j)
            for (int i = 0; i < g.nr; ++i) {
                const double u_z = b.psi_rz(i, j);
                const double w_r = b.psi_rz(i, j);
                out(i, j) = u_z - w_r;
            }
        return out;
    }
    const VelocityField v = velocity_from_potential(s);
    return curl_theta(v.u, v.w);
}

} // namespace axipot
