#include "axipot/cases.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace axipot {

namespace {

void check_params(const char* who, double nu, double rho) {
    if (!(nu > 0.0) || !std::isfinite(nu))
        throw std::invalid_argument(std::string(who) + ": nu must be > 0");
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw std::invalid_argument(std::string(who) + ": rho must be > 0");
}

bool all_finite(const CaseEval& e) {
    const double vals[] = {e.psi,    e.psi_r,   e.psi_z,   e.psi_rr,  e.psi_zz, e.psi_rz,
                           e.psi_t,  e.psi_rt,  e.psi_zt,  e.psi_rrr, e.psi_rrz,
                           e.psi_rzz, e.psi_zzz, e.T,      e.T_r,     e.T_z};
    for (double v : vals)
        if (!std::isfinite(v))
            return false;
    return true;
}

} // namespace

Envelope cosine_envelope() {
    return Envelope{[](double t) { return std::cos(t); },
                    [](double t) { return -std::sin(t); }};
}

FlowCase uniform_case(double U, double nu, double rho) {
    check_params("uniform_case", nu, rho);
    FlowCase c;
    c.name = "uniform";
    c.nu = nu;
    c.rho = rho;
    c.eval = [U](double, double z, double) {
        CaseEval e;
        e.psi = U * z;
        e.psi_z = U;
        return e;
    };
    return c;
}

FlowCase stagnation_case(double A, double nu, double rho) {
    check_params("stagnation_case", nu, rho);
    FlowCase c;
    c.name = "stagnation";
    c.nu = nu;
    c.rho = rho;
    c.eval = [A](double r, double z, double) {
        CaseEval e;
        e.psi = A * (z * z - 0.5 * r * r);
        e.psi_r = -A * r;
        e.psi_z = 2.0 * A * z;
        e.psi_rr = -A;
        e.psi_zz = 2.0 * A;
        return e;
    };
    return c;
}

FlowCase source_case(double m, double z0, double nu, double rho, double exclusion_radius) {
    check_params("source_case", nu, rho);
    FlowCase c;
    c.name = "source";
    c.nu = nu;
    c.rho = rho;
    c.singularities.push_back(Singularity{0.0, z0, exclusion_radius});
    const double k = m / (4.0 * std::numbers::pi);
    c.eval = [k, z0](double r, double z, double) {
        const double zeta = z - z0;
        const double s2 = r * r + zeta * zeta;
        const double s = std::sqrt(s2);
        const double s3 = s2 * s;
        const double s5 = s3 * s2;
        const double s7 = s5 * s2;
        CaseEval e;
        e.psi = -k / s;
        e.psi_r = k * r / s3;
        e.psi_z = k * zeta / s3;
        e.psi_rr = k * (s2 - 3.0 * r * r) / s5;
        e.psi_zz = k * (s2 - 3.0 * zeta * zeta) / s5;
        e.psi_rz = -3.0 * k * r * zeta / s5;
        e.psi_rrr = 3.0 * k * r * (5.0 * r * r - 3.0 * s2) / s7;
        e.psi_rrz = 3.0 * k * zeta * (5.0 * r * r - s2) / s7;
        e.psi_rzz = 3.0 * k * r * (5.0 * zeta * zeta - s2) / s7;
        e.psi_zzz = 3.0 * k * zeta * (5.0 * zeta * zeta - 3.0 * s2) / s7;
        return e;
    };
    return c;
}

FlowCase rest_case(double nu, double rho) {
    check_params("rest_case", nu, rho);
    FlowCase c;
    c.name = "rest";
    c.nu = nu;
    c.rho = rho;
    c.eval = [](double, double, double) { return CaseEval{}; };
    return c;
}

FlowCase with_gravity(FlowCase base, double g) {
    auto inner = std::move(base.eval);
    base.eval = [inner, g](double r, double z, double t) {
        CaseEval e = inner(r, z, t);
        e.T += g * z;
        e.T_z += g;
        return e;
    };
    return base;
}

CaseEval eval_case(const FlowCase& c, double r, double z, double t) {
    if (r < 0.0)
        throw std::invalid_argument("eval_case: r must be >= 0");
    for (const Singularity& s : c.singularities) {
        if (s.radius > 0.0) {
            const double dr = r - s.r;
            const double dz = z - s.z;
            if (dr * dr + dz * dz < s.radius * s.radius)
                throw std::invalid_argument("eval_case: point inside exclusion zone of case '" +
                                            c.name + "'");
        }
    }
    CaseEval e = c.eval(r, z, t);
    if (!all_finite(e))
        throw std::runtime_error("eval_case: non-finite value for case '" + c.name +
                                 "' at r=" + std::to_string(r) + ", z=" + std::to_string(z));
    return e;
}

FlowCase superpose(const FlowCase& a, const FlowCase& b, double ca, double cb) {
    if (a.nu != b.nu || a.rho != b.rho)
        throw std::invalid_argument("superpose: nu and rho must match");
    FlowCase c;
    c.name = a.name + "+" + b.name;
    c.nu = a.nu;
    c.rho = a.rho;
    c.singularities = a.singularities;
    c.singularities.insert(c.singularities.end(), b.singularities.begin(),
                           b.singularities.end());
    auto fa = a.eval;
    auto fb = b.eval;
    c.eval = [fa, fb, ca, cb](double r, double z, double t) {
        const CaseEval ea = fa(r, z, t);
        const CaseEval eb = fb(r, z, t);
        CaseEval e;
        e.psi = ca * ea.psi + cb * eb.psi;
        e.psi_r = ca * ea.psi_r + cb * eb.psi_r;
        e.psi_z = ca * ea.psi_z + cb * eb.psi_z;
        e.psi_rr = ca * ea.psi_rr + cb * eb.psi_rr;
        e.psi_zz = ca * ea.psi_zz + cb * eb.psi_zz;
        e.psi_rz = ca * ea.psi_rz + cb * eb.psi_rz;
        e.psi_t = ca * ea.psi_t + cb * eb.psi_t;
        e.psi_rt = ca * ea.psi_rt + cb * eb.psi_rt;
        e.psi_zt = ca * ea.psi_zt + cb * eb.psi_zt;
        e.psi_rrr = ca * ea.psi_rrr + cb * eb.psi_rrr;
        e.psi_rrz = ca * ea.psi_rrz + cb * eb.psi_rrz;
        e.psi_rzz = ca * ea.psi_rzz + cb * eb.psi_rzz;
        e.psi_zzz = ca * ea.psi_zzz + cb * eb.psi_zzz;
        e.T = ca * ea.T + cb * eb.T;
        e.T_r = ca * ea.T_r + cb * eb.T_r;
        e.T_z = ca * ea.T_z + cb * eb.T_z;
        return e;
    };
    return c;
}

FlowCase modulate_time(FlowCase base, Envelope envelope) {
    if (!envelope.value || !envelope.deriv)
        throw std::invalid_argument("modulate_time: envelope needs value and deriv");
    auto inner = std::move(base.eval);
    base.name += "*g(t)";
    base.eval = [inner, envelope](double r, double z, double t) {
        const CaseEval b = inner(r, z, t);
        const double g = envelope.value(t);
        const double gd = envelope.deriv(t);
        CaseEval e;
        e.psi = g * b.psi;
        e.psi_r = g * b.psi_r;
        e.psi_z = g * b.psi_z;
        e.psi_rr = g * b.psi_rr;
        e.psi_zz = g * b.psi_zz;
        e.psi_rz = g * b.psi_rz;
        e.psi_t = gd * b.psi + g * b.psi_t;
        e.psi_rt = gd * b.psi_r + g * b.psi_rt;
        e.psi_zt = gd * b.psi_z + g * b.psi_zt;
        e.psi_rrr = g * b.psi_rrr;
        e.psi_rrz = g * b.psi_rrz;
        e.psi_rzz = g * b.psi_rzz;
        e.psi_zzz = g * b.psi_zzz;
        e.T = b.T;
        e.T_r = b.T_r;
        e.T_z = b.T_z;
        return e;
    };
    return base;
}

namespace {

NodeMask build_mask(const FlowCase& c, const AxiGrid& grid) {
    NodeMask mask(grid, true);
    const double default_radius = 3.0 * std::max(grid.hr, grid.hz);
    for (const Singularity& s : c.singularities) {
        const double radius = s.radius > 0.0 ? s.radius : default_radius;
        const double r2 = radius * radius;
        for (int j = 0; j < grid.nz; ++j) {
            const double dz = grid.z(j) - s.z;
            for (int i = 0; i < grid.nr; ++i) {
                const double dr = grid.r(i) - s.r;
                if (dr * dr + dz * dz < r2)
                    mask.set_valid(i, j, false);
            }
        }
    }
    return mask;
}

[[noreturn]] void throw_bad_node(const FlowCase& c, const AxiGrid& grid, int i, int j) {
    throw std::runtime_error("sample_case: non-finite value of case '" + c.name +
                             "' on valid node (" + std::to_string(i) + "," + std::to_string(j) +
                             ") at r=" + std::to_string(grid.r(i)) +
                             ", z=" + std::to_string(grid.z(j)) +
                             "; declare the singularity or shrink the domain");
}

} // namespace

CaseSample sample_case(const FlowCase& c, const AxiGrid& grid, double t) {
    CaseSample out{ScalarField(grid), ScalarField(grid), ScalarField(grid),
                   build_mask(c, grid)};
    for (int j = 0; j < grid.nz; ++j) {
        const double z = grid.z(j);
        for (int i = 0; i < grid.nr; ++i) {
            const CaseEval e = c.eval(grid.r(i), z, t);
            const bool ok = all_finite(e);
            if (!ok && out.mask.valid(i, j))
                throw_bad_node(c, grid, i, j);
            out.psi(i, j) = ok ? e.psi : 0.0;
            out.psi_t(i, j) = ok ? e.psi_t : 0.0;
            out.T(i, j) = ok ? e.T : 0.0;
        }
    }
    return out;
}

CaseBundle sample_case_derivatives(const FlowCase& c, const AxiGrid& grid, double t) {
    CaseBundle b{ScalarField(grid), ScalarField(grid), ScalarField(grid), ScalarField(grid),
                 ScalarField(grid), ScalarField(grid), ScalarField(grid), ScalarField(grid),
                 ScalarField(grid), ScalarField(grid), ScalarField(grid), ScalarField(grid),
                 ScalarField(grid), ScalarField(grid), ScalarField(grid), ScalarField(grid),
                 build_mask(c, grid)};
    for (int j = 0; j < grid.nz; ++j) {
        const double z = grid.z(j);
        for (int i = 0; i < grid.nr; ++i) {
            CaseEval e = c.eval(grid.r(i), z, t);
            if (!all_finite(e)) {
                if (b.mask.valid(i, j))
                    throw_bad_node(c, grid, i, j);
                e = CaseEval{};
            }
            b.psi(i, j) = e.psi;
            b.psi_r(i, j) = e.psi_r;
            b.psi_z(i, j) = e.psi_z;
            b.psi_rr(i, j) = e.psi_rr;
            b.psi_zz(i, j) = e.psi_zz;
            b.psi_rz(i, j) = e.psi_rz;
            b.psi_t(i, j) = e.psi_t;
            b.psi_rt(i, j) = e.psi_rt;
            b.psi_zt(i, j) = e.psi_zt;
            b.psi_rrr(i, j) = e.psi_rrr;
            b.psi_rrz(i, j) = e.psi_rrz;
            b.psi_rzz(i, j) = e.psi_rzz;
            b.psi_zzz(i, j) = e.psi_zzz;
            b.T(i, j) = e.T;
            b.T_r(i, j) = e.T_r;
            b.T_z(i, j) = e.T_z;
        }
    }
    return b;
}

} // namespace axipot
