#include "axipot/runner.hpp"

#include "axipot/cases.hpp"
#include "axipot/colehopf.hpp"
#include "axipot/diffops.hpp"
#include "axipot/physics.hpp"
#include "axipot/report.hpp"
#include "axipot/solver.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <vector>

namespace axipot {

namespace {

using nlohmann::json;

FlowCase case_from_config(const Config& cfg) {
    const std::string name = cfg.get("case.name");
    const double nu = cfg.get_double("case.nu");
    const double rho = cfg.get_double("case.rho");
    FlowCase c;
    if (name == "uniform")
        c = uniform_case(cfg.get_double("case.U"), nu, rho);
    else if (name == "stagnation")
        c = stagnation_case(cfg.get_double("case.A"), nu, rho);
    else if (name == "source")
        c = source_case(cfg.get_double("case.m"), cfg.get_double("case.z0"), nu, rho,
                        cfg.get_double("case.exclusion_radius"));
    else
        c = rest_case(nu, rho);
    const double g = cfg.get_double("case.g");
    if (g != 0.0)
        c = with_gravity(std::move(c), g);
    if (cfg.get("case.envelope") == "cos")
        c = modulate_time(std::move(c), cosine_envelope());
    return c;
}

AxiGrid grid_from_config(const Config& cfg) {
    return build_grid(cfg.get_int("grid.nr"), cfg.get_int("grid.nz"),
                      cfg.get_double("grid.rmax"), cfg.get_double("grid.zmin"),
                      cfg.get_double("grid.zmax"));
}

SolveParams solver_from_config(const Config& cfg) {
    SolveParams p;
    p.tol = cfg.get_double("solver.tol");
    p.max_iter = cfg.get_long("solver.max_iter");
    p.guess = cfg.get("solver.guess") == "boundary_average" ? InitialGuess::boundary_average
                                                            : InitialGuess::zeros;
    return p;
}

json config_echo(const Config& cfg) {
    json j = json::object();
    for (const auto& [k, v] : cfg.entries())
        j[k] = v;
    return j;
}

json grid_json(const AxiGrid& g) {
    return json{{"nr", g.nr},     {"nz", g.nz},     {"rmax", g.rmax}, {"zmin", g.zmin},
                {"zmax", g.zmax}, {"hr", g.hr},     {"hz", g.hz}};
}

json norms_json(const Norms& n) {
    return json{{"linf", n.linf}, {"rms", n.rms}};
}

std::string out_path(const Config& cfg, const char* file) {
    return (std::filesystem::path(cfg.get("out.dir")) / file).string();
}

void ensure_out_dir(const Config& cfg) {
    const std::string dir = cfg.get("out.dir");
    if (dir.empty())
        return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw config_error("cannot create output directory '" + dir + "': " + ec.message());
}

ScalarField divide_pointwise(const ScalarField& num, const ScalarField& den) {
    const AxiGrid& g = num.grid();
    ScalarField out(g);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i)
            out(i, j) = num(i, j) / den(i, j);
    return out;
}

// Everything the verify report aggregates for one snapshot.
struct Pipeline {
    VelocityField v;
    PhiField phi;
    PressureField pressure;
    MomentumResiduals mom;
    ScalarField F;
    ConsistencyStats stats;
    ScalarField F_dev;
    ScalarField eq11_correct, eq11_erroneous;
    ScalarField eq11_correct_rel, eq11_erroneous_rel;
    ScalarField uw_gap, suw, continuity, curl;
};

Pipeline run_pipeline(const StateSnapshot& snap) {
    Pipeline pl;
    pl.v = velocity_from_potential(snap);
    pl.phi = psi_to_phi(snap.psi, snap.nu, &snap.mask);
    pl.pressure = pressure_from_bernoulli(snap);
    pl.mom = momentum_residuals(snap, pl.pressure);
    auto [F, stats] = bernoulli_consistency(snap, pl.pressure.p);
    pl.F = std::move(F);
    pl.stats = stats;
    pl.F_dev = ScalarField(snap.grid);
    for (int j = 0; j < snap.grid.nz; ++j)
        for (int i = 0; i < snap.grid.nr; ++i)
            pl.F_dev(i, j) = pl.F(i, j) - stats.C_estimate;
    pl.eq11_correct = phi_equation_residual(snap, pl.pressure.p, PhiVariant::correct);
    pl.eq11_erroneous = phi_equation_residual(snap, pl.pressure.p, PhiVariant::erroneous);
    pl.eq11_correct_rel = divide_pointwise(pl.eq11_correct, pl.phi.phi);
    pl.eq11_erroneous_rel = divide_pointwise(pl.eq11_erroneous, pl.phi.phi);
    pl.uw_gap = uw_transform_identity_gap(pl.v, pl.phi, snap.source);
    pl.suw = sum_uw(pl.v);
    pl.continuity = continuity_residual(snap);
    pl.curl = curl_residual(snap);
    return pl;
}

} // namespace

RunResult run_verify(const Config& cfg) {
    cfg.validate();
    const FlowCase flow = case_from_config(cfg);
    const AxiGrid grid = grid_from_config(cfg);
    const double t = cfg.get_double("time.t");
    const DerivSource source = cfg.get("derivatives.source") == "analytic"
                                   ? DerivSource::analytic
                                   : DerivSource::discrete;

    RunResult result;
    json& summary = result.summary;
    summary["tool"] = kToolVersion;
    summary["command"] = "verify";
    summary["config"] = config_echo(cfg);
    summary["grid"] = grid_json(grid);
    summary["derivatives"] = cfg.get("derivatives.source");

    StateSnapshot snap;
    if (cfg.get("psi.source") == "solve") {
        const CaseSample sample = sample_case(flow, grid, t);
        SolveOutcome outcome = solve_laplace_dirichlet(grid, sample.psi, solver_from_config(cfg));
        summary["solver"] = json{{"converged", outcome.converged},
                                 {"iterations", outcome.iterations},
                                 {"residual", outcome.residual}};
        if (!outcome.converged) {
            summary["pass"] = false;
            ensure_out_dir(cfg);
            if (!cfg.get("out.dir").empty())
                write_json_file(out_path(cfg, "summary.json"), summary);
            result.exit_code = 3;
            return result;
        }
        snap = make_snapshot(flow, grid, t, std::move(outcome.field));
    } else {
        snap = make_snapshot(flow, grid, t, source);
    }

    const Pipeline pl = run_pipeline(snap);

    const Norms n_eq6 = field_norms(pl.mom.res_r, pl.mom.res_r_mask);
    const Norms n_eq7 = field_norms(pl.mom.res_z, snap.mask);
    const Norms n_cont = field_norms(pl.continuity, snap.mask);
    const Norms n_curl = field_norms(pl.curl, snap.mask);
    const Norms n_fdev = field_norms(pl.F_dev, snap.mask);
    const Norms n_11c = field_norms(pl.eq11_correct, snap.mask);
    const Norms n_11e = field_norms(pl.eq11_erroneous, snap.mask);
    const Norms n_11c_rel = field_norms(pl.eq11_correct_rel, snap.mask);
    const Norms n_11e_rel = field_norms(pl.eq11_erroneous_rel, snap.mask);
    const Norms n_gap = field_norms(pl.uw_gap, snap.mask);
    const Norms n_suw = field_norms(pl.suw, snap.mask);

    summary["residuals"] = json{
        {"eq6_r", norms_json(n_eq6)},
        {"eq7_z", norms_json(n_eq7)},
        {"continuity", norms_json(n_cont)},
        {"curl", norms_json(n_curl)},
        {"eq10_F_supdev", norms_json(n_fdev)},
        {"eq11_correct",
         json{{"linf", n_11c.linf},
              {"rms", n_11c.rms},
              {"linf_rel", n_11c_rel.linf},
              {"rms_rel", n_11c_rel.rms}}},
        {"eq11_erroneous",
         json{{"linf", n_11e.linf},
              {"rms", n_11e.rms},
              {"linf_rel", n_11e_rel.linf},
              {"rms_rel", n_11e_rel.rms}}},
        {"uw_identity_gap", norms_json(n_gap)},
        {"sup_uw", norms_json(n_suw)},
    };
    summary["consistency"] = json{{"C_estimate", pl.stats.C_estimate},
                                  {"spatial_std", pl.stats.spatial_std},
                                  {"spatial_sup_dev", pl.stats.spatial_sup_dev}};

    // Threshold for the correct-equation gates. Analytic path: flat
    // threshold. Discrete path: coeff * h^2 scaled by the field magnitudes
    // (second-order stencils). The phi-equation gate uses the phi-relative
    // norm so the gate does not inherit the exponential scale of phi.
    double threshold;
    if (snap.source == DerivSource::analytic) {
        threshold = cfg.get_double("thresholds.analytic");
    } else {
        const double h = std::max(grid.hr, grid.hz);
        double scale = 1.0;
        scale = std::max(scale, field_norms(snap.psi, snap.mask).linf);
        scale = std::max(scale, field_norms(snap.psi_t, snap.mask).linf);
        scale = std::max(scale, field_norms(pl.v.u, snap.mask).linf);
        scale = std::max(scale, field_norms(pl.v.w, snap.mask).linf);
        scale = std::max(scale, field_norms(pl.pressure.p, snap.mask).linf / snap.rho);
        scale = std::max(scale, field_norms(snap.T, snap.mask).linf);
        threshold = cfg.get_double("thresholds.discrete_coeff") * h * h * scale;
    }
    const double eq11_threshold = threshold * std::max(1.0, 1.0 / (2.0 * snap.nu));

    json checks = json::object();
    bool pass = true;
    bool finite = true;
    auto gate = [&](const char* name, double value, double thr) {
        const bool ok = std::isfinite(value) && value <= thr;
        finite = finite && std::isfinite(value);
        pass = pass && ok;
        checks[name] = json{{"value", value}, {"threshold", thr}, {"pass", ok}};
    };
    gate("eq6_r", n_eq6.linf, threshold);
    gate("eq7_z", n_eq7.linf, threshold);
    gate("continuity", n_cont.linf, threshold);
    gate("curl", n_curl.linf, threshold);
    gate("eq10_F_supdev", pl.stats.spatial_sup_dev, threshold);
    gate("eq11_correct", n_11c_rel.linf, eq11_threshold);
    gate("uw_identity_gap", n_gap.linf, threshold);
    summary["checks"] = checks;

    for (const Norms* n : {&n_eq6, &n_eq7, &n_cont, &n_curl, &n_fdev, &n_11c, &n_11e,
                           &n_gap, &n_suw})
        finite = finite && std::isfinite(n->linf) && std::isfinite(n->rms);
    summary["pass"] = pass && finite;

    if (!finite) {
        // A non-finite norm means the report violates its own invariant:
        // refuse to write anything.
        result.exit_code = 1;
        summary["error"] = "non-finite residual norm; no files written";
        return result;
    }

    if (!cfg.get("out.dir").empty()) {
        ensure_out_dir(cfg);
        FieldsTable table;
        table.psi = &snap.psi;
        table.u = &pl.v.u;
        table.w = &pl.v.w;
        table.p = &pl.pressure.p;
        table.phi = &pl.phi.phi;
        table.eq6_r = &pl.mom.res_r;
        table.eq7_z = &pl.mom.res_z;
        table.eq11_correct = &pl.eq11_correct;
        table.eq11_erroneous = &pl.eq11_erroneous;
        table.mask = &snap.mask;
        table.eq6_mask = &pl.mom.res_r_mask;
        write_fields_csv(out_path(cfg, "fields.csv"), table);
        write_json_file(out_path(cfg, "summary.json"), summary);
    }

    result.exit_code = pass ? 0 : 1;
    return result;
}

RunResult run_falsify(const Config& cfg) {
    cfg.validate();
    const std::vector<int> levels = cfg.levels(3);
    const FlowCase flow = case_from_config(cfg);
    const double t = cfg.get_double("time.t");
    const double rmax = cfg.get_double("grid.rmax");
    const double zmin = cfg.get_double("grid.zmin");
    const double zmax = cfg.get_double("grid.zmax");

    RunResult result;
    json& summary = result.summary;
    summary["tool"] = kToolVersion;
    summary["command"] = "falsify";
    summary["config"] = config_echo(cfg);

    std::vector<double> correct_d, erroneous_d;
    double op_gap_finest = 0.0;
    double phi_scale_finest = 1.0;
    json rows = json::array();
    std::ostringstream csv;
    csv << "nr,nz,h,eq11_correct_linf_discrete,eq11_erroneous_linf_discrete,"
           "eq11_correct_linf_analytic,eq11_erroneous_linf_analytic,"
           "sup_uw,uw_gap_linf_analytic,uw_gap_linf_discrete\n";

    for (int n : levels) {
        const AxiGrid grid = build_grid(n, n, rmax, zmin, zmax);
        const StateSnapshot snapA = make_snapshot(flow, grid, t, DerivSource::analytic);
        const StateSnapshot snapD = make_snapshot(flow, grid, t, DerivSource::discrete);

        const PressureField pA = pressure_from_bernoulli(snapA);
        const PressureField pD = pressure_from_bernoulli(snapD);
        const ScalarField cA = phi_equation_residual(snapA, pA.p, PhiVariant::correct);
        const ScalarField eA = phi_equation_residual(snapA, pA.p, PhiVariant::erroneous);
        const ScalarField cD = phi_equation_residual(snapD, pD.p, PhiVariant::correct);
        const ScalarField eD = phi_equation_residual(snapD, pD.p, PhiVariant::erroneous);

        const VelocityField vA = velocity_from_potential(snapA);
        const VelocityField vD = velocity_from_potential(snapD);
        const PhiField phiA = psi_to_phi(snapA.psi, snapA.nu, &snapA.mask);
        const ScalarField gapA = uw_transform_identity_gap(vA, phiA, DerivSource::analytic);
        const ScalarField gapD = uw_transform_identity_gap(vD, phiA, DerivSource::discrete);
        const ScalarField suw = sum_uw(vA);

        const double c_an = field_norms(cA, snapA.mask).linf;
        const double e_an = field_norms(eA, snapA.mask).linf;
        const double c_di = field_norms(cD, snapD.mask).linf;
        const double e_di = field_norms(eD, snapD.mask).linf;
        const double gap_an = field_norms(gapA, snapA.mask).linf;
        const double gap_di = field_norms(gapD, snapD.mask).linf;
        const double sup_uw_an = field_norms(suw, snapA.mask).linf;

        correct_d.push_back(c_di);
        erroneous_d.push_back(e_di);

        ScalarField op_gap(grid);
        for (int j = 0; j < grid.nz; ++j)
            for (int i = 0; i < grid.nr; ++i)
                op_gap(i, j) = eA(i, j) - cA(i, j);
        op_gap_finest = field_norms(op_gap, snapA.mask).linf;
        phi_scale_finest = std::max(1.0, field_norms(phiA.phi, snapA.mask).linf);

        const double h = std::max(grid.hr, grid.hz);
        rows.push_back(json{{"nr", n},
                            {"nz", n},
                            {"h", h},
                            {"eq11_correct_linf_discrete", c_di},
                            {"eq11_erroneous_linf_discrete", e_di},
                            {"eq11_correct_linf_analytic", c_an},
                            {"eq11_erroneous_linf_analytic", e_an},
                            {"sup_uw", sup_uw_an},
                            {"uw_gap_linf_analytic", gap_an},
                            {"uw_gap_linf_discrete", gap_di}});
        csv << n << ',' << n << ',' << fmt17(h) << ',' << fmt17(c_di) << ',' << fmt17(e_di)
            << ',' << fmt17(c_an) << ',' << fmt17(e_an) << ',' << fmt17(sup_uw_an) << ','
            << fmt17(gap_an) << ',' << fmt17(gap_di) << '\n';
    }

    const std::size_t last = levels.size() - 1;
    const bool indistinguishable = op_gap_finest <= 1e-12 * phi_scale_finest;
    const double stable_pct = cfg.get_double("falsify.stable_pct");
    const double min_ratio = cfg.get_double("falsify.min_ratio");
    const bool stable =
        erroneous_d[last] > 0.0 &&
        std::fabs(erroneous_d[last] - erroneous_d[last - 1]) <=
            stable_pct / 100.0 * erroneous_d[last];
    const bool separated = erroneous_d[last] >= min_ratio * correct_d[last];

    std::string verdict;
    if (indistinguishable)
        verdict = "indistinguishable";  // the axis term vanishes on this case
    else if (stable && separated)
        verdict = "demonstrated";
    else
        verdict = "not-demonstrated";

    summary["levels"] = rows;
    summary["verdict"] = verdict;
    summary["erroneous_stable"] = stable;
    summary["erroneous_separated"] = separated;
    summary["pass"] = verdict != "not-demonstrated";

    if (!cfg.get("out.dir").empty()) {
        ensure_out_dir(cfg);
        write_text_file(out_path(cfg, "falsify.csv"), csv.str());
        write_json_file(out_path(cfg, "summary.json"), summary);
    }
    result.exit_code = verdict == "not-demonstrated" ? 1 : 0;
    return result;
}

RunResult run_convergence(const Config& cfg) {
    cfg.validate();
    const std::vector<int> levels = cfg.levels(2);
    const FlowCase flow = case_from_config(cfg);
    const Domain domain{cfg.get_double("grid.rmax"), cfg.get_double("grid.zmin"),
                        cfg.get_double("grid.zmax")};
    std::vector<std::pair<int, int>> grids;
    grids.reserve(levels.size());
    for (int n : levels)
        grids.emplace_back(n, n);

    const std::vector<ConvergenceLevel> study = convergence_study(
        flow, domain, grids, cfg.get_double("time.t"), solver_from_config(cfg));

    RunResult result;
    json& summary = result.summary;
    summary["tool"] = kToolVersion;
    summary["command"] = "convergence";
    summary["config"] = config_echo(cfg);

    json rows = json::array();
    std::ostringstream csv;
    csv << "nr,nz,h,sup_error,observed_order\n";
    for (const ConvergenceLevel& lev : study) {
        json row{{"nr", lev.nr},
                 {"nz", lev.nz},
                 {"h", lev.h},
                 {"sup_error", lev.sup_error},
                 {"at_floor", lev.at_floor},
                 {"iterations", lev.iterations},
                 {"residual", lev.residual}};
        csv << lev.nr << ',' << lev.nz << ',' << fmt17(lev.h) << ',' << fmt17(lev.sup_error)
            << ',';
        if (lev.at_floor) {
            row["observed_order"] = "floor";
            csv << "floor";
        } else if (lev.order) {
            row["observed_order"] = *lev.order;
            csv << fmt17(*lev.order);
        } else {
            row["observed_order"] = nullptr;
        }
        csv << '\n';
        rows.push_back(row);
    }
    summary["levels"] = rows;
    summary["pass"] = true;

    if (!cfg.get("out.dir").empty()) {
        ensure_out_dir(cfg);
        write_text_file(out_path(cfg, "convergence.csv"), csv.str());
        write_json_file(out_path(cfg, "summary.json"), summary);
    }
    return result;
}

} // namespace axipot
