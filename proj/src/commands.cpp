#include "funsol/commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "funsol/config.hpp"
#include "funsol/io.hpp"
#include "funsol/oracle_direct.hpp"
#include "funsol/pipeline.hpp"

namespace funsol {

namespace {

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return kExitUsage;
    if (dynamic_cast<const InvalidGeometry*>(&e)) return kExitUsage;
    if (dynamic_cast<const NonPositiveCoefficient*>(&e)) return kExitHypothesis;
    if (dynamic_cast<const BracketingFailed*>(&e)) return kExitHypothesis;
    if (dynamic_cast<const InvalidProblem*>(&e)) return kExitHypothesis;
    return kExitSolver;
}

void write_outputs(const SolverConfig& cfg, const PipelineResult& result,
                   const std::string& summary) {
    if (!cfg.output.fields.empty()) write_text_file(cfg.output.fields, fields_csv(result.fields));
    if (!cfg.output.profile.empty())
        write_text_file(cfg.output.profile, profile_csv(result.fields.profile));
    if (!cfg.output.summary.empty()) write_text_file(cfg.output.summary, summary);
}

/// Restriction of a field on the doubled grid to the coarse grid by 2x2 cell
/// averaging (the refined cells tile the coarse ones exactly).
double restricted_max_diff(const ScalarField& coarse, const ScalarField& fine) {
    const TaggedGrid& gc = coarse.grid();
    const TaggedGrid& gf = fine.grid();
    double max_diff = 0.0;
    for (int r = 0; r < gc.n_unknowns(); ++r) {
        const int cell = gc.cells()[r];
        const int i = cell % gc.nx(), j = cell / gc.nx();
        const double avg = 0.25 * (fine[gf.unknown_of(2 * i, 2 * j)] +
                                   fine[gf.unknown_of(2 * i + 1, 2 * j)] +
                                   fine[gf.unknown_of(2 * i, 2 * j + 1)] +
                                   fine[gf.unknown_of(2 * i + 1, 2 * j + 1)]);
        max_diff = std::max(max_diff, std::abs(coarse[r] - avg));
    }
    return max_diff;
}

}  // namespace

int cmd_solve(const std::string& config_path, std::ostream& out, std::ostream& err) {
    try {
        const SolverConfig cfg = SolverConfig::load(config_path);
        const TaggedGrid grid = build_grid(cfg.geometry);
        const PipelineResult result =
            run_functional_pipeline(cfg.problem(), grid, cfg.n_ode, cfg.tolerances);
        const std::string summary = format_summary(result);
        out << summary;
        write_outputs(cfg, result, summary);
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

int cmd_verify(const std::string& config_path, std::ostream& out, std::ostream& err) {
    try {
        const SolverConfig cfg = SolverConfig::load(config_path);
        const TaggedGrid grid = build_grid(cfg.geometry);
        const ProblemData p = cfg.problem();
        const PipelineResult result = run_functional_pipeline(p, grid, cfg.n_ode, cfg.tolerances);

        PicardOptions opts;
        opts.tol = cfg.tolerances.picard;
        opts.tol_linear = std::min(cfg.tolerances.linear, 1e-12);
        const PicardState direct = picard_solve(p, grid, opts);
        const ComparisonReport cmp = compare(result.fields, direct);

        const bool agree = std::max(cmp.max_diff_u, cmp.max_diff_w) <= cfg.tolerances.compare;
        const std::string summary = format_summary(result, cmp, agree);
        out << summary;
        write_outputs(cfg, result, summary);
        return agree ? kExitOk : kExitMismatch;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

int cmd_converge(const std::string& config_path, int levels, std::ostream& out, std::ostream& err) {
    try {
        if (levels < 2) throw ConfigError("converge needs at least 2 levels");
        const SolverConfig cfg = SolverConfig::load(config_path);

        std::vector<ConvergenceRow> rows;
        std::vector<TaggedGrid> grids;
        std::vector<ScalarField> u_fields, w_fields;
        grids.reserve(static_cast<std::size_t>(levels));

        for (int level = 0; level < levels; ++level) {
            GridSpec spec = cfg.geometry;
            spec.nx = cfg.geometry.nx << level;
            spec.ny = cfg.geometry.ny << level;
            const int n_ode = cfg.n_ode << (2 * level);
            grids.push_back(build_grid(spec));
            const PipelineResult result =
                run_functional_pipeline(cfg.problem(), grids.back(), n_ode, cfg.tolerances);

            ConvergenceRow row;
            row.level = level;
            row.h = std::max(grids.back().hx(), grids.back().hy());
            row.n_ode = n_ode;
            row.gamma = result.fields.profile ? result.fields.profile->gamma : 0.0;
            row.res_u = result.residual.res_u;
            row.res_w = result.residual.res_w;
            row.order_u = row.order_w = std::nan("");
            row.field_diff_u = row.field_diff_w = std::nan("");
            if (level > 0) {
                row.order_u = std::log2(rows.back().res_u / row.res_u);
                row.order_w = std::log2(rows.back().res_w / row.res_w);
                rows[level - 1].field_diff_u = restricted_max_diff(u_fields.back(), result.fields.u);
                rows[level - 1].field_diff_w = restricted_max_diff(w_fields.back(), result.fields.w);
            }
            u_fields.push_back(result.fields.u);
            w_fields.push_back(result.fields.w);
            rows.push_back(row);
        }

        out << convergence_table(rows);
        double gamma_drift = 0.0;
        for (const ConvergenceRow& r : rows) gamma_drift = std::max(gamma_drift, std::abs(r.gamma - rows.front().gamma));
        out << "gamma_drift = " << format_g17(gamma_drift) << '\n';
        for (std::size_t k = 0; k + 2 < rows.size(); ++k) {
            out << "field_order_u[" << k << "] = "
                << format_g17(std::log2(rows[k].field_diff_u / rows[k + 1].field_diff_u)) << '\n';
            out << "field_order_w[" << k << "] = "
                << format_g17(std::log2(rows[k].field_diff_w / rows[k + 1].field_diff_w)) << '\n';
        }
        if (!cfg.output.convergence.empty())
            write_text_file(cfg.output.convergence, convergence_csv(rows));
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

}  // namespace funsol
