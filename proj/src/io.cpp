#include "funsol/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace funsol {

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fields_csv(const FunctionalSolution& fsol) {
    const TaggedGrid& grid = fsol.u.grid();
    std::ostringstream out;
    out << "x,y,z,w,u\n";
    for (int r = 0; r < grid.n_unknowns(); ++r) {
        const int cell = grid.cells()[r];
        const int i = cell % grid.nx(), j = cell / grid.nx();
        out << format_g17(grid.cell_x(i)) << ',' << format_g17(grid.cell_y(j)) << ','
            << format_g17(fsol.z[r]) << ',' << format_g17(fsol.w[r]) << ','
            << format_g17(fsol.u[r]) << '\n';
    }
    return out.str();
}

std::string profile_csv(const std::optional<TwoPointSolution>& profile) {
    std::ostringstream out;
    out << "w,U,dU\n";
    if (profile)
        for (std::size_t k = 0; k < profile->w_nodes.size(); ++k)
            out << format_g17(profile->w_nodes[k]) << ',' << format_g17(profile->u_values[k]) << ','
                << format_g17(profile->derivative_values[k]) << '\n';
    return out.str();
}

std::string format_summary(const PipelineResult& result,
                           const std::optional<ComparisonReport>& comparison,
                           std::optional<bool> agree) {
    std::ostringstream out;
    const double gamma = result.fields.profile ? result.fields.profile->gamma : 0.0;
    out << "gamma = " << format_g17(gamma) << '\n';
    out << "gamma_lo = " << format_g17(result.bracket.lo) << '\n';
    out << "gamma_hi = " << format_g17(result.bracket.hi) << '\n';
    out << "psi_w2 = " << format_g17(result.fields.psi_w2) << '\n';
    out << "theta_w2 = " << format_g17(result.fields.theta_w2) << '\n';
    out << "res_u = " << format_g17(result.residual.res_u) << '\n';
    out << "res_w = " << format_g17(result.residual.res_w) << '\n';
    out << "theta_psi_dev = " << format_g17(result.diagnostics.max_theta_dev) << '\n';
    out << "unique_certified = " << (result.uniqueness.certified ? 1 : 0) << '\n';
    // Secondary diagnostics.
    out << "psi_z_dev = " << format_g17(result.diagnostics.max_psi_dev) << '\n';
    out << "gamma_ratio = " << format_g17(result.gamma_from_transforms) << '\n';
    out << "p_hat = " << format_g17(result.hypotheses.ratio_min) << '\n';
    out << "q_hat = " << format_g17(result.hypotheses.ratio_max) << '\n';
    out << "lipschitz_estimate = " << format_g17(result.hypotheses.lipschitz_estimate_refined) << '\n';
    if (result.fields.profile) {
        out << "endpoint_residual = " << format_g17(result.fields.profile->endpoint_residual) << '\n';
        out << "clamped_evals = " << result.fields.profile->clamped_evals << '\n';
    }
    if (comparison) {
        out << "max_diff_u = " << format_g17(comparison->max_diff_u) << '\n';
        out << "max_diff_w = " << format_g17(comparison->max_diff_w) << '\n';
        out << "energy_u = " << format_g17(comparison->energy_u) << '\n';
        out << "energy_w = " << format_g17(comparison->energy_w) << '\n';
    }
    if (agree) out << "agree = " << (*agree ? 1 : 0) << '\n';
    return out.str();
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream out;
    out << "level,h,n_ode,gamma,res_u,res_w,order_u,order_w,field_diff_u,field_diff_w\n";
    for (const ConvergenceRow& r : rows)
        out << r.level << ',' << format_g17(r.h) << ',' << r.n_ode << ',' << format_g17(r.gamma)
            << ',' << format_g17(r.res_u) << ',' << format_g17(r.res_w) << ','
            << format_g17(r.order_u) << ',' << format_g17(r.order_w) << ','
            << format_g17(r.field_diff_u) << ',' << format_g17(r.field_diff_w) << '\n';
    return out.str();
}

std::string convergence_table(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream out;
    out << "level          h      n_ode        gamma          res_u          res_w   order_u   order_w\n";
    char buf[256];
    for (const ConvergenceRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%5d %10.4e %10d %12.8g %14.6e %14.6e %9.3g %9.3g\n",
                      r.level, r.h, r.n_ode, r.gamma, r.res_u, r.res_w, r.order_u, r.order_w);
        out << buf;
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw Error("failed writing output file '" + path + "'");
}

}  // namespace funsol
