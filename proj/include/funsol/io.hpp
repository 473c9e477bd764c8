#pragma once

#include <optional>
#include <string>
#include <vector>

#include "funsol/oracle_direct.hpp"
#include "funsol/pipeline.hpp"

namespace funsol {

/// All numeric output is printed with 17 significant digits so that runs are
/// comparable bit-for-bit across platforms at double precision.
std::string format_g17(double v);

/// CSV with header x,y,z,w,u; one row per inside cell in unknown order.
std::string fields_csv(const FunctionalSolution& fsol);

/// CSV with header w,U,dU; header only when no one-dimensional profile
/// exists (degenerate path).
std::string profile_csv(const std::optional<TwoPointSolution>& profile);

/// Structured summary, one `key = value` per line.  Stable keys: gamma,
/// gamma_lo, gamma_hi, psi_w2, theta_w2, res_u, res_w, theta_psi_dev,
/// unique_certified; verify mode appends the comparison block.
std::string format_summary(const PipelineResult& result,
                           const std::optional<ComparisonReport>& comparison = std::nullopt,
                           std::optional<bool> agree = std::nullopt);

/// One row of a convergence study.
struct ConvergenceRow {
    int level = 0;
    double h = 0.0;
    int n_ode = 0;
    double gamma = 0.0;
    double res_u = 0.0;
    double res_w = 0.0;
    double order_u = 0.0;  // log2 residual ratio vs previous level (nan at level 0)
    double order_w = 0.0;
    double field_diff_u = 0.0;  // max |restricted finer - this| (nan at last level)
    double field_diff_w = 0.0;
};

std::string convergence_csv(const std::vector<ConvergenceRow>& rows);
std::string convergence_table(const std::vector<ConvergenceRow>& rows);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace funsol
