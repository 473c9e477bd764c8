#pragma once

#include <array>
#include <optional>
#include <string>

#include "funsol/core_types.hpp"
#include "funsol/pipeline.hpp"

namespace funsol {

/// Declarative coefficient: one of four named families so that configuration
/// files stay portable and free of expression parsing.
///   constant     value
///   polynomial   c00 + c10 u + c01 w + c20 u^2 + c11 u w + c02 w^2
///   exponential  scale * exp(cu * u + cw * w)
///   rational     polynomial / polynomial (same degree-2 layout)
struct CoefficientFamily {
    enum class Kind { constant, polynomial, exponential, rational };

    Kind kind = Kind::constant;
    double value = 1.0;
    std::array<double, 6> poly{};  // c00 c10 c01 c20 c11 c02
    double scale = 1.0;
    double cu = 0.0;
    double cw = 0.0;
    std::array<double, 6> num{};
    std::array<double, 6> den{};

    double eval(double u, double w) const;
    CoefficientFn fn() const;
};

struct OutputSpec {
    std::string fields;       // CSV x,y,z,w,u
    std::string profile;      // CSV w,U,dU
    std::string summary;      // key = value lines
    std::string convergence;  // converge-mode CSV table
};

/// A full problem description as read from an INI-style config file with the
/// flat sections [geometry], [boundary], [coefficients], [resolution],
/// [tolerance], [output].
struct SolverConfig {
    GridSpec geometry;  // nx, ny filled from [resolution]
    double u1 = 0.0, u2 = 1.0;
    double w1 = 0.0, w2 = 1.0;
    CoefficientFamily coeff_a;
    CoefficientFamily coeff_b;
    std::optional<double> lipschitz_hint;
    int n_ode = 1024;
    Tolerances tolerances;
    OutputSpec output;

    /// Builds the ProblemData with callable coefficients.
    ProblemData problem() const;

    static SolverConfig parse(const std::string& text);
    static SolverConfig load(const std::string& path);

    /// Canonical text form; parse(serialize()) reproduces the config.
    std::string serialize() const;
};

}  // namespace funsol
