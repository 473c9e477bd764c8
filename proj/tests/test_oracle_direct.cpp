#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "funsol/oracle_direct.hpp"
#include "funsol/pipeline.hpp"

using namespace funsol;

namespace {

const CoefficientFn one = [](double, double) { return 1.0; };

GridSpec strip_spec(int nx, int ny) {
    GridSpec spec;
    spec.nx = nx;
    spec.ny = ny;
    spec.edge_tags = {{"left", FaceTag::gamma1},
                      {"right", FaceTag::gamma2},
                      {"bottom", FaceTag::gamma3},
                      {"top", FaceTag::gamma3}};
    return spec;
}

ProblemData make_problem(double u1, double u2, double w1, double w2, CoefficientFn a,
                         CoefficientFn b) {
    ProblemData p;
    p.u1 = u1;
    p.u2 = u2;
    p.w1 = w1;
    p.w2 = w2;
    p.coeffs.a = std::move(a);
    p.coeffs.b = std::move(b);
    return p;
}

}  // namespace

TEST_CASE("picard_solve: constant coefficients converge in one sweep") {
    const TaggedGrid grid = build_grid(strip_spec(16, 16));
    const ProblemData p = make_problem(0.0, 1.0, 0.0, 2.0, one, one);
    const PicardState s = picard_solve(p, grid);
    CHECK(s.iteration == 1);
    for (int k = 0; k < grid.n_unknowns(); ++k) {
        const int i = grid.cells()[k] % grid.nx();
        CHECK(std::abs(s.u[k] - grid.cell_x(i)) <= 1e-8);
        CHECK(std::abs(s.w[k] - 2.0 * grid.cell_x(i)) <= 1e-8);
    }
}

TEST_CASE("picard_solve: common-coefficient family satisfies the affine identity") {
    // a = b makes u and alpha*w + beta solutions of the same discrete system,
    // so they coincide up to iteration and linear-solver tolerance.
    auto common = [](double u, double w) { return 1.0 + u * u + w * w; };
    const TaggedGrid grid = build_grid(strip_spec(32, 32));
    const ProblemData p = make_problem(0.0, 1.0, 0.0, 1.0, common, common);
    const PicardState s = picard_solve(p, grid);
    for (int k = 0; k < grid.n_unknowns(); ++k)
        CHECK(std::abs(s.u[k] - s.w[k]) <= 1e-6);  // alpha = 1, beta = 0
}

TEST_CASE("picard_solve: maximum principle holds for the iterates' limit") {
    auto a = [](double u, double w) { return std::exp(0.3 * u + 0.1 * w); };
    auto b = [](double u, double w) { return 1.0 + 0.5 * u + 0.25 * w * w; };
    const TaggedGrid grid = build_grid(strip_spec(24, 24));
    const ProblemData p = make_problem(0.0, 1.0, 0.5, 1.5, a, b);
    const PicardState s = picard_solve(p, grid);
    CHECK(s.w.min() >= 0.5 - 1e-12);
    CHECK(s.w.max() <= 1.5 + 1e-12);
    CHECK(s.u.min() >= 0.0 - 1e-12);
    CHECK(s.u.max() <= 1.0 + 1e-12);
}

TEST_CASE("picard_solve: cross-solver agreement on the exponential case") {
    const TaggedGrid grid = build_grid(strip_spec(64, 64));
    const ProblemData p =
        make_problem(1.0, std::exp(1.0), 0.0, 1.0, one, [](double u, double) { return u; });
    Tolerances tol;
    tol.linear = 1e-12;
    const PipelineResult r = run_functional_pipeline(p, grid, 1024, tol);
    const PicardState s = picard_solve(p, grid);
    const ComparisonReport cmp = compare(r.fields, s);
    CHECK(cmp.max_diff_u <= 5e-3);
    CHECK(cmp.max_diff_w <= 5e-3);
    CHECK(cmp.energy_u >= 0.0);
}

TEST_CASE("picard_solve: functional collapse of the direct solution") {
    // Scatter (w_d, u_d) must lie on one curve: bin by w and measure the
    // vertical spread within bins.
    const TaggedGrid grid = build_grid(strip_spec(32, 32));
    const ProblemData p =
        make_problem(1.0, std::exp(1.0), 0.0, 1.0, one, [](double u, double) { return u; });
    const PicardState s = picard_solve(p, grid);

    std::map<int, std::pair<double, double>> bins;  // bin -> (min u, max u)
    for (int k = 0; k < grid.n_unknowns(); ++k) {
        const int bin = static_cast<int>(s.w[k] * 256.0);
        auto [it, inserted] = bins.emplace(bin, std::pair{s.u[k], s.u[k]});
        if (!inserted) {
            it->second.first = std::min(it->second.first, s.u[k]);
            it->second.second = std::max(it->second.second, s.u[k]);
        }
    }
    double spread = 0.0;
    for (const auto& [bin, range] : bins) spread = std::max(spread, range.second - range.first);
    // Bin width prescribes ~1/256 of u-variation plus O(h^2) + iteration tol.
    CHECK(spread <= 2e-2);
}

TEST_CASE("picard_solve: degenerate w data stays constant") {
    const TaggedGrid grid = build_grid(strip_spec(16, 16));
    auto a = [](double u, double) { return 1.0 + u * u; };
    const ProblemData p = make_problem(0.0, 1.0, 0.75, 0.75, a, one);
    const PicardState s = picard_solve(p, grid);
    for (int k = 0; k < grid.n_unknowns(); ++k) CHECK(s.w[k] == 0.75);
}

TEST_CASE("picard_solve: iteration budget exhaustion reports NoConvergence") {
    auto common = [](double u, double w) { return 1.0 + u * u + w * w; };
    const TaggedGrid grid = build_grid(strip_spec(16, 16));
    const ProblemData p = make_problem(0.0, 1.0, 0.0, 1.0, common, common);
    PicardOptions opts;
    opts.tol = 1e-14;  // unreachable in one sweep
    opts.max_iter = 1;
    CHECK_THROWS_AS(picard_solve(p, grid, opts), NoConvergence);
}

TEST_CASE("picard_solve: damping stays within (0, 1]") {
    const TaggedGrid grid = build_grid(strip_spec(8, 8));
    const ProblemData p = make_problem(0.0, 1.0, 0.0, 1.0, one, one);
    PicardOptions opts;
    opts.damping = 0.0;
    CHECK_THROWS_AS(picard_solve(p, grid, opts), InvalidProblem);
    opts.damping = 0.5;
    CHECK_NOTHROW(picard_solve(p, grid, opts));
}

TEST_CASE("compare: grid mismatch is rejected") {
    const TaggedGrid g1 = build_grid(strip_spec(16, 16));
    const TaggedGrid g2 = build_grid(strip_spec(24, 24));
    const ProblemData p = make_problem(0.0, 1.0, 0.0, 1.0, one, one);
    const PipelineResult r = run_functional_pipeline(p, g1, 128, {});
    const PicardState s = picard_solve(p, g2);
    CHECK_THROWS_AS(compare(r.fields, s), GridMismatch);
}

TEST_CASE("compare: identical fields give zero differences") {
    const TaggedGrid grid = build_grid(strip_spec(16, 16));
    const ProblemData p = make_problem(0.0, 1.0, 0.0, 1.0, one, one);
    const PipelineResult r = run_functional_pipeline(p, grid, 128, {});
    const PicardState s = picard_solve(p, grid);
    const ComparisonReport cmp = compare(r.fields, s);
    CHECK(cmp.max_diff_u <= 1e-8);
    CHECK(cmp.max_diff_w <= 1e-8);
    CHECK(cmp.energy_u <= 1e-16);
    CHECK(cmp.energy_w <= 1e-16);
}
