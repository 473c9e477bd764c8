#include "funsol/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace funsol {

// Plain pointwise ratio; positivity of a and b is policed where the standing
// hypotheses are actually asserted (validate_hypotheses, build_psi, assembly),
// not on every evaluation -- the one-dimensional theory tolerates F >= 0 with
// isolated zeros.
double CoefficientPair::ratio(double u, double w) const {
    return b(u, w) / a(u, w);
}

Rectangle ProblemData::rect() const {
    return Rectangle{std::min(u1, u2), std::max(u1, u2), w1, w2};
}

void ProblemData::validate() const {
    if (!std::isfinite(w1) || !std::isfinite(w2) || !std::isfinite(u1) || !std::isfinite(u2))
        throw InvalidProblem("boundary values must be finite");
    if (w2 < w1)
        throw InvalidProblem("w2 < w1; the data require w2 >= w1 (equality selects the degenerate path)");
    if (!coeffs.a || !coeffs.b)
        throw InvalidProblem("coefficient functions a and b must both be set");
}

const char* to_string(FaceTag tag) {
    switch (tag) {
        case FaceTag::gamma1: return "gamma1";
        case FaceTag::gamma2: return "gamma2";
        case FaceTag::gamma3: return "gamma3";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// TaggedGrid
// ---------------------------------------------------------------------------

TaggedGrid::TaggedGrid(int nx, int ny, double hx, double hy,
                       std::vector<std::uint8_t> inside,
                       std::vector<BoundaryFace> faces)
    : nx_(nx), ny_(ny), hx_(hx), hy_(hy), inside_(std::move(inside)), faces_(std::move(faces)) {
    if (nx_ < 1 || ny_ < 1) throw InvalidGeometry("cell counts must be positive");
    if (!(hx_ > 0.0) || !(hy_ > 0.0)) throw InvalidGeometry("spacings must be positive");
    if (inside_.size() != static_cast<std::size_t>(nx_) * ny_)
        throw InvalidGeometry("inside mask size does not match nx*ny");

    unknown_index_.assign(inside_.size(), -1);
    for (int j = 0; j < ny_; ++j)
        for (int i = 0; i < nx_; ++i)
            if (inside_[cell_index(i, j)]) {
                unknown_index_[cell_index(i, j)] = static_cast<int>(cells_.size());
                cells_.push_back(cell_index(i, j));
            }
    if (cells_.empty()) throw InvalidGeometry("inside region is empty");

    // Connectivity by flood fill over 4-neighbors.
    {
        std::vector<std::uint8_t> seen(inside_.size(), 0);
        std::queue<int> queue;
        queue.push(cells_.front());
        seen[cells_.front()] = 1;
        int reached = 0;
        while (!queue.empty()) {
            const int c = queue.front();
            queue.pop();
            ++reached;
            const int i = c % nx_, j = c / nx_;
            const int di[4] = {-1, 1, 0, 0};
            const int dj[4] = {0, 0, -1, 1};
            for (int d = 0; d < 4; ++d) {
                const int in = i + di[d], jn = j + dj[d];
                if (is_inside(in, jn) && !seen[cell_index(in, jn)]) {
                    seen[cell_index(in, jn)] = 1;
                    queue.push(cell_index(in, jn));
                }
            }
        }
        if (reached != n_unknowns())
            throw InvalidGeometry("inside region is disconnected");
    }

    // The tagged faces must be exactly the boundary faces of the mask.
    face_tag_.assign(inside_.size() * 4, -1);
    for (const BoundaryFace& f : faces_) {
        if (f.cell < 0 || f.cell >= static_cast<int>(inside_.size()) || !inside_[f.cell])
            throw InvalidGeometry("tagged face does not belong to an inside cell");
        if (f.axis != 0 && f.axis != 1) throw InvalidGeometry("face axis must be 0 or 1");
        if (f.side != -1 && f.side != 1) throw InvalidGeometry("face side must be -1 or +1");
        const int i = f.cell % nx_, j = f.cell / nx_;
        const int in = i + (f.axis == 0 ? f.side : 0);
        const int jn = j + (f.axis == 1 ? f.side : 0);
        if (is_inside(in, jn))
            throw InvalidGeometry("tagged face is interior, not on the boundary");
        const int slot = face_slot(f.cell, f.axis, f.side);
        if (face_tag_[slot] != -1) throw InvalidGeometry("face tagged twice");
        face_tag_[slot] = static_cast<std::int8_t>(f.tag);
    }

    int n_gamma1 = 0, n_gamma2 = 0;
    for (const int c : cells_) {
        const int i = c % nx_, j = c / nx_;
        const int di[4] = {-1, 1, 0, 0};
        const int dj[4] = {0, 0, -1, 1};
        for (int d = 0; d < 4; ++d) {
            if (is_inside(i + di[d], j + dj[d])) continue;
            const int axis = (d < 2) ? 0 : 1;
            const int side = (d % 2 == 0) ? -1 : 1;
            const std::int8_t tag = face_tag_[face_slot(c, axis, side)];
            if (tag == -1)
                throw InvalidGeometry("untagged boundary face at cell (" + std::to_string(i) +
                                      "," + std::to_string(j) + ")");
            if (tag == static_cast<std::int8_t>(FaceTag::gamma1)) ++n_gamma1;
            if (tag == static_cast<std::int8_t>(FaceTag::gamma2)) ++n_gamma2;
        }
    }
    if (n_gamma1 == 0) throw InvalidGeometry("gamma1 has no faces; the mixed problem is degenerate");
    if (n_gamma2 == 0) throw InvalidGeometry("gamma2 has no faces; the mixed problem is degenerate");
}

std::optional<FaceTag> TaggedGrid::face_tag(int cell, int axis, int side) const {
    const std::int8_t t = face_tag_[face_slot(cell, axis, side)];
    if (t < 0) return std::nullopt;
    return static_cast<FaceTag>(t);
}

// ---------------------------------------------------------------------------
// build_grid
// ---------------------------------------------------------------------------

namespace {

FaceTag lookup_tag(const GridSpec& spec, const std::string& segment) {
    const auto it = spec.edge_tags.find(segment);
    if (it == spec.edge_tags.end())
        throw InvalidGeometry("edge segment '" + segment + "' has no tag");
    return it->second;
}

}  // namespace

TaggedGrid build_grid(const GridSpec& spec) {
    if (spec.nx < 1 || spec.ny < 1) throw InvalidGeometry("nx and ny must be positive");
    if (!(spec.lx > 0.0) || !(spec.ly > 0.0)) throw InvalidGeometry("extents must be positive");

    const bool lshape = spec.shape == GridSpec::Shape::lshape;
    if (lshape && (spec.nx % 2 != 0 || spec.ny % 2 != 0 || spec.nx < 2 || spec.ny < 2))
        throw InvalidGeometry("L-shape requires even nx, ny >= 2");

    std::vector<std::string> known = {"left", "right", "bottom", "top"};
    if (lshape) {
        known.push_back("notch_v");
        known.push_back("notch_h");
    }
    for (const auto& [name, tag] : spec.edge_tags) {
        (void)tag;
        if (std::find(known.begin(), known.end(), name) == known.end())
            throw InvalidGeometry("unknown edge segment '" + name + "' for this shape");
    }

    const int nx = spec.nx, ny = spec.ny;
    const int icut = nx / 2, jcut = ny / 2;  // notch corner (L-shape only)

    std::vector<std::uint8_t> inside(static_cast<std::size_t>(nx) * ny, 1);
    if (lshape)
        for (int j = jcut; j < ny; ++j)
            for (int i = icut; i < nx; ++i)
                inside[j * nx + i] = 0;

    auto in = [&](int i, int j) {
        return i >= 0 && i < nx && j >= 0 && j < ny && inside[j * nx + i] != 0;
    };

    std::vector<BoundaryFace> faces;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            if (!inside[j * nx + i]) continue;
            const int cell = j * nx + i;
            if (!in(i - 1, j)) faces.push_back({cell, 0, -1, lookup_tag(spec, "left")});
            if (!in(i + 1, j)) {
                const std::string seg = (lshape && i == icut - 1 && j >= jcut) ? "notch_v" : "right";
                faces.push_back({cell, 0, 1, lookup_tag(spec, seg)});
            }
            if (!in(i, j - 1)) faces.push_back({cell, 1, -1, lookup_tag(spec, "bottom")});
            if (!in(i, j + 1)) {
                const std::string seg = (lshape && j == jcut - 1 && i >= icut) ? "notch_h" : "top";
                faces.push_back({cell, 1, 1, lookup_tag(spec, seg)});
            }
        }
    }

    return TaggedGrid(nx, ny, spec.lx / nx, spec.ly / ny, std::move(inside), std::move(faces));
}

// ---------------------------------------------------------------------------
// ScalarField
// ---------------------------------------------------------------------------

ScalarField::ScalarField(const TaggedGrid& grid, double fill)
    : grid_(&grid), values_(static_cast<std::size_t>(grid.n_unknowns()), fill) {}

ScalarField::ScalarField(const TaggedGrid& grid, std::vector<double> values)
    : grid_(&grid), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>(grid.n_unknowns()))
        throw Error("field size does not match grid unknown count");
    assert_finite("field");
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

void ScalarField::assert_finite(const std::string& what) const {
    for (const double v : values_)
        if (!std::isfinite(v)) throw Error(what + " contains a non-finite value");
}

// ---------------------------------------------------------------------------
// validate_hypotheses
// ---------------------------------------------------------------------------

namespace {

struct LatticeScan {
    double a_min, a_max, b_min, b_max, f_min, f_max, lipschitz;
};

LatticeScan scan_lattice(const ProblemData& p, int n) {
    const Rectangle r = p.rect();
    LatticeScan s{};
    s.a_min = s.b_min = s.f_min = std::numeric_limits<double>::infinity();
    s.a_max = s.b_max = s.f_max = -std::numeric_limits<double>::infinity();
    s.lipschitz = 0.0;

    const double du = (n > 1) ? r.u_span() / (n - 1) : 0.0;
    const double dw = (n > 1) ? r.w_span() / (n - 1) : 0.0;

    std::vector<double> f_row(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double w = r.w_lo + j * dw;
        for (int i = 0; i < n; ++i) {
            const double u = r.u_lo + i * du;
            const double av = p.coeffs.a(u, w);
            const double bv = p.coeffs.b(u, w);
            if (!std::isfinite(av) || av <= 0.0) throw NonPositiveCoefficient(u, w, 'a', av);
            if (!std::isfinite(bv) || bv <= 0.0) throw NonPositiveCoefficient(u, w, 'b', bv);
            const double f = bv / av;
            if (!std::isfinite(f))
                throw Error("coefficient ratio b/a is not finite at (u=" + std::to_string(u) +
                            ", w=" + std::to_string(w) + ")");
            s.a_min = std::min(s.a_min, av);
            s.a_max = std::max(s.a_max, av);
            s.b_min = std::min(s.b_min, bv);
            s.b_max = std::max(s.b_max, bv);
            s.f_min = std::min(s.f_min, f);
            s.f_max = std::max(s.f_max, f);
            f_row[i] = f;
        }
        if (du > 0.0)
            for (int i = 0; i + 1 < n; ++i)
                s.lipschitz = std::max(s.lipschitz, std::abs(f_row[i + 1] - f_row[i]) / du);
    }
    return s;
}

}  // namespace

HypothesisReport validate_hypotheses(const ProblemData& p, int samples_per_axis) {
    p.validate();
    if (samples_per_axis < 2) throw InvalidProblem("samples_per_axis must be >= 2");

    const LatticeScan base = scan_lattice(p, samples_per_axis);
    // Nested refinement (2n-1 keeps every base lattice point) for the
    // divergence check on the Lipschitz difference quotients.
    const LatticeScan fine = scan_lattice(p, 2 * samples_per_axis - 1);

    HypothesisReport rep;
    rep.samples_per_axis = samples_per_axis;
    rep.a_min = base.a_min;
    rep.a_max = base.a_max;
    rep.b_min = base.b_min;
    rep.b_max = base.b_max;
    rep.ratio_min = base.f_min;
    rep.ratio_max = base.f_max;
    rep.lipschitz_estimate = base.lipschitz;
    rep.lipschitz_estimate_refined = fine.lipschitz;
    rep.note = "advisory: positivity and envelopes sampled on a " +
               std::to_string(samples_per_axis) + "x" + std::to_string(samples_per_axis) +
               " lattice; values between sample points are not certified";
    return rep;
}

}  // namespace funsol
