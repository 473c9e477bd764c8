#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "funsol/errors.hpp"

namespace funsol {

/// A diffusion coefficient as a function of the two field values (u, w).
using CoefficientFn = std::function<double(double u, double w)>;

/// The two positive coefficients of the coupled system and the derived
/// ratio F(u,w) = b(u,w)/a(u,w) that drives the one-dimensional problem.
struct CoefficientPair {
    CoefficientFn a;
    CoefficientFn b;

    /// Optional user-supplied Lipschitz bound of F in u on the data rectangle.
    std::optional<double> lipschitz_constant_hint;

    double ratio(double u, double w) const;
};

/// The closed rectangle R = [u_lo, u_hi] x [w_lo, w_hi] on which the
/// coefficients must be positive.
struct Rectangle {
    double u_lo, u_hi;
    double w_lo, w_hi;

    double u_span() const { return u_hi - u_lo; }
    double w_span() const { return w_hi - w_lo; }
};

/// Boundary data and coefficients of one problem instance.
///
/// w2 > w1 is the standing assumption; w2 == w1 selects the degenerate
/// uncoupled path (w is then constant and only the u equation is solved).
/// u1, u2 are arbitrary; the rectangle R normalizes their order.
struct ProblemData {
    double w1 = 0.0;
    double w2 = 1.0;
    double u1 = 0.0;
    double u2 = 1.0;
    CoefficientPair coeffs;

    bool degenerate() const { return w1 == w2; }
    Rectangle rect() const;

    /// Throws InvalidProblem when w2 < w1 or any datum is non-finite.
    void validate() const;
};

// ---------------------------------------------------------------------------
// Tagged grids
// ---------------------------------------------------------------------------

enum class FaceTag : std::uint8_t { gamma1 = 0, gamma2 = 1, gamma3 = 2 };

const char* to_string(FaceTag tag);

/// One face of an inside cell that lies on the boundary of the region.
/// axis: 0 = x, 1 = y.  side: -1 = low face, +1 = high face.
struct BoundaryFace {
    int cell;
    int axis;
    int side;
    FaceTag tag;
};

/// Rectilinear cell-centered grid over an axis-aligned region (rectangle or
/// L-shape given by the inside mask).  Unknowns live at the centers of inside
/// cells; every boundary face of the inside region carries exactly one tag.
///
/// Immutable after construction.  The constructor validates:
///   - the tagged faces are exactly the boundary faces of the mask,
///   - gamma1 and gamma2 are both nonempty,
///   - the inside region is connected (flood fill).
class TaggedGrid {
public:
    TaggedGrid(int nx, int ny, double hx, double hy,
               std::vector<std::uint8_t> inside,
               std::vector<BoundaryFace> faces);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double hx() const { return hx_; }
    double hy() const { return hy_; }

    int cell_index(int i, int j) const { return j * nx_ + i; }
    bool is_inside(int i, int j) const {
        return i >= 0 && i < nx_ && j >= 0 && j < ny_ && inside_[cell_index(i, j)] != 0;
    }

    /// Cell-center coordinates.
    double cell_x(int i) const { return (i + 0.5) * hx_; }
    double cell_y(int j) const { return (j + 0.5) * hy_; }

    int n_unknowns() const { return static_cast<int>(cells_.size()); }

    /// Unknown index of a cell, or -1 for outside cells.
    int unknown_of(int cell) const { return unknown_index_[cell]; }
    int unknown_of(int i, int j) const { return unknown_index_[cell_index(i, j)]; }

    /// Linear cell index of each unknown, in unknown order.
    const std::vector<int>& cells() const { return cells_; }

    const std::vector<BoundaryFace>& boundary_faces() const { return faces_; }

    /// Tag of the boundary face of `cell` in direction (axis, side), if any.
    std::optional<FaceTag> face_tag(int cell, int axis, int side) const;

    double spacing(int axis) const { return axis == 0 ? hx_ : hy_; }

private:
    int face_slot(int cell, int axis, int side) const {
        return cell * 4 + axis * 2 + (side > 0 ? 1 : 0);
    }

    int nx_, ny_;
    double hx_, hy_;
    std::vector<std::uint8_t> inside_;
    std::vector<int> unknown_index_;   // per cell, -1 outside
    std::vector<int> cells_;           // per unknown
    std::vector<BoundaryFace> faces_;
    std::vector<std::int8_t> face_tag_;  // 4 slots per cell, -1 = no boundary face
};

/// Declarative description of a grid: shape, resolution, physical extents,
/// and one tag per named outer edge segment.
///
/// Rectangle segments: left, right, bottom, top.
/// L-shape (bounding box minus the upper-right quadrant) adds:
///   notch_v (inner vertical edge), notch_h (inner horizontal edge);
/// "right" is then the right edge of the lower arm and "top" the top edge of
/// the left arm.  L-shape requires even nx, ny.
struct GridSpec {
    enum class Shape { rectangle, lshape };

    Shape shape = Shape::rectangle;
    int nx = 32;
    int ny = 32;
    double lx = 1.0;
    double ly = 1.0;
    std::map<std::string, FaceTag> edge_tags;
};

TaggedGrid build_grid(const GridSpec& spec);

// ---------------------------------------------------------------------------
// Fields
// ---------------------------------------------------------------------------

/// Real values indexed by the unknowns (inside cells) of a TaggedGrid.
/// The grid must outlive the field.
class ScalarField {
public:
    explicit ScalarField(const TaggedGrid& grid, double fill = 0.0);
    ScalarField(const TaggedGrid& grid, std::vector<double> values);

    const TaggedGrid& grid() const { return *grid_; }
    int size() const { return static_cast<int>(values_.size()); }

    double& operator[](int k) { return values_[k]; }
    double operator[](int k) const { return values_[k]; }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double min() const;
    double max() const;

    /// Throws Error if any entry is non-finite.
    void assert_finite(const std::string& what) const;

private:
    const TaggedGrid* grid_;
    std::vector<double> values_;
};

// ---------------------------------------------------------------------------
// Hypothesis checking
// ---------------------------------------------------------------------------

/// Sampled evidence that the coefficients satisfy the standing hypotheses
/// (positivity, finite ratio, Lipschitz ratio).  Advisory: a lattice sample
/// cannot prove positivity between sample points.
struct HypothesisReport {
    int samples_per_axis = 0;
    double a_min = 0.0, a_max = 0.0;
    double b_min = 0.0, b_max = 0.0;
    double ratio_min = 0.0;  // sampled envelope constant p-hat = min F
    double ratio_max = 0.0;  // sampled envelope constant q-hat = max F
    double lipschitz_estimate = 0.0;          // max |dF/du| difference quotient
    double lipschitz_estimate_refined = 0.0;  // same on the nested doubled lattice
    std::string note;
};

/// Samples a, b, F on a samples_per_axis^2 lattice over R.
/// Throws NonPositiveCoefficient on the first non-positive (or non-finite)
/// sample of a or b.
HypothesisReport validate_hypotheses(const ProblemData& p, int samples_per_axis);

}  // namespace funsol
