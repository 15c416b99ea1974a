#pragma once

#include "qdecide/interval.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace qd {

/// Uniform grid over a box. Cells are addressed by a multi-index or by its
/// row-major linear encoding (last axis fastest).
class Grid {
public:
	Grid() = default;
	Grid(RatBox base, std::vector<std::size_t> shape);

	const RatBox& base() const { return base_; }
	std::size_t dimension() const { return base_.dimension(); }
	const std::vector<std::size_t>& shape() const { return shape_; }
	std::size_t cell_count() const { return count_; }

	/// i-th cut point along an axis, 0 <= i <= shape[axis].
	Rational cut(std::size_t axis, std::size_t i) const;

	RatBox cell(std::size_t linear) const;
	RatBox cell(std::span<const std::size_t> index) const;
	std::vector<std::size_t> unravel(std::size_t linear) const;
	std::size_t ravel(std::span<const std::size_t> index) const;

	/// Linear index of the neighbour one step along `axis`, if inside.
	std::optional<std::size_t> neighbour(std::size_t linear, std::size_t axis, bool upper) const;

private:
	RatBox base_;
	std::vector<std::size_t> shape_;
	std::vector<std::size_t> strides_;
	std::size_t count_ = 1;
};

/// ceil(width_i / r) cells per axis (at least one).
Grid grid_cover(const RatBox& b, const Rational& r);

/// Codimension-one face of a grid cell.
struct Face {
	RatBox box; // degenerate along `axis`
	std::size_t axis = 0;
	Rational value;
	std::vector<std::size_t> cells; // incident cells, lower side first
	bool on_boundary = false;

	friend bool operator==(const Face& a, const Face& b) { return a.box == b.box; }
};

/// The face of `cell` at the lower or upper end of `axis`.
Face cell_face(const Grid& grid, std::size_t cell, std::size_t axis, bool upper);

/// Every face of the grid once, in order of (lower cell, axis, side).
std::vector<Face> grid_faces(const Grid& grid);

/// A set of grid cells treated as one closed region.
struct BoxComplex {
	std::vector<std::size_t> cells; // sorted linear indices
};

struct MergeResult {
	std::vector<BoxComplex> complexes;
	std::vector<std::size_t> removed; // cells of components touching a zero face on the boundary
};

/// Union-find closure of cells through internal zero faces. Components with
/// a zero face on the boundary of the base box are dropped. When `active` is
/// given only those cells (plus any cell incident to a zero face) take part.
MergeResult merge_cells(const Grid& grid, std::span<const Face> zero_faces,
                        std::optional<std::span<const std::size_t>> active = std::nullopt);

struct OrientedFace {
	Face face;
	int sign = 1; // +1: the complex lies below the face along its axis
};

/// Faces of the complex not shared by two of its cells, lexicographically
/// ordered, with outward co-orientation.
std::vector<OrientedFace> boundary(const Grid& grid, const BoxComplex& complex);

/// Uniform split of a face to width <= r; orientation is inherited.
std::vector<OrientedFace> subdivide_face(const OrientedFace& face, const Rational& r);

/// Axis-aligned oriented cell of an integral cubical chain. The orientation
/// is `multiplicity` times the standard one of the free axes in order.
struct OrientedCell {
	RatBox box;
	std::vector<std::size_t> free_axes; // increasing
	long multiplicity = 1;

	std::size_t dimension() const { return free_axes.size(); }
};

using Chain = std::vector<OrientedCell>;

/// Chain of the full-dimensional cells of a complex.
Chain to_chain(const Grid& grid, const BoxComplex& complex);

/// Boundary chain of the oriented faces returned by boundary().
Chain to_chain(std::span<const OrientedFace> faces);

/// Boundary operator followed by cancellation: coincident or overlapping
/// faces are split to a common refinement and their multiplicities summed.
Chain chain_boundary(const Chain& chain);

/// Sum of equal cells after splitting overlapping cells of equal support.
Chain normalize(const Chain& chain);

/// Halves a cell across its widest free axis.
std::pair<OrientedCell, OrientedCell> bisect(const OrientedCell& cell);

} // namespace qd
