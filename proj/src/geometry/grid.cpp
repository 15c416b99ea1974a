#include "qdecide/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace qd {

Grid::Grid(RatBox base, std::vector<std::size_t> shape) : base_(std::move(base)), shape_(std::move(shape))
{
	if (shape_.size() != base_.dimension())
		throw std::invalid_argument("grid shape does not match box dimension");
	strides_.assign(shape_.size(), 1);
	for (std::size_t i = shape_.size(); i-- > 0;) {
		if (shape_[i] == 0)
			throw std::invalid_argument("grid needs at least one cell per axis");
		strides_[i] = count_;
		count_ *= shape_[i];
	}
}

Rational Grid::cut(std::size_t axis, std::size_t i) const
{
	const auto& side = base_[axis];
	if (i == shape_[axis])
		return side.hi();
	Rational t(static_cast<long>(i), static_cast<long>(shape_[axis]));
	t.canonicalize();
	return side.lo() + side.width() * t;
}

std::vector<std::size_t> Grid::unravel(std::size_t linear) const
{
	std::vector<std::size_t> index(shape_.size());
	for (std::size_t i = 0; i < shape_.size(); ++i) {
		index[i] = linear / strides_[i];
		linear %= strides_[i];
	}
	return index;
}

std::size_t Grid::ravel(std::span<const std::size_t> index) const
{
	std::size_t linear = 0;
	for (std::size_t i = 0; i < shape_.size(); ++i)
		linear += index[i] * strides_[i];
	return linear;
}

RatBox Grid::cell(std::span<const std::size_t> index) const
{
	std::vector<RatInterval> sides;
	sides.reserve(index.size());
	for (std::size_t i = 0; i < index.size(); ++i)
		sides.emplace_back(cut(i, index[i]), cut(i, index[i] + 1));
	return RatBox(std::move(sides));
}

RatBox Grid::cell(std::size_t linear) const
{
	return cell(unravel(linear));
}

std::optional<std::size_t> Grid::neighbour(std::size_t linear, std::size_t axis, bool upper) const
{
	std::size_t coord = (linear / strides_[axis]) % shape_[axis];
	if (upper ? coord + 1 >= shape_[axis] : coord == 0)
		return std::nullopt;
	return upper ? linear + strides_[axis] : linear - strides_[axis];
}

Grid grid_cover(const RatBox& b, const Rational& r)
{
	if (sgn(r) <= 0)
		throw std::invalid_argument("grid width must be positive");
	std::vector<std::size_t> shape;
	for (const auto& side : b.sides()) {
		Integer n = ceil_scaled(side.width() / r, 0);
		shape.push_back(n < 1 ? 1 : static_cast<std::size_t>(n.get_ui()));
	}
	return Grid(b, std::move(shape));
}

Face cell_face(const Grid& grid, std::size_t cell, std::size_t axis, bool upper)
{
	Face f;
	f.box = grid.cell(cell);
	f.axis = axis;
	f.value = upper ? f.box[axis].hi() : f.box[axis].lo();
	f.box[axis] = RatInterval(f.value);
	auto nb = grid.neighbour(cell, axis, upper);
	if (!nb) {
		f.cells = {cell};
		f.on_boundary = true;
	} else {
		f.cells = upper ? std::vector<std::size_t>{cell, *nb} : std::vector<std::size_t>{*nb, cell};
	}
	return f;
}

std::vector<Face> grid_faces(const Grid& grid)
{
	std::vector<Face> out;
	for (std::size_t c = 0; c < grid.cell_count(); ++c)
		for (std::size_t a = 0; a < grid.dimension(); ++a) {
			if (!grid.neighbour(c, a, false))
				out.push_back(cell_face(grid, c, a, false));
			out.push_back(cell_face(grid, c, a, true));
		}
	return out;
}

std::vector<OrientedFace> subdivide_face(const OrientedFace& face, const Rational& r)
{
	if (sgn(r) <= 0)
		throw std::invalid_argument("subdivision width must be positive");
	Grid g = grid_cover(face.face.box, r);
	std::vector<OrientedFace> out;
	out.reserve(g.cell_count());
	for (std::size_t i = 0; i < g.cell_count(); ++i) {
		OrientedFace piece = face;
		piece.face.box = g.cell(i);
		out.push_back(std::move(piece));
	}
	return out;
}

} // namespace qd
