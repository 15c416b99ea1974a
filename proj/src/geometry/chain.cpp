#include "qdecide/geometry.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace qd {

namespace {

std::vector<std::size_t> nondegenerate_axes(const RatBox& b)
{
	std::vector<std::size_t> axes;
	for (std::size_t i = 0; i < b.dimension(); ++i)
		if (!b[i].is_point())
			axes.push_back(i);
	return axes;
}

long parity_sign(std::size_t k)
{
	return k % 2 == 0 ? 1 : -1;
}

} // namespace

Chain to_chain(const Grid& grid, const BoxComplex& complex)
{
	Chain out;
	for (auto c : complex.cells) {
		RatBox b = grid.cell(c);
		auto axes = nondegenerate_axes(b);
		out.push_back({std::move(b), std::move(axes), 1});
	}
	return out;
}

Chain to_chain(std::span<const OrientedFace> faces)
{
	Chain out;
	for (const auto& f : faces) {
		auto axes = nondegenerate_axes(f.face.box);
		auto below = static_cast<std::size_t>(std::ranges::count_if(axes, [&](std::size_t a) { return a < f.face.axis; }));
		out.push_back({f.face.box, std::move(axes), f.sign * parity_sign(below)});
	}
	return out;
}

Chain normalize(const Chain& chain)
{
	// Cells sharing free axes and fixed coordinates can overlap; split each
	// group to the common refinement of its cut points and add up.
	using Key = std::pair<std::vector<std::size_t>, std::vector<Rational>>;
	std::map<Key, std::vector<const OrientedCell*>> groups;
	for (const auto& c : chain) {
		if (c.multiplicity == 0)
			continue;
		Key key{c.free_axes, {}};
		for (std::size_t i = 0; i < c.box.dimension(); ++i)
			if (!std::ranges::binary_search(c.free_axes, i))
				key.second.push_back(c.box[i].lo());
		groups[key].push_back(&c);
	}

	Chain out;
	for (auto& [key, cells] : groups) {
		const auto& axes = key.first;
		const RatBox& shape = cells.front()->box;
		std::vector<std::vector<Rational>> cuts(axes.size());
		for (std::size_t j = 0; j < axes.size(); ++j) {
			for (const auto* c : cells) {
				cuts[j].push_back(c->box[axes[j]].lo());
				cuts[j].push_back(c->box[axes[j]].hi());
			}
			std::ranges::sort(cuts[j]);
			auto [first, last] = std::ranges::unique(cuts[j]);
			cuts[j].erase(first, last);
		}
		std::map<std::vector<std::size_t>, long> sums;
		for (const auto* c : cells) {
			std::vector<std::size_t> lo(axes.size());
			std::vector<std::size_t> hi(axes.size());
			for (std::size_t j = 0; j < axes.size(); ++j) {
				lo[j] = static_cast<std::size_t>(std::ranges::lower_bound(cuts[j], c->box[axes[j]].lo()) - cuts[j].begin());
				hi[j] = static_cast<std::size_t>(std::ranges::lower_bound(cuts[j], c->box[axes[j]].hi()) - cuts[j].begin());
			}
			std::vector<std::size_t> idx = lo;
			while (true) {
				sums[idx] += c->multiplicity;
				std::size_t j = axes.size();
				while (j-- > 0) {
					if (++idx[j] < hi[j])
						break;
					idx[j] = lo[j];
				}
				if (j == static_cast<std::size_t>(-1))
					break;
			}
		}
		for (const auto& [idx, m] : sums) {
			if (m == 0)
				continue;
			RatBox b = shape;
			for (std::size_t j = 0; j < axes.size(); ++j)
				b[axes[j]] = RatInterval(cuts[j][idx[j]], cuts[j][idx[j] + 1]);
			out.push_back({std::move(b), axes, m});
		}
	}
	return out;
}

Chain chain_boundary(const Chain& chain)
{
	Chain faces;
	for (const auto& c : chain) {
		for (std::size_t t = 0; t < c.free_axes.size(); ++t) {
			std::size_t axis = c.free_axes[t];
			std::vector<std::size_t> rest = c.free_axes;
			rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(t));
			for (bool upper : {false, true}) {
				RatBox b = c.box;
				b[axis] = RatInterval(upper ? c.box[axis].hi() : c.box[axis].lo());
				long sign = c.multiplicity * parity_sign(upper ? t : t + 1);
				faces.push_back({std::move(b), rest, sign});
			}
		}
	}
	return normalize(faces);
}

std::pair<OrientedCell, OrientedCell> bisect(const OrientedCell& cell)
{
	if (cell.free_axes.empty())
		throw std::invalid_argument("cannot bisect a point");
	std::size_t axis = cell.free_axes.front();
	for (auto a : cell.free_axes)
		if (cell.box[a].width() > cell.box[axis].width())
			axis = a;
	OrientedCell lower = cell;
	OrientedCell upper = cell;
	Rational mid = cell.box[axis].midpoint();
	lower.box[axis] = RatInterval(cell.box[axis].lo(), mid);
	upper.box[axis] = RatInterval(mid, cell.box[axis].hi());
	return {std::move(lower), std::move(upper)};
}

} // namespace qd
