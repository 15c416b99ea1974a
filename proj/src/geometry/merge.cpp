#include "qdecide/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

namespace qd {

namespace {

class UnionFind {
public:
	void add(std::size_t x) { parent_.try_emplace(x, x); }

	std::size_t find(std::size_t x)
	{
		add(x);
		std::size_t root = x;
		while (parent_[root] != root)
			root = parent_[root];
		while (parent_[x] != root) {
			std::size_t next = parent_[x];
			parent_[x] = root;
			x = next;
		}
		return root;
	}

	void unite(std::size_t a, std::size_t b)
	{
		a = find(a);
		b = find(b);
		if (a != b)
			parent_[std::max(a, b)] = std::min(a, b);
	}

private:
	std::unordered_map<std::size_t, std::size_t> parent_;
};

} // namespace

MergeResult merge_cells(const Grid& grid, std::span<const Face> zero_faces,
                        std::optional<std::span<const std::size_t>> active)
{
	std::set<std::size_t> members;
	if (active) {
		members.insert(active->begin(), active->end());
	} else {
		for (std::size_t c = 0; c < grid.cell_count(); ++c)
			members.insert(c);
	}
	UnionFind uf;
	for (auto c : members)
		uf.add(c);
	std::vector<std::size_t> touching_boundary;
	for (const auto& f : zero_faces) {
		for (auto c : f.cells)
			members.insert(c);
		if (f.cells.size() == 2)
			uf.unite(f.cells[0], f.cells[1]);
		if (f.on_boundary)
			touching_boundary.push_back(f.cells.front());
	}
	std::set<std::size_t> dropped;
	for (auto c : touching_boundary)
		dropped.insert(uf.find(c));

	std::map<std::size_t, BoxComplex> components; // keyed by smallest member
	MergeResult out;
	for (auto c : members) {
		std::size_t root = uf.find(c);
		if (dropped.contains(root))
			out.removed.push_back(c);
		else
			components[root].cells.push_back(c);
	}
	for (auto& [root, cx] : components)
		out.complexes.push_back(std::move(cx));
	return out;
}

std::vector<OrientedFace> boundary(const Grid& grid, const BoxComplex& complex)
{
	auto cells = complex.cells;
	std::ranges::sort(cells);
	auto inside = [&](std::size_t c) { return std::ranges::binary_search(cells, c); };
	std::vector<OrientedFace> out;
	for (auto c : cells)
		for (std::size_t a = 0; a < grid.dimension(); ++a)
			for (bool upper : {false, true}) {
				auto nb = grid.neighbour(c, a, upper);
				if (nb && inside(*nb))
					continue;
				out.push_back({cell_face(grid, c, a, upper), upper ? 1 : -1});
			}
	auto key = [](const OrientedFace& f) {
		std::vector<Rational> lows;
		for (const auto& s : f.face.box.sides())
			lows.push_back(s.lo());
		return std::make_tuple(f.face.axis, f.face.value, lows);
	};
	std::ranges::sort(out, [&](const OrientedFace& a, const OrientedFace& b) { return key(a) < key(b); });
	return out;
}

} // namespace qd
