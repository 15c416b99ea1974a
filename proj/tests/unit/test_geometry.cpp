#include "oracle.hpp"

#include "qdecide/geometry.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace qd;

namespace {

RatBox unit_box(std::size_t m, long hi = 1)
{
	return RatBox(std::vector<RatInterval>(m, RatInterval(0, hi)));
}

Rational face_volume(const Face& f)
{
	Rational v = 1;
	for (std::size_t i = 0; i < f.box.dimension(); ++i)
		if (i != f.axis)
			v *= f.box[i].width();
	return v;
}

Grid random_grid(std::mt19937_64& rng)
{
	std::size_t m = 1 + rng() % 3;
	std::vector<RatInterval> sides;
	std::vector<std::size_t> shape;
	for (std::size_t i = 0; i < m; ++i) {
		Rational lo = test::random_rational(rng, -2, 2, 4);
		sides.emplace_back(lo, lo + test::random_rational(rng, Rational(1, 4), 3, 4));
		shape.push_back(1 + rng() % (m == 3 ? 4 : 6));
	}
	return Grid(RatBox(std::move(sides)), shape);
}

std::vector<Face> random_zero_faces(std::mt19937_64& rng, const Grid& grid, unsigned percent)
{
	std::vector<Face> out;
	for (auto& f : grid_faces(grid))
		if (rng() % 100 < percent)
			out.push_back(std::move(f));
	return out;
}

} // namespace

TEST_SUITE("geometry")
{
	TEST_CASE("grid_cover examples")
	{
		Grid halves = grid_cover(RatBox{RatInterval(0, 1)}, Rational(1, 2));
		REQUIRE(halves.cell_count() == 2);
		CHECK(halves.cell(0) == RatBox{RatInterval(0, Rational(1, 2))});
		CHECK(halves.cell(1) == RatBox{RatInterval(Rational(1, 2), 1)});

		CHECK(grid_cover(unit_box(2), 1).cell_count() == 1);
		CHECK(grid_cover(unit_box(2), 1).cell(0) == unit_box(2));

		Grid thirds = grid_cover(RatBox{RatInterval(0, 1)}, Rational(1, 3));
		REQUIRE(thirds.cell_count() == 3);
		for (std::size_t i = 0; i < 3; ++i)
			CHECK(thirds.cell(i).width() == Rational(1, 3));

		// degenerate sides still get one cell
		Grid flat = grid_cover(RatBox{RatInterval(0, 1), RatInterval(2)}, Rational(1, 4));
		CHECK(flat.shape() == std::vector<std::size_t>{4, 1});
		CHECK(grid_cover(RatBox{}, 1).cell_count() == 1);
	}

	TEST_CASE("grid cells tile the base box")
	{
		std::mt19937_64 rng(41);
		for (int i = 0; i < 60; ++i) {
			std::size_t m = 1 + rng() % 3;
			std::vector<RatInterval> sides;
			for (std::size_t k = 0; k < m; ++k) {
				Rational lo = test::random_rational(rng, -3, 3, 6);
				sides.emplace_back(lo, lo + test::random_rational(rng, 0, 2, 6));
			}
			RatBox b(sides);
			Rational r = test::random_rational(rng, Rational(1, 8), 1, 5);
			if (sgn(r) == 0)
				r = 1;
			Grid g = grid_cover(b, r);
			Rational volume = 0;
			Rational total = 1;
			for (const auto& s : b.sides())
				total *= s.width();
			for (std::size_t c = 0; c < g.cell_count(); ++c) {
				RatBox cell = g.cell(c);
				CHECK(cell.width() <= r);
				CHECK(b.contains(cell));
				Rational v = 1;
				for (const auto& s : cell.sides())
					v *= s.width();
				volume += v;
				CHECK(g.ravel(g.unravel(c)) == c);
			}
			// disjoint interiors and full cover together force equal volume
			CHECK(volume == total);
			for (std::size_t k = 0; k < m; ++k)
				CHECK(g.shape()[k] == std::max<std::size_t>(1, static_cast<std::size_t>(
				                                                   Integer(ceil_scaled(b[k].width() / r, 0)).get_ui())));
		}
	}

	TEST_CASE("faces and incidence")
	{
		Grid g(unit_box(2, 2), {2, 3});
		auto faces = grid_faces(g);
		CHECK(faces.size() == 3 * 3 + 2 * 4);
		std::set<std::pair<std::size_t, bool>> seen;
		for (const auto& f : faces) {
			std::size_t degenerate = 0;
			for (std::size_t i = 0; i < 2; ++i)
				degenerate += f.box[i].is_point() ? 1 : 0;
			CHECK(degenerate == 1);
			CHECK(f.box[f.axis].lo() == f.value);
			CHECK(f.cells.size() == (f.on_boundary ? 1u : 2u));
			if (f.cells.size() == 2)
				CHECK(g.cell(f.cells[0])[f.axis].hi() == f.value);
		}
		Face inner = cell_face(g, 0, 0, true);
		CHECK(inner.cells == std::vector<std::size_t>{0, 3});
		CHECK_FALSE(inner.on_boundary);
		CHECK(cell_face(g, 3, 0, false) == inner);
		CHECK(cell_face(g, 0, 0, false).on_boundary);
	}

	TEST_CASE("boundary examples")
	{
		Grid one(unit_box(2), {1, 1});
		auto b1 = boundary(one, BoxComplex{{0}});
		REQUIRE(b1.size() == 4);
		for (const auto& of : b1)
			CHECK(of.sign == (of.face.value == 1 ? 1 : -1));

		Grid two(RatBox{RatInterval(0, 2), RatInterval(0, 1)}, {2, 1});
		CHECK(boundary(two, BoxComplex{{0, 1}}).size() == 6);

		Grid sq(unit_box(2, 2), {2, 2});
		// cells (0,0), (0,1), (1,0)
		CHECK(boundary(sq, BoxComplex{{0, 1, 2}}).size() == 8);
	}

	TEST_CASE("merge examples")
	{
		Grid g(RatBox{RatInterval(0, 3), RatInterval(0, 1)}, {3, 1});
		auto none = merge_cells(g, {});
		CHECK(none.complexes.size() == 3);
		CHECK(none.removed.empty());

		std::vector<Face> shared{cell_face(g, 0, 0, true)};
		auto joined = merge_cells(g, shared);
		REQUIRE(joined.complexes.size() == 2);
		CHECK(joined.complexes[0].cells == std::vector<std::size_t>{0, 1});
		CHECK(joined.complexes[1].cells == std::vector<std::size_t>{2});

		std::vector<Face> edge{cell_face(g, 0, 0, true), cell_face(g, 1, 1, false)};
		auto removed = merge_cells(g, edge);
		CHECK(removed.complexes.size() == 1);
		CHECK(removed.removed == std::vector<std::size_t>{0, 1});

		std::vector<std::size_t> active{2};
		auto partial = merge_cells(g, {}, std::span<const std::size_t>(active));
		REQUIRE(partial.complexes.size() == 1);
		CHECK(partial.complexes[0].cells == std::vector<std::size_t>{2});
	}

	TEST_CASE("merge properties on random instances")
	{
		std::mt19937_64 rng(43);
		for (int i = 0; i < 150; ++i) {
			Grid g = random_grid(rng);
			auto zero = random_zero_faces(rng, g, 5 + static_cast<unsigned>(i % 40));
			auto result = merge_cells(g, zero);
			std::vector<std::size_t> all(result.removed);
			for (const auto& cx : result.complexes) {
				all.insert(all.end(), cx.cells.begin(), cx.cells.end());
				CHECK(std::ranges::is_sorted(cx.cells));
			}
			std::ranges::sort(all);
			CHECK(all.size() == g.cell_count());
			for (std::size_t c = 0; c < all.size(); ++c)
				CHECK(all[c] == c);

			for (const auto& cx : result.complexes) {
				auto faces = boundary(g, cx);
				for (const auto& of : faces)
					CHECK(std::ranges::find(zero, of.face) == zero.end());
				for (std::size_t axis = 0; axis < g.dimension(); ++axis) {
					Rational sum = 0;
					for (const auto& of : faces)
						if (of.face.axis == axis)
							sum += of.sign * face_volume(of.face);
					CHECK(sum == 0);
				}
				CHECK(std::ranges::is_sorted(faces, {}, [](const OrientedFace& of) {
					return std::pair(of.face.axis, of.face.value);
				}));
			}
		}
	}

	TEST_CASE("subdivide_face")
	{
		Grid one(unit_box(2), {1, 1});
		OrientedFace f{cell_face(one, 0, 0, true), 1};
		CHECK(subdivide_face(f, Rational(1, 2)).size() == 2);
		auto thirds = subdivide_face(f, Rational(1, 3));
		REQUIRE(thirds.size() == 3);
		for (const auto& p : thirds) {
			CHECK(p.sign == 1);
			CHECK(p.face.axis == 0);
			CHECK(p.face.box[1].width() == Rational(1, 3));
		}
		CHECK(subdivide_face(f, 1).size() == 1);

		Grid cube(unit_box(3, 2), {1, 1, 1});
		OrientedFace g{cell_face(cube, 0, 2, false), -1};
		auto pieces = subdivide_face(g, Rational(1, 2));
		CHECK(pieces.size() == 16);
		Rational area = 0;
		for (const auto& p : pieces) {
			CHECK(p.sign == -1);
			area += face_volume(p.face);
		}
		CHECK(area == 4);
	}

	TEST_CASE("chains: boundary of a boundary vanishes")
	{
		std::mt19937_64 rng(47);
		for (int i = 0; i < 80; ++i) {
			Grid g = random_grid(rng);
			auto result = merge_cells(g, random_zero_faces(rng, g, 50));
			for (const auto& cx : result.complexes) {
				Chain region = to_chain(g, cx);
				Chain edge = chain_boundary(region);
				CHECK(chain_boundary(edge).empty());

				// the face list and the chain boundary describe the same chain
				auto faces = boundary(g, cx);
				Chain from_faces = to_chain(faces);
				for (auto c : edge) {
					c.multiplicity = -c.multiplicity;
					from_faces.push_back(c);
				}
				CHECK(normalize(from_faces).empty());
			}
		}
	}

	TEST_CASE("normalize and bisect")
	{
		OrientedCell a{RatBox{RatInterval(0, 2), RatInterval(1)}, {0}, 1};
		OrientedCell b{RatBox{RatInterval(1, 3), RatInterval(1)}, {0}, -1};
		Chain n = normalize({a, b});
		REQUIRE(n.size() == 2);
		CHECK(n[0].box[0] == RatInterval(0, 1));
		CHECK(n[0].multiplicity == 1);
		CHECK(n[1].box[0] == RatInterval(2, 3));
		CHECK(n[1].multiplicity == -1);

		OrientedCell c{RatBox{RatInterval(0, 1), RatInterval(0, 4)}, {0, 1}, 2};
		auto [lo, hi] = bisect(c);
		CHECK(lo.box[1] == RatInterval(0, 2));
		CHECK(hi.box[1] == RatInterval(2, 4));
		CHECK(lo.multiplicity == 2);
		CHECK(normalize({lo, hi}).size() == 2);
	}
}
