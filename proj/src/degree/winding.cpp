#include "qdecide/degree.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qd {

long winding_oracle_2d(const PointMap& f, const Grid& grid, const BoxComplex& complex, std::size_t samples)
{
	if (f.components.size() != 2 || f.scope.size() != 2)
		throw std::invalid_argument("winding oracle needs a planar map");
	if (samples < 2)
		samples = 2;
	Chain edges = chain_boundary(to_chain(grid, complex));

	auto value = [&](double x, double y) {
		const double pt[2] = {x, y};
		double u = evaluate_approx(f.components[0], f.scope, pt);
		double v = evaluate_approx(f.components[1], f.scope, pt);
		if (std::hypot(u, v) < 1e-12)
			throw std::runtime_error("winding oracle sampled a zero of the map");
		return std::atan2(v, u);
	};

	double total = 0;
	for (const auto& e : edges) {
		if (e.free_axes.size() != 1)
			throw std::logic_error("boundary of a planar region must consist of edges");
		std::size_t axis = e.free_axes[0];
		double lo = e.box[axis].lo().get_d();
		double hi = e.box[axis].hi().get_d();
		double fixed = e.box[1 - axis].lo().get_d();
		auto point = [&](double t) { return axis == 0 ? value(t, fixed) : value(fixed, t); };
		double sum = 0;
		double prev = point(lo);
		for (std::size_t s = 1; s <= samples; ++s) {
			double t = lo + (hi - lo) * static_cast<double>(s) / static_cast<double>(samples);
			double cur = point(t);
			double d = std::remainder(cur - prev, 2 * std::numbers::pi);
			sum += d;
			prev = cur;
		}
		total += static_cast<double>(e.multiplicity) * sum;
	}
	double turns = total / (2 * std::numbers::pi);
	double rounded = std::round(turns);
	if (std::abs(turns - rounded) > 0.25)
		throw std::runtime_error("winding oracle did not close up; increase the sample count");
	return static_cast<long>(rounded);
}

long winding_oracle_2d(const PointMap& f, const RatBox& box, std::size_t samples)
{
	Grid g(box, std::vector<std::size_t>(box.dimension(), 1));
	return winding_oracle_2d(f, g, BoxComplex{{0}}, samples);
}

} // namespace qd
