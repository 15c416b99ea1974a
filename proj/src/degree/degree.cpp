#include "qdecide/degree.hpp"

#include <deque>
#include <stdexcept>

namespace qd {

namespace {

long parity_sign(std::size_t k)
{
	return k % 2 == 0 ? 1 : -1;
}

struct Failure {
	std::string reason;
};

class Reducer {
public:
	Reducer(const PointMap& f, Precision prec, std::size_t budget)
	    : ev_(f.components, f.scope), prec_(prec), budget_(budget), initial_budget_(budget)
	{
	}

	DegreeOutcome run(const Chain& region)
	{
		DegreeOutcome out;
		std::vector<std::size_t> active(ev_.size());
		for (std::size_t i = 0; i < active.size(); ++i)
			active[i] = i;
		for (const auto& c : region)
			if (c.dimension() != active.size() || c.box.dimension() != ev_.arity()) {
				out.failure = "region must be full-dimensional with as many components as coordinates";
				return out;
			}
		try {
			DegreeResult r;
			r.value = reduce(active, region, true);
			r.boundary_min_lb = top_bound_.value_or(Rational(0));
			stats_.subdivisions = initial_budget_ - budget_;
			r.stats = stats_;
			out.result = r;
		} catch (const Failure& e) {
			out.failure = e.reason;
		} catch (const DomainError& e) {
			out.failure = e.what();
		}
		stats_.subdivisions = initial_budget_ - budget_;
		out.stats = stats_;
		return out;
	}

private:
	Evaluator ev_;
	Precision prec_;
	std::size_t budget_;
	std::size_t initial_budget_;
	DegreeStats stats_;
	std::optional<Rational> top_bound_;

	long reduce(const std::vector<std::size_t>& active, const Chain& chain, bool top)
	{
		++stats_.levels;
		if (active.empty()) {
			long sum = 0;
			for (const auto& c : chain)
				sum += c.multiplicity;
			return sum;
		}
		Chain edge = chain_boundary(chain);
		if (edge.empty())
			return 0;
		auto cover = certify(ev_, active, edge, prec_, budget_);
		if (!cover)
			throw Failure{"boundary certification exhausted the subdivision budget"};
		stats_.pieces += cover->size();
		if (top) {
			for (const auto& p : *cover)
				if (!top_bound_ || p.bound < *top_bound_)
					top_bound_ = p.bound;
		}

		std::vector<std::size_t> counts(active.size(), 0);
		for (const auto& p : *cover)
			for (std::size_t j = 0; j < active.size(); ++j)
				if (p.signs[j] != 0)
					++counts[j];
		std::size_t pick = 0;
		for (std::size_t j = 1; j < active.size(); ++j)
			if (counts[j] > counts[pick])
				pick = j;

		Chain gamma;
		for (auto& p : *cover)
			if (p.signs[pick] > 0)
				gamma.push_back(std::move(p.cell));
		std::vector<std::size_t> rest = active;
		rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
		return parity_sign(pick) * reduce(rest, normalize(gamma), false);
	}
};

} // namespace

std::optional<SignedFaceCover> certify(const Evaluator& ev, std::span<const std::size_t> components, const Chain& chain,
                                       Precision prec, std::size_t& budget)
{
	SignedFaceCover out;
	std::deque<std::pair<OrientedCell, unsigned>> pending;
	for (const auto& c : chain)
		pending.emplace_back(c, 0);
	while (!pending.empty()) {
		auto [cell, depth] = std::move(pending.front());
		pending.pop_front();
		CertifiedPiece piece{cell, std::vector<int>(components.size(), 0), Rational(0), depth};
		bool any = false;
		for (std::size_t j = 0; j < components.size(); ++j) {
			RatInterval v = ev.eval(components[j], cell.box, prec);
			if (sgn(v.lo()) > 0)
				piece.signs[j] = 1;
			else if (sgn(v.hi()) < 0)
				piece.signs[j] = -1;
			if (piece.signs[j] != 0) {
				any = true;
				piece.bound = max(piece.bound, v.mignitude());
			}
		}
		if (any) {
			out.push_back(std::move(piece));
			continue;
		}
		if (cell.free_axes.empty() || budget == 0)
			return std::nullopt;
		--budget;
		auto [lower, upper] = bisect(cell);
		pending.emplace_back(std::move(lower), depth + 1);
		pending.emplace_back(std::move(upper), depth + 1);
	}
	return out;
}

DegreeOutcome degree(const PointMap& f, const Chain& region, Precision prec, std::size_t budget)
{
	if (f.components.size() != f.scope.size()) {
		DegreeOutcome out;
		out.failure = "degree needs as many components as variables";
		return out;
	}
	return Reducer(f, prec, budget).run(region);
}

DegreeOutcome degree(const PointMap& f, const Grid& grid, const BoxComplex& complex, Precision prec,
                     std::size_t budget)
{
	return degree(f, to_chain(grid, complex), prec, budget);
}

DegreeOutcome degree(const PointMap& f, const RatBox& box, Precision prec, std::size_t budget)
{
	Grid g(box, std::vector<std::size_t>(box.dimension(), 1));
	return degree(f, g, BoxComplex{{0}}, prec, budget);
}

Rational robustness_margin(const DegreeResult& result)
{
	if (result.value == 0)
		throw std::domain_error("degree 0 gives no robustness certificate");
	if (sgn(result.boundary_min_lb) <= 0)
		throw std::domain_error("no positive boundary bound available");
	return result.boundary_min_lb / 2;
}

} // namespace qd
