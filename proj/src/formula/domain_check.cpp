#include "qdecide/formula.hpp"

#include <deque>

namespace qd {

namespace {

constexpr std::size_t max_boxes = 4096;

bool widest_split(const RatBox& box, RatBox& left, RatBox& right)
{
	std::size_t axis = 0;
	for (std::size_t i = 1; i < box.dimension(); ++i)
		if (box[i].width() > box[axis].width())
			axis = i;
	if (box.dimension() == 0 || box[axis].is_point())
		return false;
	left = right = box;
	Rational mid = box[axis].midpoint();
	left[axis] = RatInterval(box[axis].lo(), mid);
	right[axis] = RatInterval(mid, box[axis].hi());
	return true;
}

void check_term(const Term& t, const Scope& scope, const RatBox& box)
{
	if (!t.has_guarded_ops())
		return;
	Evaluator ev(std::span<const Term>(&t, 1), scope);
	const Precision prec(32);
	std::deque<RatBox> pending{box};
	std::size_t visited = 0;
	while (!pending.empty()) {
		RatBox b = std::move(pending.front());
		pending.pop_front();
		try {
			ev.eval(0, b, prec);
			continue;
		} catch (const DomainError&) {
		}
		RatBox l, r;
		if (++visited > max_boxes || !widest_split(b, l, r))
			throw DomainError("cannot verify that '" + to_string(t) +
			                  "' stays inside its domain (division by zero or square root of a negative)");
		pending.push_back(std::move(l));
		pending.push_back(std::move(r));
	}
}

void walk(const Formula& f, Scope& scope, std::vector<RatInterval>& sides)
{
	switch (f.kind()) {
	case FormulaKind::Atom: {
		RatBox box(sides);
		check_term(f.atom().lhs, scope, box);
		check_term(f.atom().rhs, scope, box);
		return;
	}
	case FormulaKind::Exists:
	case FormulaKind::ForAll: {
		auto mark = scope.size();
		scope.insert(scope.end(), f.variables().begin(), f.variables().end());
		sides.insert(sides.end(), f.bounds().sides().begin(), f.bounds().sides().end());
		walk(f.body(), scope, sides);
		scope.resize(mark);
		sides.resize(mark);
		return;
	}
	default:
		for (const auto& g : f.operands())
			walk(g, scope, sides);
	}
}

} // namespace

void check_domains(const Formula& f, const RatBox& parameter_box)
{
	Scope scope = free_variables(f);
	if (scope.size() != parameter_box.dimension())
		throw std::invalid_argument("parameter box dimension does not match the free variables");
	std::vector<RatInterval> sides(parameter_box.sides().begin(), parameter_box.sides().end());
	walk(f, scope, sides);
}

} // namespace qd
