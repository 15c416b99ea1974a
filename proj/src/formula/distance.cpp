#include "qdecide/formula.hpp"

#include <map>
#include <queue>

namespace qd {

namespace {

bool same_shape(const Formula& f, const Formula& g)
{
	if (f.kind() != g.kind())
		return false;
	switch (f.kind()) {
	case FormulaKind::Atom:
		return f.atom().relation == g.atom().relation;
	case FormulaKind::Exists:
	case FormulaKind::ForAll:
		if (f.variables().size() != g.variables().size())
			return false;
		for (std::size_t i = 0; i < f.variables().size(); ++i)
			if (f.bounds()[i].lo() != g.bounds()[i].lo() || f.bounds()[i].hi() != g.bounds()[i].hi())
				return false;
		return same_shape(f.body(), g.body());
	default:
		for (std::size_t i = 0; i < f.operands().size(); ++i)
			if (!same_shape(f.operands()[i], g.operands()[i]))
				return false;
		return true;
	}
}

// A term position of f paired with the corresponding one of g, g's bound
// variables renamed to f's.
struct Position {
	Term f;
	Term g;
	Scope scope;
	std::vector<RatInterval> sides;
};

void pair_positions(const Formula& f, const Formula& g, std::map<std::string, Term>& rename, Scope& scope,
                    std::vector<RatInterval>& sides, std::vector<Position>& out)
{
	switch (f.kind()) {
	case FormulaKind::Atom:
		out.push_back({f.atom().lhs, substitute(g.atom().lhs, rename), scope, sides});
		out.push_back({f.atom().rhs, substitute(g.atom().rhs, rename), scope, sides});
		return;
	case FormulaKind::Exists:
	case FormulaKind::ForAll: {
		auto mark = scope.size();
		auto saved = rename;
		for (std::size_t i = 0; i < f.variables().size(); ++i) {
			scope.push_back(f.variables()[i]);
			sides.push_back(f.bounds()[i]);
			rename[g.variables()[i]] = Term::variable(f.variables()[i]);
		}
		pair_positions(f.body(), g.body(), rename, scope, sides, out);
		rename = std::move(saved);
		scope.resize(mark);
		sides.resize(mark);
		return;
	}
	default:
		for (std::size_t i = 0; i < f.operands().size(); ++i)
			pair_positions(f.operands()[i], g.operands()[i], rename, scope, sides, out);
	}
}

// Generalized polynomial: variables and opaque non-polynomial subterms are
// the indeterminates, so that common parts of f and g cancel exactly.
using Monomial = std::map<std::string, unsigned>;
using Poly = std::map<Monomial, Rational>;

struct Canon {
	std::map<std::string, Term> atoms;

	Poly constant(const Rational& q)
	{
		Poly p;
		if (sgn(q) != 0)
			p[{}] = q;
		return p;
	}

	Poly indeterminate(const std::string& key, const Term& t)
	{
		atoms.emplace(key, t);
		return Poly{{Monomial{{key, 1}}, Rational(1)}};
	}

	static Poly add(Poly a, const Poly& b, int sign)
	{
		for (const auto& [m, c] : b) {
			Rational& slot = a[m];
			slot += sign * c;
			if (sgn(slot) == 0)
				a.erase(m);
		}
		return a;
	}

	static Poly mul(const Poly& a, const Poly& b)
	{
		Poly out;
		for (const auto& [ma, ca] : a)
			for (const auto& [mb, cb] : b) {
				Monomial m = ma;
				for (const auto& [k, e] : mb)
					m[k] += e;
				Rational& slot = out[m];
				slot += ca * cb;
				if (sgn(slot) == 0)
					out.erase(m);
			}
		return out;
	}

	Poly of(const Term& t)
	{
		switch (t.kind()) {
		case TermKind::Constant:
			return constant(t.value());
		case TermKind::Variable:
			return indeterminate("v:" + t.name(), t);
		case TermKind::Negate:
			return add({}, of(t.operand(0)), -1);
		case TermKind::Add:
			return add(of(t.operand(0)), of(t.operand(1)), 1);
		case TermKind::Subtract:
			return add(of(t.operand(0)), of(t.operand(1)), -1);
		case TermKind::Multiply:
			return mul(of(t.operand(0)), of(t.operand(1)));
		case TermKind::Power: {
			Poly base = of(t.operand(0));
			Poly acc = constant(1);
			for (unsigned i = 0; i < t.exponent(); ++i)
				acc = mul(acc, base);
			return acc;
		}
		case TermKind::Divide:
			if (t.operand(1).kind() == TermKind::Constant && sgn(t.operand(1).value()) != 0)
				return mul(of(t.operand(0)), constant(1 / t.operand(1).value()));
			[[fallthrough]];
		default:
			return indeterminate("a:" + to_string(t), t);
		}
	}

	Term rebuild(const Poly& p) const
	{
		Term sum = Term::constant(0);
		bool first = true;
		for (const auto& [m, c] : p) {
			Term prod = Term::constant(c);
			for (const auto& [k, e] : m) {
				Term factor = atoms.at(k);
				prod = Term::multiply(prod, e == 1 ? factor : Term::power(factor, e));
			}
			sum = first ? prod : Term::add(sum, prod);
			first = false;
		}
		return sum;
	}
};

Precision precision_at(std::size_t depth)
{
	return Precision(static_cast<unsigned>(24 + depth));
}

// Encloses max over the box of |h| to within tol by best-first branch and
// bound. Exploration order and precision do not depend on tol, so smaller
// tolerances refine the same sequence of bounds.
RatInterval max_abs(const Term& h, const Scope& scope, const RatBox& box, const Rational& tol)
{
	constexpr std::size_t max_steps = 2'000'000;
	Evaluator ev(std::span<const Term>(&h, 1), scope);

	struct Item {
		Rational ub;
		std::size_t seq;
		std::size_t depth;
		RatBox box;
	};
	auto worse = [](const Item& a, const Item& b) { return a.ub != b.ub ? a.ub < b.ub : a.seq > b.seq; };
	std::priority_queue<Item, std::vector<Item>, decltype(worse)> queue(worse);
	std::size_t seq = 0;
	Rational lb = 0;

	auto visit = [&](RatBox b, std::size_t depth, const Rational& parent_ub) {
		Precision prec = precision_at(depth);
		Rational ub = min(ev.eval(0, b, prec).magnitude(), parent_ub);
		std::vector<RatInterval> mid;
		for (auto& c : b.center())
			mid.emplace_back(c);
		Rational at_center = ev.eval(0, RatBox(std::move(mid)), prec).mignitude();
		if (at_center > lb)
			lb = at_center;
		queue.push({ub, seq++, depth, std::move(b)});
	};

	visit(box, 0, ev.eval(0, box, precision_at(0)).magnitude());
	for (std::size_t step = 0; step < max_steps; ++step) {
		const Item& top = queue.top();
		if (top.ub - lb <= tol)
			break;
		Item item = top;
		queue.pop();
		std::size_t axis = 0;
		for (std::size_t i = 1; i < item.box.dimension(); ++i)
			if (item.box[i].width() > item.box[axis].width())
				axis = i;
		if (item.box.dimension() == 0 || item.box[axis].is_point()) {
			visit(std::move(item.box), item.depth + 1, item.ub);
			continue;
		}
		RatBox left = item.box;
		RatBox right = item.box;
		Rational mid = item.box[axis].midpoint();
		left[axis] = RatInterval(item.box[axis].lo(), mid);
		right[axis] = RatInterval(mid, item.box[axis].hi());
		visit(std::move(left), item.depth + 1, item.ub);
		visit(std::move(right), item.depth + 1, item.ub);
	}
	return {lb, max(lb, queue.top().ub)};
}

} // namespace

bool same_structure(const Formula& f, const Formula& g)
{
	return same_shape(f, g);
}

DistanceEnclosure distance_enclosure(const Formula& f, const Formula& g, const Rational& tolerance)
{
	if (sgn(tolerance) <= 0)
		throw std::invalid_argument("distance tolerance must be positive");
	DistanceEnclosure out;
	if (!same_shape(f, g))
		return out;
	if (!free_variables(f).empty() || !free_variables(g).empty())
		throw std::invalid_argument("distance is defined for sentences only");

	std::vector<Position> positions;
	std::map<std::string, Term> rename;
	Scope scope;
	std::vector<RatInterval> sides;
	pair_positions(f, g, rename, scope, sides, positions);

	RatInterval total(0);
	for (const auto& pos : positions) {
		Canon canon;
		Poly diff = Canon::add(canon.of(pos.f), canon.of(pos.g), -1);
		Term h = canon.rebuild(diff);
		Scope used;
		std::vector<RatInterval> used_sides;
		for (const auto& v : variables(h)) {
			auto it = std::ranges::find(pos.scope, v);
			used.push_back(v);
			used_sides.push_back(pos.sides[static_cast<std::size_t>(it - pos.scope.begin())]);
		}
		RatInterval m = max_abs(h, used, RatBox(std::move(used_sides)), tolerance);
		out.per_term.push_back(m);
		total = RatInterval(max(total.lo(), m.lo()), max(total.hi(), m.hi()));
	}
	out.distance = total;
	return out;
}

} // namespace qd
