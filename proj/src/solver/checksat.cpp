#include "parallel.hpp"
#include "qdecide/degree.hpp"
#include "qdecide/geometry.hpp"
#include "qdecide/solver.hpp"

#include <algorithm>
#include <map>

namespace qd {

namespace {

void check_deadline(const SolverOptions& o)
{
	if (o.deadline && std::chrono::steady_clock::now() > *o.deadline)
		throw DeadlineExceeded();
}

CheckResult dispatch(const Formula& s, const Scope& params, const RatBox& p, const Rational& r,
                     const SolverOptions& o)
{
	check_deadline(o);
	switch (s.kind()) {
	case FormulaKind::Exists:
		return soei(s, params, p, r, o);
	case FormulaKind::ForAll:
		return univ(s, params, p, r, o);
	case FormulaKind::And:
		return conj(s, params, p, r, o);
	case FormulaKind::Or:
		return disj(s, params, p, r, o);
	default:
		throw ClassBViolation("not a class B formula: " + to_string(s));
	}
}

std::optional<Rational> min_opt(const std::optional<Rational>& a, const std::optional<Rational>& b)
{
	if (a && b)
		return min(*a, *b);
	return std::nullopt;
}

struct CellInfo {
	bool dead = false;      // f excludes 0 or some g is negative
	bool candidate = true;  // f-enclosure contains 0
	bool positive = false;  // every g component positive
	Rational separation;    // for dead cells
	Rational g_lower;       // for positive cells: min over g of the lower bound
};

CellInfo classify(const Evaluator& evf, const Evaluator& evg, const RatBox& box, Precision prec)
{
	CellInfo info;
	try {
		RatBox fv = evf.eval(box, prec);
		RatBox gv = evg.eval(box, prec);
		info.candidate = !excludes_zero(fv);
		Band band = ineq_band(gv);
		info.dead = !info.candidate || band == Band::DisjointFromNonneg;
		info.positive = band == Band::AllPositive;
		bool first = true;
		for (const auto& side : fv.sides())
			info.separation = max(info.separation, side.mignitude());
		for (const auto& side : gv.sides()) {
			if (sgn(side.hi()) < 0)
				info.separation = max(info.separation, -side.hi());
			if (first || side.lo() < info.g_lower)
				info.g_lower = side.lo();
			first = false;
		}
	} catch (const DomainError&) {
		info = CellInfo{};
	}
	return info;
}

bool is_zero_face(const Evaluator& evf, const RatBox& box, Precision prec)
{
	try {
		return !excludes_zero(evf.eval(box, prec));
	} catch (const DomainError&) {
		return true;
	}
}

} // namespace

CheckResult soei(const Formula& block, const Scope& params, const RatBox& p, const Rational& r,
                 const SolverOptions& o)
{
	auto atoms = conjunction_atoms(block.body());
	if (block.kind() != FormulaKind::Exists || !atoms)
		throw ClassBViolation("not an existential block of equations and inequalities: " + to_string(block));
	std::vector<Term> f;
	std::vector<Term> g;
	for (const auto& a : *atoms)
		(a.relation == Relation::Eq ? f : g).push_back(a.normalized());

	Scope scope = params;
	scope.insert(scope.end(), block.variables().begin(), block.variables().end());
	const RatBox& b = block.bounds();
	const std::size_t m = b.dimension();
	const std::size_t n = f.size();
	const Precision prec = Precision::for_refinement(r);
	Evaluator evf(f, scope);
	Evaluator evg(g, scope);

	CheckResult out;
	Grid grid = grid_cover(b, r);
	const std::size_t count = grid.cell_count();
	out.stats.cells = count;
	std::vector<CellInfo> cells(count);
	detail::parallel_for(count, o.workers, [&](std::size_t i) {
		if (i % 4096 == 0)
			check_deadline(o);
		cells[i] = classify(evf, evg, p.concat(grid.cell(i)), prec);
	});

	std::vector<std::size_t> candidates;
	bool all_dead = true;
	for (std::size_t i = 0; i < count; ++i) {
		all_dead = all_dead && cells[i].dead;
		if (cells[i].candidate)
			candidates.push_back(i);
	}
	out.stats.candidates = n == 0 ? 0 : candidates.size();

	if (all_dead) {
		out.value = TriValue::False();
		Rational sep = cells.front().separation;
		for (const auto& c : cells)
			sep = min(sep, c.separation);
		out.false_separation = sep;
		return out;
	}

	if (n == 0) {
		std::optional<Rational> best;
		for (const auto& c : cells)
			if (c.positive && (!best || c.g_lower > *best))
				best = c.g_lower;
		if (best) {
			out.value = TriValue::True();
			if (p.dimension() == 0)
				out.true_margin = *best / 2;
		}
		return out;
	}

	if (n != m)
		return out;
	for (const auto& side : b.sides())
		if (side.is_point())
			return out;

	// Faces between two candidate cells or on the boundary of B; a face of a
	// cell whose enclosure excludes 0 cannot carry a zero.
	std::vector<char> is_candidate(count, 0);
	for (auto c : candidates)
		is_candidate[c] = 1;
	std::vector<std::vector<Face>> found(candidates.size());
	detail::parallel_for(candidates.size(), o.workers, [&](std::size_t k) {
		std::size_t c = candidates[k];
		for (std::size_t axis = 0; axis < m; ++axis)
			for (bool upper : {false, true}) {
				auto nb = grid.neighbour(c, axis, upper);
				if (nb && (!upper || !is_candidate[*nb]))
					continue;
				Face face = cell_face(grid, c, axis, upper);
				if (is_zero_face(evf, p.concat(face.box), prec))
					found[k].push_back(std::move(face));
			}
	});
	std::vector<Face> zero_faces;
	for (auto& v : found)
		for (auto& face : v)
			zero_faces.push_back(std::move(face));
	out.stats.zero_faces = zero_faces.size();

	MergeResult merged = merge_cells(grid, zero_faces, std::span<const std::size_t>(candidates));
	out.stats.complexes = merged.complexes.size();
	out.stats.removed = merged.removed.size();

	std::map<std::string, Term> at_center;
	auto center = p.center();
	for (std::size_t i = 0; i < params.size(); ++i)
		at_center.emplace(params[i], Term::constant(center[i]));
	PointMap map{{}, block.variables()};
	for (const auto& t : f)
		map.components.push_back(substitute(t, at_center));

	for (const auto& cx : merged.complexes) {
		check_deadline(o);
		DegreeOutcome d = degree(map, grid, cx, prec, o.degree_budget);
		if (!d) {
			++out.stats.degree_failures;
			continue;
		}
		out.stats.degrees.push_back(d.result->value);
		if (d.result->value == 0)
			continue;
		bool positive = std::ranges::all_of(cx.cells, [&](std::size_t c) { return cells[c].positive; });
		if (!positive)
			continue;
		out.value = TriValue::True();
		if (p.dimension() == 0) {
			Rational eps = d.result->boundary_min_lb;
			for (auto c : cx.cells)
				if (!g.empty())
					eps = min(eps, cells[c].g_lower);
			out.true_margin = eps / 2;
		}
		return out;
	}
	return out;
}

CheckResult univ(const Formula& forall, const Scope& params, const RatBox& p, const Rational& r,
                 const SolverOptions& o)
{
	if (forall.kind() != FormulaKind::ForAll)
		throw ClassBViolation("not a universal formula: " + to_string(forall));
	Scope scope = params;
	scope.push_back(forall.variables()[0]);
	Grid pieces = grid_cover(forall.bounds(), r);

	CheckResult out;
	out.value = TriValue::True();
	for (std::size_t i = 0; i < pieces.cell_count(); ++i) {
		CheckResult sub = dispatch(forall.body(), scope, p.concat(pieces.cell(i)), r, o);
		out.stats.absorb(sub.stats);
		out.value = lifted_and(out.value, sub.value);
		if (out.value == TriValue::False()) {
			out.false_separation = sub.false_separation;
			break;
		}
	}
	return out;
}

namespace {

std::pair<Scope, RatBox> project(const Formula& side, const Scope& params, const RatBox& p)
{
	auto fv = free_variables(side);
	Scope scope;
	std::vector<std::size_t> axes;
	for (std::size_t i = 0; i < params.size(); ++i)
		if (std::ranges::find(fv, params[i]) != fv.end()) {
			scope.push_back(params[i]);
			axes.push_back(i);
		}
	return {scope, p.project(axes)};
}

CheckResult side(const Formula& f, std::size_t i, const Scope& params, const RatBox& p, const Rational& r,
                 const SolverOptions& o)
{
	auto [scope, box] = project(f.operands()[i], params, p);
	return dispatch(f.operands()[i], scope, box, r, o);
}

} // namespace

CheckResult conj(const Formula& f, const Scope& params, const RatBox& p, const Rational& r, const SolverOptions& o)
{
	if (f.kind() != FormulaKind::And)
		throw ClassBViolation("not a conjunction: " + to_string(f));
	CheckResult a = side(f, 0, params, p, r, o);
	if (a.value == TriValue::False())
		return a;
	CheckResult b = side(f, 1, params, p, r, o);
	CheckResult out;
	out.value = lifted_and(a.value, b.value);
	out.stats = a.stats;
	out.stats.absorb(b.stats);
	if (out.value == TriValue::True())
		out.true_margin = min_opt(a.true_margin, b.true_margin);
	else if (out.value == TriValue::False())
		out.false_separation = b.false_separation;
	return out;
}

CheckResult disj(const Formula& f, const Scope& params, const RatBox& p, const Rational& r, const SolverOptions& o)
{
	if (f.kind() != FormulaKind::Or)
		throw ClassBViolation("not a disjunction: " + to_string(f));
	CheckResult a = side(f, 0, params, p, r, o);
	if (a.value == TriValue::True())
		return a;
	CheckResult b = side(f, 1, params, p, r, o);
	CheckResult out;
	out.value = lifted_or(a.value, b.value);
	out.stats = a.stats;
	out.stats.absorb(b.stats);
	if (out.value == TriValue::True())
		out.true_margin = b.true_margin;
	else if (out.value == TriValue::False())
		out.false_separation = min_opt(a.false_separation, b.false_separation);
	return out;
}

CheckResult checksat(const Formula& s, const Scope& params, const RatBox& p, const Rational& r,
                     const SolverOptions& options)
{
	if (sgn(r) <= 0)
		throw std::invalid_argument("refinement must be positive");
	if (params.size() != p.dimension())
		throw std::invalid_argument("parameter box does not match the parameter names");
	for (const auto& v : free_variables(s))
		if (std::ranges::find(params, v) == params.end())
			throw std::invalid_argument("free variable '" + v + "' has no parameter bound");
	ClassBReport report = validate_class_b(s);
	if (!report.in_class)
		throw ClassBViolation(report.violations.front());
	return dispatch(s, params, p, r, options);
}

CheckResult checksat(const Formula& s, const Rational& r, const SolverOptions& options)
{
	return checksat(s, {}, RatBox(), r, options);
}

} // namespace qd
