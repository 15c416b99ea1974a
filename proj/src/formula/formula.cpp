#include "qdecide/formula.hpp"

#include <algorithm>
#include <map>

namespace qd {

Term Atom::normalized() const
{
	if (rhs.kind() == TermKind::Constant && sgn(rhs.value()) == 0)
		return lhs;
	return Term::subtract(lhs, rhs);
}

struct Formula::Node {
	FormulaKind kind;
	std::optional<Atom> atom;
	std::vector<Formula> args;
	std::vector<std::string> vars;
	RatBox bounds;
};

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::atom(Relation rel, Term lhs, Term rhs)
{
	auto n = std::make_shared<Node>();
	n->kind = FormulaKind::Atom;
	n->atom = Atom{rel, std::move(lhs), std::move(rhs)};
	return Formula(std::move(n));
}

Formula Formula::negation(Formula operand)
{
	auto n = std::make_shared<Node>();
	n->kind = FormulaKind::Not;
	n->args.push_back(std::move(operand));
	return Formula(std::move(n));
}

Formula Formula::conjunction(Formula lhs, Formula rhs)
{
	auto n = std::make_shared<Node>();
	n->kind = FormulaKind::And;
	n->args = {std::move(lhs), std::move(rhs)};
	return Formula(std::move(n));
}

Formula Formula::disjunction(Formula lhs, Formula rhs)
{
	auto n = std::make_shared<Node>();
	n->kind = FormulaKind::Or;
	n->args = {std::move(lhs), std::move(rhs)};
	return Formula(std::move(n));
}

Formula Formula::exists(std::vector<std::string> vars, RatBox bounds, Formula body)
{
	if (vars.empty() || vars.size() != bounds.dimension())
		throw std::invalid_argument("exists needs one bound per variable");
	auto n = std::make_shared<Node>();
	n->kind = FormulaKind::Exists;
	n->vars = std::move(vars);
	n->bounds = std::move(bounds);
	n->args.push_back(std::move(body));
	return Formula(std::move(n));
}

Formula Formula::forall(std::string var, RatInterval range, Formula body)
{
	auto n = std::make_shared<Node>();
	n->kind = FormulaKind::ForAll;
	n->vars = {std::move(var)};
	n->bounds = RatBox{std::move(range)};
	n->args.push_back(std::move(body));
	return Formula(std::move(n));
}

FormulaKind Formula::kind() const { return node_->kind; }
const Atom& Formula::atom() const { return node_->atom.value(); }
std::span<const Formula> Formula::operands() const { return node_->args; }
const Formula& Formula::body() const { return node_->args.at(0); }
const std::vector<std::string>& Formula::variables() const { return node_->vars; }
const RatBox& Formula::bounds() const { return node_->bounds; }

bool operator==(const Formula& a, const Formula& b)
{
	if (a.node_ == b.node_)
		return true;
	if (a.kind() != b.kind())
		return false;
	if (a.kind() == FormulaKind::Atom)
		return a.atom() == b.atom();
	if (a.variables() != b.variables() || a.bounds() != b.bounds())
		return false;
	return std::ranges::equal(a.operands(), b.operands());
}

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out)
{
	switch (f.kind()) {
	case FormulaKind::Atom: {
		std::vector<std::string> vs;
		collect_variables(f.atom().lhs, vs);
		collect_variables(f.atom().rhs, vs);
		for (auto& v : vs)
			if (std::ranges::find(bound, v) == bound.end() && std::ranges::find(out, v) == out.end())
				out.push_back(v);
		return;
	}
	case FormulaKind::Exists:
	case FormulaKind::ForAll: {
		auto mark = bound.size();
		bound.insert(bound.end(), f.variables().begin(), f.variables().end());
		collect_free(f.body(), bound, out);
		bound.resize(mark);
		return;
	}
	default:
		for (const auto& g : f.operands())
			collect_free(g, bound, out);
	}
}

bool collect_atoms(const Formula& f, std::vector<Atom>& out)
{
	if (f.kind() == FormulaKind::Atom) {
		out.push_back(f.atom());
		return true;
	}
	if (f.kind() != FormulaKind::And)
		return false;
	return collect_atoms(f.operands()[0], out) && collect_atoms(f.operands()[1], out);
}

Formula substitute(const Formula& f, const std::map<std::string, Term>& repl)
{
	switch (f.kind()) {
	case FormulaKind::Atom:
		return Formula::atom(f.atom().relation, substitute(f.atom().lhs, repl), substitute(f.atom().rhs, repl));
	case FormulaKind::Not:
		return Formula::negation(substitute(f.operands()[0], repl));
	case FormulaKind::And:
		return Formula::conjunction(substitute(f.operands()[0], repl), substitute(f.operands()[1], repl));
	case FormulaKind::Or:
		return Formula::disjunction(substitute(f.operands()[0], repl), substitute(f.operands()[1], repl));
	case FormulaKind::Exists:
	case FormulaKind::ForAll: {
		// bound names shadow the substitution
		auto inner = repl;
		for (const auto& v : f.variables())
			inner.erase(v);
		auto body = substitute(f.body(), inner);
		if (f.kind() == FormulaKind::Exists)
			return Formula::exists(f.variables(), f.bounds(), body);
		return Formula::forall(f.variables()[0], f.bounds()[0], body);
	}
	}
	throw std::logic_error("unhandled formula kind");
}

} // namespace

std::vector<std::string> free_variables(const Formula& f)
{
	std::vector<std::string> bound;
	std::vector<std::string> out;
	collect_free(f, bound, out);
	return out;
}

std::optional<std::vector<Atom>> conjunction_atoms(const Formula& f)
{
	std::vector<Atom> out;
	if (!collect_atoms(f, out))
		return std::nullopt;
	return out;
}

ParamEnv::ParamEnv(std::initializer_list<Entry> entries) : entries_(entries) {}

void ParamEnv::push_back(std::string name, RatInterval value)
{
	entries_.push_back({std::move(name), std::move(value)});
}

RatBox ParamEnv::box() const
{
	std::vector<RatInterval> sides;
	for (const auto& e : entries_)
		sides.push_back(e.value);
	return RatBox(std::move(sides));
}

Scope ParamEnv::names() const
{
	Scope out;
	for (const auto& e : entries_)
		out.push_back(e.name);
	return out;
}

Formula bind(const Formula& f, const ParamEnv& env)
{
	auto free = free_variables(f);
	std::map<std::string, Term> repl;
	for (const auto& e : env.entries()) {
		if (std::ranges::find(free, e.name) == free.end())
			throw std::invalid_argument("variable '" + e.name + "' is not free in the formula");
		if (!e.value.is_point())
			throw std::invalid_argument("binding '" + e.name + "' needs an exact value, not an interval");
		if (!repl.emplace(e.name, Term::constant(e.value.lo())).second)
			throw std::invalid_argument("variable '" + e.name + "' bound twice");
	}
	return substitute(f, repl);
}

} // namespace qd
