#include "qdecide/term.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qd {

struct Term::Node {
	TermKind kind;
	Rational value;
	std::string name;
	unsigned exponent = 0;
	std::vector<Term> args;
	bool polynomial = true;
	bool guarded = false;
};

Term::Term() : Term(constant(Rational(0))) {}

Term::Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

namespace {

constexpr bool kind_is_polynomial(TermKind k)
{
	switch (k) {
	case TermKind::Pi:
	case TermKind::Divide:
	case TermKind::Exp:
	case TermKind::Sin:
	case TermKind::Cos:
	case TermKind::Sqrt:
		return false;
	default:
		return true;
	}
}

} // namespace

Term Term::make(TermKind kind, std::vector<Term> args, unsigned exponent)
{
	auto node = std::make_shared<Node>();
	node->kind = kind;
	node->exponent = exponent;
	node->polynomial = kind_is_polynomial(kind);
	node->guarded = kind == TermKind::Divide || kind == TermKind::Sqrt;
	for (const auto& a : args) {
		node->polynomial = node->polynomial && a.is_polynomial();
		node->guarded = node->guarded || a.has_guarded_ops();
	}
	node->args = std::move(args);
	return Term(std::move(node));
}

Term Term::constant(Rational value)
{
	auto node = std::make_shared<Node>();
	node->kind = TermKind::Constant;
	value.canonicalize();
	node->value = std::move(value);
	return Term(std::move(node));
}

Term Term::pi()
{
	auto node = std::make_shared<Node>();
	node->kind = TermKind::Pi;
	node->polynomial = false;
	return Term(std::move(node));
}

Term Term::variable(std::string name)
{
	auto node = std::make_shared<Node>();
	node->kind = TermKind::Variable;
	node->name = std::move(name);
	return Term(std::move(node));
}

Term Term::negate(Term operand)
{
	if (operand.kind() == TermKind::Constant)
		return constant(-operand.value());
	return make(TermKind::Negate, {std::move(operand)});
}

Term Term::add(Term lhs, Term rhs)
{
	return make(TermKind::Add, {std::move(lhs), std::move(rhs)});
}

Term Term::subtract(Term lhs, Term rhs)
{
	return make(TermKind::Subtract, {std::move(lhs), std::move(rhs)});
}

Term Term::multiply(Term lhs, Term rhs)
{
	return make(TermKind::Multiply, {std::move(lhs), std::move(rhs)});
}

Term Term::divide(Term lhs, Term rhs)
{
	if (lhs.kind() == TermKind::Constant && rhs.kind() == TermKind::Constant && sgn(rhs.value()) != 0)
		return constant(lhs.value() / rhs.value());
	return make(TermKind::Divide, {std::move(lhs), std::move(rhs)});
}

Term Term::power(Term base, unsigned exponent)
{
	return make(TermKind::Power, {std::move(base)}, exponent);
}

Term Term::exp(Term operand)
{
	return make(TermKind::Exp, {std::move(operand)});
}

Term Term::sin(Term operand)
{
	return make(TermKind::Sin, {std::move(operand)});
}

Term Term::cos(Term operand)
{
	return make(TermKind::Cos, {std::move(operand)});
}

Term Term::sqrt(Term operand)
{
	return make(TermKind::Sqrt, {std::move(operand)});
}

TermKind Term::kind() const { return node_->kind; }
const Rational& Term::value() const { return node_->value; }
const std::string& Term::name() const { return node_->name; }
unsigned Term::exponent() const { return node_->exponent; }
std::span<const Term> Term::operands() const { return node_->args; }
bool Term::is_polynomial() const { return node_->polynomial; }
bool Term::has_guarded_ops() const { return node_->guarded; }

bool operator==(const Term& a, const Term& b)
{
	if (a.node_ == b.node_)
		return true;
	if (a.kind() != b.kind())
		return false;
	switch (a.kind()) {
	case TermKind::Constant:
		return a.value() == b.value();
	case TermKind::Pi:
		return true;
	case TermKind::Variable:
		return a.name() == b.name();
	case TermKind::Power:
		if (a.exponent() != b.exponent())
			return false;
		break;
	default:
		break;
	}
	return std::ranges::equal(a.operands(), b.operands());
}

Term operator-(const Term& t) { return Term::negate(t); }
Term operator+(const Term& a, const Term& b) { return Term::add(a, b); }
Term operator-(const Term& a, const Term& b) { return Term::subtract(a, b); }
Term operator*(const Term& a, const Term& b) { return Term::multiply(a, b); }
Term operator/(const Term& a, const Term& b) { return Term::divide(a, b); }

void collect_variables(const Term& t, std::vector<std::string>& out)
{
	if (t.kind() == TermKind::Variable) {
		if (std::ranges::find(out, t.name()) == out.end())
			out.push_back(t.name());
		return;
	}
	for (const auto& a : t.operands())
		collect_variables(a, out);
}

std::vector<std::string> variables(const Term& t)
{
	std::vector<std::string> out;
	collect_variables(t, out);
	return out;
}

Term substitute(const Term& t, const std::map<std::string, Term>& replacement)
{
	switch (t.kind()) {
	case TermKind::Constant:
	case TermKind::Pi:
		return t;
	case TermKind::Variable: {
		auto it = replacement.find(t.name());
		return it == replacement.end() ? t : it->second;
	}
	case TermKind::Negate:
		return Term::negate(substitute(t.operand(0), replacement));
	case TermKind::Add:
		return Term::add(substitute(t.operand(0), replacement), substitute(t.operand(1), replacement));
	case TermKind::Subtract:
		return Term::subtract(substitute(t.operand(0), replacement), substitute(t.operand(1), replacement));
	case TermKind::Multiply:
		return Term::multiply(substitute(t.operand(0), replacement), substitute(t.operand(1), replacement));
	case TermKind::Divide:
		return Term::divide(substitute(t.operand(0), replacement), substitute(t.operand(1), replacement));
	case TermKind::Power:
		return Term::power(substitute(t.operand(0), replacement), t.exponent());
	case TermKind::Exp:
		return Term::exp(substitute(t.operand(0), replacement));
	case TermKind::Sin:
		return Term::sin(substitute(t.operand(0), replacement));
	case TermKind::Cos:
		return Term::cos(substitute(t.operand(0), replacement));
	case TermKind::Sqrt:
		return Term::sqrt(substitute(t.operand(0), replacement));
	}
	throw std::logic_error("unhandled term kind");
}

double evaluate_approx(const Term& t, const Scope& scope, std::span<const double> point)
{
	auto arg = [&](std::size_t i) { return evaluate_approx(t.operand(i), scope, point); };
	switch (t.kind()) {
	case TermKind::Constant:
		return t.value().get_d();
	case TermKind::Pi:
		return std::numbers::pi;
	case TermKind::Variable: {
		auto it = std::ranges::find(scope, t.name());
		if (it == scope.end())
			throw std::out_of_range("variable '" + t.name() + "' not in scope");
		return point[static_cast<std::size_t>(it - scope.begin())];
	}
	case TermKind::Negate:
		return -arg(0);
	case TermKind::Add:
		return arg(0) + arg(1);
	case TermKind::Subtract:
		return arg(0) - arg(1);
	case TermKind::Multiply:
		return arg(0) * arg(1);
	case TermKind::Divide:
		return arg(0) / arg(1);
	case TermKind::Power:
		return std::pow(arg(0), static_cast<double>(t.exponent()));
	case TermKind::Exp:
		return std::exp(arg(0));
	case TermKind::Sin:
		return std::sin(arg(0));
	case TermKind::Cos:
		return std::cos(arg(0));
	case TermKind::Sqrt:
		return std::sqrt(arg(0));
	}
	throw std::logic_error("unhandled term kind");
}

} // namespace qd
