#include "qdecide/formula.hpp"

#include <sstream>

namespace qd {

namespace {

// Binding strength of the printed form; operands of weaker shape get parentheses.
int term_level(const Term& t)
{
	switch (t.kind()) {
	case TermKind::Add:
	case TermKind::Subtract:
		return 1;
	case TermKind::Multiply:
	case TermKind::Divide:
		return 2;
	case TermKind::Negate:
		return 3;
	case TermKind::Power:
		return 4;
	default:
		return 5;
	}
}

std::string rational_text(const Rational& q)
{
	std::string s = q.get_num().get_str();
	if (q.get_den() != 1)
		s += "/" + q.get_den().get_str();
	return s;
}

void print(std::ostream& os, const Term& t);

void print_at(std::ostream& os, const Term& t, int min_level)
{
	if (term_level(t) < min_level) {
		os << '(';
		print(os, t);
		os << ')';
	} else {
		print(os, t);
	}
}

void print(std::ostream& os, const Term& t)
{
	switch (t.kind()) {
	case TermKind::Constant:
		if (t.value() >= 0 && t.value().get_den() == 1)
			os << t.value().get_num().get_str();
		else
			os << '(' << rational_text(t.value()) << ')';
		return;
	case TermKind::Pi:
		os << "pi";
		return;
	case TermKind::Variable:
		os << t.name();
		return;
	case TermKind::Negate:
		os << '-';
		print_at(os, t.operand(0), 3);
		return;
	case TermKind::Add:
		print_at(os, t.operand(0), 1);
		os << " + ";
		print_at(os, t.operand(1), 2);
		return;
	case TermKind::Subtract:
		print_at(os, t.operand(0), 1);
		os << " - ";
		print_at(os, t.operand(1), 2);
		return;
	case TermKind::Multiply:
		print_at(os, t.operand(0), 2);
		os << '*';
		print_at(os, t.operand(1), 3);
		return;
	case TermKind::Divide:
		print_at(os, t.operand(0), 2);
		os << '/';
		print_at(os, t.operand(1), 3);
		return;
	case TermKind::Power:
		print_at(os, t.operand(0), 5);
		os << '^' << t.exponent();
		return;
	case TermKind::Exp:
	case TermKind::Sin:
	case TermKind::Cos:
	case TermKind::Sqrt: {
		static const char* const names[] = {"exp", "sin", "cos", "sqrt"};
		os << names[static_cast<int>(t.kind()) - static_cast<int>(TermKind::Exp)] << '(';
		print(os, t.operand(0));
		os << ')';
		return;
	}
	}
}

int formula_level(const Formula& f)
{
	switch (f.kind()) {
	case FormulaKind::Exists:
	case FormulaKind::ForAll:
		return 0;
	case FormulaKind::Or:
		return 1;
	case FormulaKind::And:
		return 2;
	default:
		return 3;
	}
}

void print(std::ostream& os, const Formula& f);

void print_at(std::ostream& os, const Formula& f, int min_level)
{
	if (formula_level(f) < min_level) {
		os << '(';
		print(os, f);
		os << ')';
	} else {
		print(os, f);
	}
}

void print_binders(std::ostream& os, const Formula& f)
{
	for (std::size_t i = 0; i < f.variables().size(); ++i) {
		if (i)
			os << ", ";
		const auto& side = f.bounds()[i];
		os << f.variables()[i] << " in [" << rational_text(side.lo()) << ", " << rational_text(side.hi()) << ']';
	}
	os << " . ";
}

void print(std::ostream& os, const Formula& f)
{
	switch (f.kind()) {
	case FormulaKind::Atom:
		print(os, f.atom().lhs);
		os << (f.atom().relation == Relation::Eq ? " = " : " >= ");
		print(os, f.atom().rhs);
		return;
	case FormulaKind::Not:
		os << "not ";
		print_at(os, f.operands()[0], 3);
		return;
	case FormulaKind::And:
		print_at(os, f.operands()[0], 2);
		os << " and ";
		print_at(os, f.operands()[1], 3);
		return;
	case FormulaKind::Or:
		print_at(os, f.operands()[0], 1);
		os << " or ";
		print_at(os, f.operands()[1], 2);
		return;
	case FormulaKind::Exists:
		os << "exists ";
		print_binders(os, f);
		print_at(os, f.body(), f.body().kind() == FormulaKind::Exists ? 1 : 0);
		return;
	case FormulaKind::ForAll:
		os << "forall ";
		print_binders(os, f);
		print(os, f.body());
		return;
	}
}

} // namespace

std::string to_string(const Term& t)
{
	std::ostringstream os;
	print(os, t);
	return os.str();
}

std::string to_string(const Formula& f)
{
	std::ostringstream os;
	print(os, f);
	return os.str();
}

} // namespace qd
