#pragma once

#include "qdecide/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace qd {

/// Ordered variable names; position i is coordinate i of an evaluation box.
using Scope = std::vector<std::string>;

enum class TermKind : std::uint8_t {
	Constant,
	Pi,
	Variable,
	Negate,
	Add,
	Subtract,
	Multiply,
	Divide,
	Power, // natural exponent
	Exp,
	Sin,
	Cos,
	Sqrt,
};

/// Immutable expression tree over the fixed symbol set. Copies share nodes.
///
/// The factories fold two shapes so that printed rationals re-parse to the
/// same tree: negation of a constant and division of two constants (with a
/// nonzero divisor) both produce a single constant.
class Term {
public:
	Term();

	static Term constant(Rational value);
	static Term pi();
	static Term variable(std::string name);
	static Term negate(Term operand);
	static Term add(Term lhs, Term rhs);
	static Term subtract(Term lhs, Term rhs);
	static Term multiply(Term lhs, Term rhs);
	static Term divide(Term lhs, Term rhs);
	static Term power(Term base, unsigned exponent);
	static Term exp(Term operand);
	static Term sin(Term operand);
	static Term cos(Term operand);
	static Term sqrt(Term operand);

	TermKind kind() const;
	const Rational& value() const;      // Constant
	const std::string& name() const;    // Variable
	unsigned exponent() const;          // Power
	std::span<const Term> operands() const;
	const Term& operand(std::size_t i) const { return operands()[i]; }

	/// No Pi, Divide, Exp, Sin, Cos or Sqrt anywhere in the tree.
	bool is_polynomial() const;
	/// Contains a Divide or Sqrt node (domain-restricted operations).
	bool has_guarded_ops() const;

	friend bool operator==(const Term& a, const Term& b);
	friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

private:
	struct Node;
	explicit Term(std::shared_ptr<const Node> node);
	static Term make(TermKind kind, std::vector<Term> args, unsigned exponent = 0);
	std::shared_ptr<const Node> node_;
};

Term operator-(const Term& t);
Term operator+(const Term& a, const Term& b);
Term operator-(const Term& a, const Term& b);
Term operator*(const Term& a, const Term& b);
Term operator/(const Term& a, const Term& b);

/// Variables in order of first occurrence (left to right).
std::vector<std::string> variables(const Term& t);
void collect_variables(const Term& t, std::vector<std::string>& out);

/// Parallel substitution of variables by terms.
Term substitute(const Term& t, const std::map<std::string, Term>& replacement);

/// Canonical textual form; parse_term(to_string(t)) == t.
std::string to_string(const Term& t);

/// Approximate double evaluation (used by test oracles, never for decisions).
double evaluate_approx(const Term& t, const Scope& scope, std::span<const double> point);

} // namespace qd
