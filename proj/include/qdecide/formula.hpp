#pragma once

#include "qdecide/interval.hpp"
#include "qdecide/term.hpp"

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qd {

enum class Relation { Eq, Geq };

/// lhs = rhs or lhs >= rhs. Both sides are kept: they are the term
/// positions compared by the structural distance.
struct Atom {
	Relation relation;
	Term lhs;
	Term rhs;

	/// lhs - rhs (or lhs alone when rhs is the constant 0).
	Term normalized() const;

	friend bool operator==(const Atom& a, const Atom& b) = default;
};

enum class FormulaKind { Atom, Not, And, Or, Exists, ForAll };

/// Immutable first-order formula over the reals with bounded quantifiers.
///
/// Exists binds an ordered block of variables to a box; ForAll binds a
/// single variable to an interval. Negation is representable so that
/// structural comparisons can see it; the solver rejects it.
class Formula {
public:
	static Formula atom(Relation rel, Term lhs, Term rhs);
	static Formula negation(Formula operand);
	static Formula conjunction(Formula lhs, Formula rhs);
	static Formula disjunction(Formula lhs, Formula rhs);
	static Formula exists(std::vector<std::string> vars, RatBox bounds, Formula body);
	static Formula forall(std::string var, RatInterval range, Formula body);

	FormulaKind kind() const;
	const Atom& atom() const;
	std::span<const Formula> operands() const; // Not: 1, And/Or: 2, quantifiers: body
	const Formula& body() const;
	const std::vector<std::string>& variables() const; // quantifiers
	const RatBox& bounds() const;                      // quantifiers (1-d for ForAll)

	friend bool operator==(const Formula& a, const Formula& b);
	friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

private:
	struct Node;
	explicit Formula(std::shared_ptr<const Node> node);
	std::shared_ptr<const Node> node_;
};

/// Free variables in order of first occurrence.
std::vector<std::string> free_variables(const Formula& f);

/// Atoms of a conjunction tree, or nullopt if anything but And/Atom occurs.
std::optional<std::vector<Atom>> conjunction_atoms(const Formula& f);

std::string to_string(const Formula& f);

// ---------------------------------------------------------------- parsing

class ParseError : public std::runtime_error {
public:
	ParseError(const std::string& message, std::size_t line, std::size_t column);
	std::size_t line() const { return line_; }
	std::size_t column() const { return column_; }

private:
	std::size_t line_;
	std::size_t column_;
};

/// Parse a formula. `parameters` declares the variables allowed to occur
/// free. For sentences, guarded operations (division, sqrt) are checked
/// against the quantifier bounds and rejected with ParseError when their
/// domain cannot be verified.
Formula parse(std::string_view text, const std::vector<std::string>& parameters = {});
Term parse_term(std::string_view text);

/// Throws DomainError naming the first term whose division or square root
/// cannot be verified over the full box of its enclosing quantifiers.
/// `parameter_box` bounds the free variables (in free_variables order).
void check_domains(const Formula& f, const RatBox& parameter_box = {});

// ------------------------------------------------------------- class B

struct ClassBReport {
	struct Block {
		std::vector<std::string> variables;
		std::size_t m = 0; // variables
		std::size_t n = 0; // equations
		std::size_t k = 0; // inequalities
	};
	bool in_class = true;
	std::vector<Block> blocks;
	std::vector<std::string> violations;
};

ClassBReport validate_class_b(const Formula& f);

// ------------------------------------------------------ structure/distance

bool same_structure(const Formula& f, const Formula& g);

struct DistanceEnclosure {
	/// nullopt means the distance is infinite (structures differ).
	std::optional<RatInterval> distance;
	/// Enclosure of max |f_i - g_i| for each term position, in order.
	std::vector<RatInterval> per_term;
};

/// Encloses d(f, g) to within `tolerance` by branch and bound on each term
/// pair. Requires f and g to be sentences.
DistanceEnclosure distance_enclosure(const Formula& f, const Formula& g, const Rational& tolerance);

// ---------------------------------------------------------------- binding

/// Values for free variables, in quantification order. A value is an exact
/// rational (a point interval) or an interval component of a parameter box.
class ParamEnv {
public:
	struct Entry {
		std::string name;
		RatInterval value;
	};

	ParamEnv() = default;
	ParamEnv(std::initializer_list<Entry> entries);

	void push_back(std::string name, RatInterval value);
	std::span<const Entry> entries() const { return entries_; }
	std::size_t size() const { return entries_.size(); }
	RatBox box() const;
	Scope names() const;

private:
	std::vector<Entry> entries_;
};

/// Substitute exact constants for free variables (parallel substitution).
/// Throws std::invalid_argument when a name is not free in f or a value is
/// not a point.
Formula bind(const Formula& f, const ParamEnv& env);

} // namespace qd
