#pragma once

#include "qdecide/formula.hpp"
#include "qdecide/interval.hpp"

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qd {

/// Nonempty subset of {T, F}.
class TriValue {
public:
	static TriValue True() { return {true, false}; }
	static TriValue False() { return {false, true}; }
	static TriValue Both() { return {true, true}; }

	bool may_be_true() const { return t_; }
	bool may_be_false() const { return f_; }
	bool is_singleton() const { return t_ != f_; }

	friend bool operator==(const TriValue&, const TriValue&) = default;

private:
	TriValue(bool t, bool f) : t_(t), f_(f) {}
	bool t_;
	bool f_;
};

/// {u and v | u in a, v in b}
TriValue lifted_and(TriValue a, TriValue b);
/// {u or v | u in a, v in b}
TriValue lifted_or(TriValue a, TriValue b);
std::string to_string(TriValue v); // "{T}", "{F}", "{T,F}"

class ClassBViolation : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

class DeadlineExceeded : public std::runtime_error {
public:
	DeadlineExceeded() : std::runtime_error("time limit exceeded") {}
};

struct SolverOptions {
	std::size_t workers = 1;
	std::size_t degree_budget = 20000;
	std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct CheckStats {
	std::size_t cells = 0;
	std::size_t candidates = 0; // cells whose f-enclosure contains 0
	std::size_t zero_faces = 0;
	std::size_t complexes = 0;
	std::size_t removed = 0;
	std::vector<long> degrees;
	std::size_t degree_failures = 0;

	void absorb(const CheckStats& other);
};

struct CheckResult {
	TriValue value = TriValue::Both();
	/// {T} at a point parameter box: every perturbation of the terms by less
	/// than this keeps the formula true.
	std::optional<Rational> true_margin;
	/// {F}: smallest per-cell distance of the enclosures from the solution set.
	std::optional<Rational> false_separation;
	CheckStats stats;
};

/// CheckSat. `params` names the free variables of s in quantification order
/// and p bounds them (same order); width(p) <= r is not required.
/// Throws ClassBViolation when s is outside class B.
CheckResult checksat(const Formula& s, const Scope& params, const RatBox& p, const Rational& r,
                     const SolverOptions& options = {});
/// Sentence form: p is the 0-dimensional box.
CheckResult checksat(const Formula& s, const Rational& r, const SolverOptions& options = {});

CheckResult soei(const Formula& block, const Scope& params, const RatBox& p, const Rational& r,
                 const SolverOptions& options = {});
CheckResult univ(const Formula& forall, const Scope& params, const RatBox& p, const Rational& r,
                 const SolverOptions& options = {});
CheckResult conj(const Formula& f, const Scope& params, const RatBox& p, const Rational& r,
                 const SolverOptions& options = {});
CheckResult disj(const Formula& f, const Scope& params, const RatBox& p, const Rational& r,
                 const SolverOptions& options = {});

enum class Outcome { True, False, Unknown };
std::string to_string(Outcome o);

struct IterationRecord {
	std::size_t iteration = 0;
	Rational epsilon;
	TriValue value = TriValue::Both();
	CheckStats stats;
	double seconds = 0;
};

struct Verdict {
	Outcome outcome = Outcome::Unknown;
	std::size_t iterations = 0;
	Rational epsilon; // refinement used by the last iteration
	std::optional<Rational> certificate;
	bool timed_out = false;
	std::vector<IterationRecord> trace;
};

/// Runs checksat with eps, eps/2, eps/4, ... until a singleton or `budget`
/// iterations. `iteration_limit` bounds the wall time of each iteration.
Verdict quasi_decide(const Formula& s, std::size_t budget, const Rational& epsilon = 1,
                     const SolverOptions& options = {},
                     std::optional<std::chrono::milliseconds> iteration_limit = std::nullopt);

} // namespace qd
