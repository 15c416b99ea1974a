#pragma once

#include "qdecide/rational.hpp"
#include "qdecide/term.hpp"

#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qd {

/// Closed interval [lo, hi] with exact rational endpoints; lo <= hi.
class RatInterval {
public:
	RatInterval() = default;
	RatInterval(Rational point); // NOLINT: a point is a degenerate interval
	RatInterval(Rational lo, Rational hi);

	const Rational& lo() const { return lo_; }
	const Rational& hi() const { return hi_; }
	Rational width() const { return hi_ - lo_; }
	Rational midpoint() const;
	bool is_point() const { return lo_ == hi_; }

	bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
	bool contains(const RatInterval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
	bool contains_zero() const { return sgn(lo_) <= 0 && sgn(hi_) >= 0; }
	bool intersects(const RatInterval& other) const { return lo_ <= other.hi_ && other.lo_ <= hi_; }

	/// max |x| over the interval.
	Rational magnitude() const;
	/// min |x| over the interval (0 when it contains 0).
	Rational mignitude() const;

	friend bool operator==(const RatInterval& a, const RatInterval& b) = default;

private:
	Rational lo_{0};
	Rational hi_{0};
};

RatInterval operator-(const RatInterval& a);
RatInterval operator+(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a, const RatInterval& b);
RatInterval operator*(const RatInterval& a, const RatInterval& b);
/// Throws DomainError when the divisor contains zero.
RatInterval operator/(const RatInterval& a, const RatInterval& b);
RatInterval pow(const RatInterval& a, unsigned exponent);
RatInterval hull(const RatInterval& a, const RatInterval& b);
std::ostream& operator<<(std::ostream& os, const RatInterval& x);

/// Product of closed intervals. The 0-dimensional box is the singleton {()}.
class RatBox {
public:
	RatBox() = default;
	explicit RatBox(std::vector<RatInterval> sides);
	RatBox(std::initializer_list<RatInterval> sides);

	std::size_t dimension() const { return sides_.size(); }
	const RatInterval& operator[](std::size_t i) const { return sides_[i]; }
	RatInterval& operator[](std::size_t i) { return sides_[i]; }
	std::span<const RatInterval> sides() const { return sides_; }

	/// Maximum side width; 0 for the 0-dimensional box.
	Rational width() const;
	std::vector<Rational> center() const;
	bool contains(const RatBox& other) const;
	bool contains_zero() const;

	/// Cartesian product that concatenates coordinates.
	RatBox concat(const RatBox& other) const;
	RatBox project(std::span<const std::size_t> axes) const;
	static RatBox point(std::span<const Rational> coords);

	friend bool operator==(const RatBox& a, const RatBox& b) = default;

private:
	std::vector<RatInterval> sides_;
};

std::ostream& operator<<(std::ostream& os, const RatBox& b);

/// Working precision for transcendental enclosures: each transcendental
/// node adds at most 2^-bits of slack to its result.
class Precision {
public:
	explicit Precision(unsigned bits);
	unsigned bits() const { return bits_; }
	Rational slack() const { return pow2(-static_cast<long>(bits_)); }

	/// Smallest precision with slack <= r / 8, plus a few guard bits.
	static Precision for_refinement(const Rational& r);

private:
	unsigned bits_;
};

/// Raised when an operation leaves its domain (sqrt of negatives, division
/// by an interval containing zero).
class DomainError : public std::domain_error {
public:
	using std::domain_error::domain_error;
};

/// Terms compiled against a fixed scope for repeated evaluation.
class Evaluator {
public:
	Evaluator() = default;
	Evaluator(std::span<const Term> terms, const Scope& scope);

	std::size_t size() const { return programs_.size(); }
	std::size_t arity() const { return arity_; }

	RatInterval eval(std::size_t component, const RatBox& box, Precision prec) const;
	RatBox eval(const RatBox& box, Precision prec) const;

	struct Instr {
		TermKind op;
		std::uint32_t index = 0; // variable or constant slot
		unsigned exponent = 0;
	};

private:
	std::vector<std::vector<Instr>> programs_;
	std::vector<Rational> constants_;
	std::size_t arity_ = 0;
};

/// Enclosure of t over B; coordinates of B follow `scope`.
RatInterval eval_term(const Term& t, const Scope& scope, const RatBox& box, Precision prec);
/// Same, with the scope taken as the term's variables in order of first occurrence.
RatInterval eval_term(const Term& t, const RatBox& box, Precision prec);

RatBox eval_vector(std::span<const Term> ts, const Scope& scope, const RatBox& box, Precision prec);

/// Sound: true only when the enclosure box misses the origin.
bool excludes_zero(std::span<const Term> ts, const Scope& scope, const RatBox& box, Precision prec);
bool excludes_zero(const RatBox& enclosure);

enum class Band {
	AllPositive,        // every component enclosure inside (0, inf)
	DisjointFromNonneg, // some component enclosure inside (-inf, 0)
	Undecided,
};

Band ineq_band(std::span<const Term> ts, const Scope& scope, const RatBox& box, Precision prec);
Band ineq_band(const RatBox& enclosure);
std::string to_string(Band b);

/// Enclosures of transcendental constants and functions; every endpoint is
/// rational and the slack added per call is at most 2^-bits.
namespace transcendental {

RatInterval pi(Precision prec);
RatInterval exp(const RatInterval& x, Precision prec);
RatInterval sin(const RatInterval& x, Precision prec);
RatInterval cos(const RatInterval& x, Precision prec);
/// Throws DomainError when x has a negative part.
RatInterval sqrt(const RatInterval& x, Precision prec);

} // namespace transcendental

} // namespace qd
