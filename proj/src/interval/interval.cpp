#include "qdecide/interval.hpp"

#include <algorithm>
#include <ostream>

namespace qd {

RatInterval::RatInterval(Rational point) : lo_(point), hi_(std::move(point)) {}

RatInterval::RatInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi))
{
	if (hi_ < lo_)
		throw std::invalid_argument("interval with lo > hi: [" + to_fraction_string(lo_) + ", " +
		                            to_fraction_string(hi_) + "]");
}

Rational RatInterval::midpoint() const
{
	Rational m = lo_ + hi_;
	mpq_div_2exp(m.get_mpq_t(), m.get_mpq_t(), 1);
	return m;
}

Rational RatInterval::magnitude() const
{
	return max(abs(lo_), abs(hi_));
}

Rational RatInterval::mignitude() const
{
	if (contains_zero())
		return Rational(0);
	return min(abs(lo_), abs(hi_));
}

RatInterval operator-(const RatInterval& a)
{
	return {-a.hi(), -a.lo()};
}

RatInterval operator+(const RatInterval& a, const RatInterval& b)
{
	return {a.lo() + b.lo(), a.hi() + b.hi()};
}

RatInterval operator-(const RatInterval& a, const RatInterval& b)
{
	return {a.lo() - b.hi(), a.hi() - b.lo()};
}

RatInterval operator*(const RatInterval& a, const RatInterval& b)
{
	if (a.is_point() && b.is_point())
		return RatInterval(Rational(a.lo() * b.lo()));
	if (sgn(a.lo()) >= 0 && sgn(b.lo()) >= 0)
		return {a.lo() * b.lo(), a.hi() * b.hi()};
	Rational p[4] = {a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()};
	return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

RatInterval operator/(const RatInterval& a, const RatInterval& b)
{
	if (b.contains_zero())
		throw DomainError("division by an interval containing zero");
	RatInterval inverse(Rational(1 / b.hi()), Rational(1 / b.lo()));
	return a * inverse;
}

namespace {

Rational rpow(const Rational& x, unsigned e)
{
	Rational out;
	mpz_pow_ui(out.get_num_mpz_t(), x.get_num_mpz_t(), e);
	mpz_pow_ui(out.get_den_mpz_t(), x.get_den_mpz_t(), e);
	return out;
}

} // namespace

RatInterval pow(const RatInterval& a, unsigned exponent)
{
	if (exponent == 0)
		return RatInterval(Rational(1));
	Rational lo = rpow(a.lo(), exponent);
	Rational hi = rpow(a.hi(), exponent);
	if (exponent % 2 == 1 || sgn(a.lo()) >= 0)
		return {lo, hi};
	if (sgn(a.hi()) <= 0)
		return {hi, lo};
	return {Rational(0), max(lo, hi)};
}

RatInterval hull(const RatInterval& a, const RatInterval& b)
{
	return {min(a.lo(), b.lo()), max(a.hi(), b.hi())};
}

std::ostream& operator<<(std::ostream& os, const RatInterval& x)
{
	return os << '[' << x.lo() << ", " << x.hi() << ']';
}

RatBox::RatBox(std::vector<RatInterval> sides) : sides_(std::move(sides)) {}

RatBox::RatBox(std::initializer_list<RatInterval> sides) : sides_(sides) {}

Rational RatBox::width() const
{
	Rational w(0);
	for (const auto& s : sides_)
		if (w < s.width())
			w = s.width();
	return w;
}

std::vector<Rational> RatBox::center() const
{
	std::vector<Rational> c;
	c.reserve(sides_.size());
	for (const auto& s : sides_)
		c.push_back(s.midpoint());
	return c;
}

bool RatBox::contains(const RatBox& other) const
{
	if (other.dimension() != dimension())
		return false;
	for (std::size_t i = 0; i < sides_.size(); ++i)
		if (!sides_[i].contains(other.sides_[i]))
			return false;
	return true;
}

bool RatBox::contains_zero() const
{
	return std::ranges::all_of(sides_, [](const RatInterval& s) { return s.contains_zero(); });
}

RatBox RatBox::concat(const RatBox& other) const
{
	std::vector<RatInterval> out = sides_;
	out.insert(out.end(), other.sides_.begin(), other.sides_.end());
	return RatBox(std::move(out));
}

RatBox RatBox::project(std::span<const std::size_t> axes) const
{
	std::vector<RatInterval> out;
	out.reserve(axes.size());
	for (auto a : axes)
		out.push_back(sides_.at(a));
	return RatBox(std::move(out));
}

RatBox RatBox::point(std::span<const Rational> coords)
{
	std::vector<RatInterval> out(coords.begin(), coords.end());
	return RatBox(std::move(out));
}

std::ostream& operator<<(std::ostream& os, const RatBox& b)
{
	if (b.dimension() == 0)
		return os << "{()}";
	for (std::size_t i = 0; i < b.dimension(); ++i)
		os << (i ? " x " : "") << b[i];
	return os;
}

Precision::Precision(unsigned bits) : bits_(bits)
{
	if (bits == 0)
		throw std::invalid_argument("precision must be at least one bit");
}

Precision Precision::for_refinement(const Rational& r)
{
	if (sgn(r) <= 0)
		throw std::invalid_argument("refinement parameter must be positive");
	long bits = std::max(1L, ceil_log2(Rational(8 / r))) + 4;
	return Precision(static_cast<unsigned>(bits));
}

bool excludes_zero(const RatBox& enclosure)
{
	return !enclosure.contains_zero();
}

Band ineq_band(const RatBox& enclosure)
{
	bool all_positive = true;
	for (const auto& s : enclosure.sides()) {
		if (sgn(s.hi()) < 0)
			return Band::DisjointFromNonneg;
		if (sgn(s.lo()) <= 0)
			all_positive = false;
	}
	return all_positive ? Band::AllPositive : Band::Undecided;
}

std::string to_string(Band b)
{
	switch (b) {
	case Band::AllPositive:
		return "ALL_POSITIVE";
	case Band::DisjointFromNonneg:
		return "DISJOINT_FROM_NONNEG";
	case Band::Undecided:
		return "UNDECIDED";
	}
	return "?";
}

} // namespace qd
