#include "qdecide/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace qd {

std::string to_fraction_string(const Rational& q)
{
	return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s)
{
	if (s.empty())
		return false;
	for (char c : s)
		if (!std::isdigit(static_cast<unsigned char>(c)))
			return false;
	return true;
}

Rational power_of_ten(long e)
{
	Integer p;
	mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
	return e < 0 ? Rational(Integer(1), p) : Rational(p);
}

} // namespace

Rational parse_rational(std::string_view text)
{
	if (text.empty())
		throw std::invalid_argument("empty rational literal");
	bool negative = false;
	if (text.front() == '-' || text.front() == '+') {
		negative = text.front() == '-';
		text.remove_prefix(1);
	}
	Rational value;
	if (auto slash = text.find('/'); slash != std::string_view::npos) {
		auto num = text.substr(0, slash);
		auto den = text.substr(slash + 1);
		if (!all_digits(num) || !all_digits(den))
			throw std::invalid_argument("malformed fraction '" + std::string(text) + "'");
		Integer d{std::string(den)};
		if (d == 0)
			throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
		value = Rational(Integer{std::string(num)}, d);
	} else {
		long exponent = 0;
		if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
			auto exp_text = text.substr(e + 1);
			bool exp_negative = false;
			if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
				exp_negative = exp_text.front() == '-';
				exp_text.remove_prefix(1);
			}
			if (!all_digits(exp_text) || exp_text.size() > 6)
				throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
			exponent = std::stol(std::string(exp_text));
			if (exp_negative)
				exponent = -exponent;
			text = text.substr(0, e);
		}
		auto dot = text.find('.');
		std::string_view whole = text.substr(0, dot);
		std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
		if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
		    (!frac.empty() && !all_digits(frac)) ||
		    (dot != std::string_view::npos && whole.empty() && frac.empty()))
			throw std::invalid_argument("malformed number '" + std::string(text) + "'");
		std::string digits = std::string(whole) + std::string(frac);
		value = Rational(Integer(digits)) * power_of_ten(exponent - static_cast<long>(frac.size()));
	}
	value.canonicalize();
	return negative ? Rational(-value) : value;
}

Rational pow2(long e)
{
	Rational q(1);
	if (e >= 0)
		mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(e));
	else
		mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-e));
	return q;
}

Integer floor_scaled(const Rational& x, unsigned long bits)
{
	Integer n = x.get_num();
	mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), bits);
	Integer out;
	mpz_fdiv_q(out.get_mpz_t(), n.get_mpz_t(), x.get_den_mpz_t());
	return out;
}

Integer ceil_scaled(const Rational& x, unsigned long bits)
{
	Integer n = x.get_num();
	mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), bits);
	Integer out;
	mpz_cdiv_q(out.get_mpz_t(), n.get_mpz_t(), x.get_den_mpz_t());
	return out;
}

Rational floor_dyadic(const Rational& x, unsigned long bits)
{
	Rational q(floor_scaled(x, bits));
	mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), bits);
	return q;
}

Rational ceil_dyadic(const Rational& x, unsigned long bits)
{
	Rational q(ceil_scaled(x, bits));
	mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), bits);
	return q;
}

long ceil_log2(const Rational& x)
{
	if (sgn(x) <= 0)
		throw std::invalid_argument("ceil_log2 of a non-positive value");
	// 2^(bits(num) - bits(den) +- 1) brackets x; settle the remaining step exactly.
	long e = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) -
	         static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2)) - 1;
	while (pow2(e) < x)
		++e;
	while (pow2(e - 1) >= x)
		--e;
	return e;
}

Rational abs(const Rational& q)
{
	return sgn(q) < 0 ? Rational(-q) : q;
}

Rational min(const Rational& a, const Rational& b)
{
	return b < a ? b : a;
}

Rational max(const Rational& a, const Rational& b)
{
	return a < b ? b : a;
}

} // namespace qd
