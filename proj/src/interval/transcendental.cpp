#include "qdecide/interval.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

// Fixed-point kernels: a value v is carried as an integer S with
// |v * 2^W - S| <= err, where W is the working bit count. Every truncating
// division contributes at most one unit to err; the bounds below are
// deliberately loose.

namespace qd::transcendental {

namespace {

struct Fixed {
	Integer sum;
	unsigned long err;
};

Integer shifted(const Integer& x, unsigned long bits)
{
	Integer out;
	mpz_mul_2exp(out.get_mpz_t(), x.get_mpz_t(), bits);
	return out;
}

Integer truncate_shift(const Integer& x, unsigned long bits)
{
	Integer out;
	mpz_tdiv_q_2exp(out.get_mpz_t(), x.get_mpz_t(), bits);
	return out;
}

Integer truncate_div(const Integer& x, const Integer& d)
{
	Integer out;
	mpz_tdiv_q(out.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
	return out;
}

Rational scaled(const Integer& s, unsigned long w)
{
	Rational q(s);
	mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), w);
	return q;
}

RatInterval from_fixed(const Fixed& f, unsigned long w)
{
	return {scaled(f.sum - f.err, w), scaled(f.sum + f.err, w)};
}

// sin(a / 2^w) for |a / 2^w| <= 1.
Fixed sin_kernel(const Integer& a, unsigned long w)
{
	Integer a2 = a * a;
	Integer term = a;
	Integer sum = term;
	unsigned long j = 0;
	while (abs(term) > 1) {
		++j;
		term = truncate_shift(term * a2, 2 * w);
		term = -truncate_div(term, Integer((2 * j) * (2 * j + 1)));
		sum += term;
	}
	// per-term error <= 3, tail <= |t_j| <= 4
	return {sum, 3 * (j + 1) + 4};
}

// cos(a / 2^w) for |a / 2^w| <= 1.
Fixed cos_kernel(const Integer& a, unsigned long w)
{
	Integer a2 = a * a;
	Integer term = shifted(Integer(1), w);
	Integer sum = term;
	unsigned long j = 0;
	while (abs(term) > 1) {
		++j;
		term = truncate_shift(term * a2, 2 * w);
		term = -truncate_div(term, Integer((2 * j - 1) * (2 * j)));
		sum += term;
	}
	return {sum, 4 * (j + 1) + 5};
}

// exp(a / 2^w) for |a / 2^w| <= 1/2.
Fixed exp_kernel(const Integer& a, unsigned long w)
{
	Integer term = shifted(Integer(1), w);
	Integer sum = term;
	unsigned long j = 0;
	while (abs(term) > 1) {
		++j;
		term = truncate_div(term * a, shifted(Integer(j), w));
		sum += term;
	}
	return {sum, 2 * (j + 1) + 3};
}

// atan(1/k) * 2^w
Fixed atan_inverse(unsigned long k, unsigned long w)
{
	Integer k2(k * k);
	Integer power = truncate_div(shifted(Integer(1), w), Integer(k));
	Integer sum;
	unsigned long j = 0;
	while (power != 0) {
		Integer term = truncate_div(power, Integer(2 * j + 1));
		sum += (j % 2 == 0) ? term : Integer(-term);
		power = truncate_div(power, k2);
		++j;
	}
	return {sum, 3 * (j + 1) + 3};
}

RatInterval round_out(const RatInterval& x, unsigned long bits)
{
	return {floor_dyadic(x.lo(), bits), ceil_dyadic(x.hi(), bits)};
}

RatInterval clamp_unit(const RatInterval& x)
{
	return {max(x.lo(), Rational(-1)), min(x.hi(), Rational(1))};
}

RatInterval compute_pi(unsigned long bits)
{
	unsigned long w = bits + 16;
	Fixed a5 = atan_inverse(5, w);
	Fixed a239 = atan_inverse(239, w);
	Fixed pi{16 * a5.sum - 4 * a239.sum, 16 * a5.err + 4 * a239.err};
	return round_out(from_fixed(pi, w), bits);
}

unsigned long bit_length(long v)
{
	unsigned long n = 0;
	for (unsigned long u = static_cast<unsigned long>(v < 0 ? -v : v); u; u >>= 1)
		++n;
	return n;
}

// Lower/upper bounds on sin or cos of the reduced interval [lo, hi] * 2^-w,
// which lies inside [-1, 1] where sin is increasing and cos is even and
// decreasing in |y|.
RatInterval reduced_sin(const Integer& lo, const Integer& hi, unsigned long w)
{
	Fixed l = sin_kernel(lo, w);
	Fixed h = lo == hi ? l : sin_kernel(hi, w);
	return {scaled(l.sum - l.err, w), scaled(h.sum + h.err, w)};
}

RatInterval reduced_cos(const Integer& lo, const Integer& hi, unsigned long w)
{
	Fixed l = cos_kernel(lo, w);
	if (lo == hi)
		return from_fixed(l, w);
	Fixed h = cos_kernel(hi, w);
	RatInterval at_lo = from_fixed(l, w);
	RatInterval at_hi = from_fixed(h, w);
	if (sgn(lo) >= 0)
		return {at_hi.lo(), at_lo.hi()};
	if (sgn(hi) <= 0)
		return {at_lo.lo(), at_hi.hi()};
	return {min(at_lo.lo(), at_hi.lo()), Rational(1)};
}

enum class Trig { Sin, Cos };

// Rounds a transcendental value down and up onto the grid 2^-p. `raw(w)`
// encloses the value with working precision w; w grows until both roundings
// are determined, which makes the result a monotone function of the value.
template <class Raw>
RatInterval directed(Raw&& raw, unsigned long p)
{
	for (unsigned long extra = 16; extra <= 4096; extra *= 2) {
		RatInterval e = raw(p + extra);
		Rational lo = floor_dyadic(e.lo(), p);
		Rational hi = ceil_dyadic(e.hi(), p);
		if (lo == floor_dyadic(e.hi(), p) && hi == ceil_dyadic(e.lo(), p))
			return {lo, hi};
	}
	return round_out(raw(p + 8192), p);
}

// sin or cos at a nonzero rational point via reduction by multiples of pi/2.
RatInterval trig_raw(const Rational& x, unsigned long w, Trig which)
{
	double approx = x.get_d();
	long k = std::lround(approx / (std::numbers::pi / 2));

	Integer lo;
	Integer hi;
	if (k == 0) {
		lo = floor_scaled(x, w);
		hi = ceil_scaled(x, w);
	} else {
		RatInterval half_pi = pi(Precision(static_cast<unsigned>(w + bit_length(k) + 4)));
		Rational k_half(k, 2);
		RatInterval shift = RatInterval(k_half) * half_pi;
		RatInterval y = RatInterval(x) - shift;
		lo = floor_scaled(y.lo(), w);
		hi = ceil_scaled(y.hi(), w);
	}
	Integer one = shifted(Integer(1), w);
	if (abs(lo) > one || abs(hi) > one)
		return {Rational(-1), Rational(1)};

	long quadrant = ((k % 4) + 4) % 4;
	if (which == Trig::Cos)
		quadrant = (quadrant + 1) % 4; // cos(x) = sin(x + pi/2)
	switch (quadrant) {
	case 0:
		return reduced_sin(lo, hi, w);
	case 1:
		return reduced_cos(lo, hi, w);
	case 2:
		return -reduced_sin(lo, hi, w);
	default:
		return -reduced_cos(lo, hi, w);
	}
}

RatInterval trig_point(const Rational& x, Precision prec, Trig which)
{
	if (sgn(x) == 0)
		return which == Trig::Sin ? RatInterval(Rational(0)) : RatInterval(Rational(1));
	double approx = x.get_d();
	if (!std::isfinite(approx) || std::fabs(approx) > 1e12)
		return {Rational(-1), Rational(1)};
	return clamp_unit(directed([&](unsigned long w) { return trig_raw(x, w, which); }, prec.bits() + 2));
}

// Does c * pi (for some c = offset + 2j) possibly fall inside x?
bool may_contain_multiple(const RatInterval& x, const Rational& offset, const RatInterval& pi_encl)
{
	double lo = x.lo().get_d() / std::numbers::pi;
	double hi = x.hi().get_d() / std::numbers::pi;
	double off = offset.get_d();
	long j0 = static_cast<long>(std::floor((lo - off) / 2)) - 1;
	long j1 = static_cast<long>(std::ceil((hi - off) / 2)) + 1;
	for (long j = j0; j <= j1; ++j) {
		Rational c = offset + 2 * j;
		if ((RatInterval(c) * pi_encl).intersects(x))
			return true;
	}
	return false;
}

RatInterval trig(const RatInterval& x, Precision prec, Trig which)
{
	if (x.is_point())
		return trig_point(x.lo(), prec, which);
	if (x.width() >= 7)
		return {Rational(-1), Rational(1)};
	RatInterval out = hull(trig_point(x.lo(), prec, which), trig_point(x.hi(), prec, which));
	RatInterval pi_encl = pi(Precision(prec.bits() + 8));
	// maxima at (1/2 + 2j) pi for sin, 2j pi for cos; minima one pi later
	Rational max_offset = which == Trig::Sin ? Rational(1, 2) : Rational(0);
	Rational min_offset = max_offset + 1;
	Rational lo = out.lo();
	Rational hi = out.hi();
	if (may_contain_multiple(x, max_offset, pi_encl))
		hi = 1;
	if (may_contain_multiple(x, min_offset, pi_encl))
		lo = -1;
	return {lo, hi};
}

RatInterval exp_raw(const Rational& x, unsigned long bits)
{
	// reduce to |y| <= 1/2 with y = x / 2^s
	unsigned long s = 0;
	Rational ax = abs(x);
	if (ax > Rational(1, 2))
		s = static_cast<unsigned long>(ceil_log2(ax) + 1);
	Rational y = x;
	mpq_div_2exp(y.get_mpq_t(), y.get_mpq_t(), s);

	// log2(e) < 1.45 bounds the bits needed above the binary point
	unsigned long magnitude_bits = sgn(x) > 0 ? static_cast<unsigned long>(x.get_d() * 1.45) + 2 : 0;
	unsigned long w = bits + s + magnitude_bits + 4;
	Integer a_lo = floor_scaled(y, w);
	Integer a_hi = ceil_scaled(y, w);
	Fixed l = exp_kernel(a_lo, w);
	Fixed h = a_lo == a_hi ? l : exp_kernel(a_hi, w);
	Integer lo = l.sum - l.err;
	Integer hi = h.sum + h.err;
	for (unsigned long i = 0; i < s; ++i) {
		Integer lo2 = lo * lo;
		Integer hi2 = hi * hi;
		mpz_fdiv_q_2exp(lo.get_mpz_t(), lo2.get_mpz_t(), w);
		mpz_cdiv_q_2exp(hi.get_mpz_t(), hi2.get_mpz_t(), w);
	}
	if (sgn(lo) < 0)
		lo = 0;
	return {scaled(lo, w), scaled(hi, w)};
}

RatInterval exp_point(const Rational& x, Precision prec)
{
	if (sgn(x) == 0)
		return RatInterval(Rational(1));
	if (x > 100000)
		throw DomainError("exp argument too large");
	return directed([&](unsigned long w) { return exp_raw(x, w); }, prec.bits() + 2);
}

} // namespace

RatInterval pi(Precision prec)
{
	static std::mutex mutex;
	static std::map<unsigned long, RatInterval> cache;
	// cache on 32-bit steps; a tighter enclosure is always acceptable
	unsigned long bits = ((prec.bits() + 2 + 31) / 32) * 32;
	std::lock_guard lock(mutex);
	auto it = cache.find(bits);
	if (it == cache.end())
		it = cache.emplace(bits, compute_pi(bits)).first;
	return it->second;
}

RatInterval exp(const RatInterval& x, Precision prec)
{
	RatInterval lo = exp_point(x.lo(), prec);
	if (x.is_point())
		return lo;
	RatInterval hi = exp_point(x.hi(), prec);
	return {lo.lo(), hi.hi()};
}

RatInterval sin(const RatInterval& x, Precision prec)
{
	return trig(x, prec, Trig::Sin);
}

RatInterval cos(const RatInterval& x, Precision prec)
{
	return trig(x, prec, Trig::Cos);
}

RatInterval sqrt(const RatInterval& x, Precision prec)
{
	if (sgn(x.lo()) < 0)
		throw DomainError("square root of an interval with negative values");
	unsigned long w = prec.bits() + 2;
	Integer lo_scaled = floor_scaled(x.lo(), 2 * w);
	Integer lo_root;
	mpz_sqrt(lo_root.get_mpz_t(), lo_scaled.get_mpz_t());
	Integer hi_scaled = ceil_scaled(x.hi(), 2 * w);
	Integer hi_root;
	mpz_sqrt(hi_root.get_mpz_t(), hi_scaled.get_mpz_t());
	if (hi_root * hi_root != hi_scaled)
		hi_root += 1;
	return {scaled(lo_root, w), scaled(hi_root, w)};
}

} // namespace qd::transcendental
