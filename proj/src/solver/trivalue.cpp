#include "qdecide/solver.hpp"

namespace qd {

TriValue lifted_and(TriValue a, TriValue b)
{
	bool t = a.may_be_true() && b.may_be_true();
	bool f = a.may_be_false() || b.may_be_false();
	return t && f ? TriValue::Both() : t ? TriValue::True() : TriValue::False();
}

TriValue lifted_or(TriValue a, TriValue b)
{
	bool t = a.may_be_true() || b.may_be_true();
	bool f = a.may_be_false() && b.may_be_false();
	return t && f ? TriValue::Both() : t ? TriValue::True() : TriValue::False();
}

std::string to_string(TriValue v)
{
	if (!v.is_singleton())
		return "{T,F}";
	return v.may_be_true() ? "{T}" : "{F}";
}

std::string to_string(Outcome o)
{
	switch (o) {
	case Outcome::True:
		return "TRUE";
	case Outcome::False:
		return "FALSE";
	case Outcome::Unknown:
		break;
	}
	return "UNKNOWN";
}

void CheckStats::absorb(const CheckStats& other)
{
	cells += other.cells;
	candidates += other.candidates;
	zero_faces += other.zero_faces;
	complexes += other.complexes;
	removed += other.removed;
	degrees.insert(degrees.end(), other.degrees.begin(), other.degrees.end());
	degree_failures += other.degree_failures;
}

} // namespace qd
