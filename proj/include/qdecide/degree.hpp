#pragma once

#include "qdecide/geometry.hpp"
#include "qdecide/interval.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qd {

/// f : R^m -> R^m given by terms over `scope`, with any parameters already
/// replaced by constants.
struct PointMap {
	std::vector<Term> components;
	Scope scope;
};

struct DegreeStats {
	std::size_t subdivisions = 0; // budget units spent
	std::size_t pieces = 0;       // certified boundary pieces, all levels
	std::size_t levels = 0;
};

struct DegreeResult {
	long value = 0;
	Rational boundary_min_lb; // lower bound on min over the boundary of max_i |f_i|
	DegreeStats stats;
};

/// A boundary piece on which s * f_i > 0 is certified for every listed (i, s).
struct CertifiedPiece {
	OrientedCell cell;
	std::vector<int> signs; // per component: +1, -1 or 0 (not certified)
	Rational bound;         // max over components of the enclosure mignitude
	unsigned depth = 0;
};

using SignedFaceCover = std::vector<CertifiedPiece>;

struct DegreeOutcome {
	std::optional<DegreeResult> result;
	DegreeStats stats;
	std::string failure;

	explicit operator bool() const { return result.has_value(); }
};

/// Subdivides the pieces of `chain` until each has a certified nonzero
/// component among `components` (indices into the map). Returns nullopt
/// when `budget` subdivisions do not suffice or a point cannot be certified.
std::optional<SignedFaceCover> certify(const Evaluator& ev, std::span<const std::size_t> components, const Chain& chain,
                                       Precision prec, std::size_t& budget);

/// deg(f, interior of A, 0) for a full-dimensional complex whose boundary
/// avoids the zeros of f; FAILURE when certification exceeds the budget.
DegreeOutcome degree(const PointMap& f, const Grid& grid, const BoxComplex& complex, Precision prec,
                     std::size_t budget);

/// Same for an m-chain of m-cells in R^m.
DegreeOutcome degree(const PointMap& f, const Chain& region, Precision prec, std::size_t budget);

/// Same for a single box.
DegreeOutcome degree(const PointMap& f, const RatBox& box, Precision prec, std::size_t budget);

/// Winding number of (f_1, f_2) along the oriented boundary, by sampling in
/// double precision. Test oracle only. Throws std::runtime_error when a
/// sample comes close to a zero of f.
long winding_oracle_2d(const PointMap& f, const Grid& grid, const BoxComplex& complex, std::size_t samples);
long winding_oracle_2d(const PointMap& f, const RatBox& box, std::size_t samples);

/// eps such that every eps-perturbation of f keeps a zero in A.
/// Throws std::domain_error for degree 0.
Rational robustness_margin(const DegreeResult& result);

} // namespace qd
