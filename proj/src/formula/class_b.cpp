#include "qdecide/formula.hpp"

namespace qd {

namespace {

void walk(const Formula& f, ClassBReport& report)
{
	auto violate = [&](std::string msg) {
		report.in_class = false;
		report.violations.push_back(std::move(msg));
	};
	switch (f.kind()) {
	case FormulaKind::Atom:
		violate("atom outside an existential block: " + to_string(f));
		return;
	case FormulaKind::Not:
		violate("negation is not allowed: " + to_string(f));
		return;
	case FormulaKind::And:
	case FormulaKind::Or:
		walk(f.operands()[0], report);
		walk(f.operands()[1], report);
		return;
	case FormulaKind::ForAll:
		walk(f.body(), report);
		return;
	case FormulaKind::Exists: {
		auto atoms = conjunction_atoms(f.body());
		if (!atoms) {
			violate("existential body must be a conjunction of equations and inequalities: " + to_string(f.body()));
			return;
		}
		ClassBReport::Block block;
		block.variables = f.variables();
		block.m = f.variables().size();
		for (const auto& a : *atoms)
			(a.relation == Relation::Eq ? block.n : block.k) += 1;
		if (block.n != 0 && block.n < block.m)
			violate("existential block over " + std::to_string(block.m) + " variables has only " +
			        std::to_string(block.n) + " equation(s); need none or at least as many as variables");
		report.blocks.push_back(std::move(block));
		return;
	}
	}
}

} // namespace

ClassBReport validate_class_b(const Formula& f)
{
	ClassBReport report;
	walk(f, report);
	return report;
}

} // namespace qd
