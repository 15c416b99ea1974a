#include "qdecide/solver.hpp"

namespace qd {

Verdict quasi_decide(const Formula& s, std::size_t budget, const Rational& epsilon, const SolverOptions& options,
                     std::optional<std::chrono::milliseconds> iteration_limit)
{
	if (budget == 0)
		throw std::invalid_argument("budget must be at least 1");
	if (sgn(epsilon) <= 0)
		throw std::invalid_argument("initial epsilon must be positive");
	if (!free_variables(s).empty())
		throw std::invalid_argument("quasi_decide needs a sentence; free variable '" + free_variables(s).front() + "'");
	ClassBReport report = validate_class_b(s);
	if (!report.in_class)
		throw ClassBViolation(report.violations.front());

	Verdict v;
	Rational eps = epsilon;
	for (std::size_t i = 1; i <= budget; ++i, eps /= 2) {
		SolverOptions opts = options;
		auto start = std::chrono::steady_clock::now();
		if (iteration_limit)
			opts.deadline = start + *iteration_limit;
		v.iterations = i;
		v.epsilon = eps;
		CheckResult res;
		try {
			res = checksat(s, {}, RatBox(), eps, opts);
		} catch (const DeadlineExceeded&) {
			v.timed_out = true;
			return v;
		}
		std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
		v.trace.push_back({i, eps, res.value, res.stats, took.count()});
		if (res.value.is_singleton()) {
			v.outcome = res.value.may_be_true() ? Outcome::True : Outcome::False;
			v.certificate = res.value.may_be_true() ? res.true_margin : res.false_separation;
			return v;
		}
	}
	return v;
}

} // namespace qd
