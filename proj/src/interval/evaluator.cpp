#include "qdecide/interval.hpp"

#include <algorithm>

namespace qd {

namespace {

void compile(const Term& t, const Scope& scope, std::vector<Evaluator::Instr>& code, std::vector<Rational>& constants)
{
	for (const auto& a : t.operands())
		compile(a, scope, code, constants);
	Evaluator::Instr in{t.kind()};
	switch (t.kind()) {
	case TermKind::Constant:
		in.index = static_cast<std::uint32_t>(constants.size());
		constants.push_back(t.value());
		break;
	case TermKind::Variable: {
		auto it = std::ranges::find(scope, t.name());
		if (it == scope.end())
			throw std::invalid_argument("variable '" + t.name() + "' is not in scope");
		in.index = static_cast<std::uint32_t>(it - scope.begin());
		break;
	}
	case TermKind::Power:
		in.exponent = t.exponent();
		break;
	default:
		break;
	}
	code.push_back(in);
}

} // namespace

Evaluator::Evaluator(std::span<const Term> terms, const Scope& scope) : arity_(scope.size())
{
	programs_.reserve(terms.size());
	for (const auto& t : terms) {
		std::vector<Instr> code;
		compile(t, scope, code, constants_);
		programs_.push_back(std::move(code));
	}
}

RatInterval Evaluator::eval(std::size_t component, const RatBox& box, Precision prec) const
{
	if (box.dimension() != arity_)
		throw std::invalid_argument("box dimension does not match the evaluation scope");
	std::vector<RatInterval> stack;
	stack.reserve(8);
	auto pop = [&stack] {
		RatInterval v = std::move(stack.back());
		stack.pop_back();
		return v;
	};
	for (const auto& in : programs_.at(component)) {
		switch (in.op) {
		case TermKind::Constant:
			stack.emplace_back(constants_[in.index]);
			break;
		case TermKind::Pi:
			stack.push_back(transcendental::pi(prec));
			break;
		case TermKind::Variable:
			stack.push_back(box[in.index]);
			break;
		case TermKind::Negate:
			stack.back() = -stack.back();
			break;
		case TermKind::Add: {
			auto b = pop();
			stack.back() = stack.back() + b;
			break;
		}
		case TermKind::Subtract: {
			auto b = pop();
			stack.back() = stack.back() - b;
			break;
		}
		case TermKind::Multiply: {
			auto b = pop();
			stack.back() = stack.back() * b;
			break;
		}
		case TermKind::Divide: {
			auto b = pop();
			stack.back() = stack.back() / b;
			break;
		}
		case TermKind::Power:
			stack.back() = pow(stack.back(), in.exponent);
			break;
		case TermKind::Exp:
			stack.back() = transcendental::exp(stack.back(), prec);
			break;
		case TermKind::Sin:
			stack.back() = transcendental::sin(stack.back(), prec);
			break;
		case TermKind::Cos:
			stack.back() = transcendental::cos(stack.back(), prec);
			break;
		case TermKind::Sqrt:
			stack.back() = transcendental::sqrt(stack.back(), prec);
			break;
		}
	}
	return stack.back();
}

RatBox Evaluator::eval(const RatBox& box, Precision prec) const
{
	std::vector<RatInterval> out;
	out.reserve(programs_.size());
	for (std::size_t i = 0; i < programs_.size(); ++i)
		out.push_back(eval(i, box, prec));
	return RatBox(std::move(out));
}

RatInterval eval_term(const Term& t, const Scope& scope, const RatBox& box, Precision prec)
{
	return Evaluator(std::span(&t, 1), scope).eval(0, box, prec);
}

RatInterval eval_term(const Term& t, const RatBox& box, Precision prec)
{
	return eval_term(t, variables(t), box, prec);
}

RatBox eval_vector(std::span<const Term> ts, const Scope& scope, const RatBox& box, Precision prec)
{
	return Evaluator(ts, scope).eval(box, prec);
}

bool excludes_zero(std::span<const Term> ts, const Scope& scope, const RatBox& box, Precision prec)
{
	return excludes_zero(eval_vector(ts, scope, box, prec));
}

Band ineq_band(std::span<const Term> ts, const Scope& scope, const RatBox& box, Precision prec)
{
	return ineq_band(eval_vector(ts, scope, box, prec));
}

} // namespace qd
