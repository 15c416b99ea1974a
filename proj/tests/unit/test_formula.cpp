#include "oracle.hpp"

#include <doctest.h>

using namespace qd;

namespace {

Term var(const char* n)
{
	return Term::variable(n);
}

Term num(long n, long d = 1)
{
	return Term::constant(Rational(n, d));
}

} // namespace

TEST_SUITE("formula")
{
	TEST_CASE("parse builds the exact tree")
	{
		Formula f = parse("exists x in [-1,1] . sin(x) = 0");
		Formula expected =
		    Formula::exists({"x"}, RatBox{RatInterval(-1, 1)}, Formula::atom(Relation::Eq, Term::sin(var("x")), num(0)));
		CHECK(f == expected);
		CHECK(f.body().atom().normalized() == Term::sin(var("x")));
	}

	TEST_CASE("nested universal/existential example")
	{
		Formula f = parse("forall x in [-1,1] . exists y in [-1,1], z in [-1,1] . "
		                  "x^2-y^2-z^2 = 0 and x^3-y^3-z^3 = 0");
		REQUIRE(f.kind() == FormulaKind::ForAll);
		CHECK(f.variables() == std::vector<std::string>{"x"});
		const Formula& inner = f.body();
		REQUIRE(inner.kind() == FormulaKind::Exists);
		CHECK(inner.variables() == std::vector<std::string>{"y", "z"});
		auto atoms = conjunction_atoms(inner.body());
		REQUIRE(atoms);
		CHECK(atoms->size() == 2);
		Term x = var("x"), y = var("y"), z = var("z");
		CHECK((*atoms)[0].lhs == Term::power(x, 2) - Term::power(y, 2) - Term::power(z, 2));
		CHECK((*atoms)[1].lhs == Term::power(x, 3) - Term::power(y, 3) - Term::power(z, 3));
	}

	TEST_CASE("syntax errors carry a position")
	{
		CHECK_THROWS_AS(parse("exists x in [0,1]"), ParseError);
		try {
			parse("exists x in [0,1] .\n  x + * 2 = 0");
			FAIL("expected a parse error");
		} catch (const ParseError& e) {
			CHECK(e.line() == 2);
			CHECK(e.column() == 7);
		}
		CHECK_THROWS_AS(parse("exists x in [0,1] . x > 0"), ParseError);
		CHECK_THROWS_AS(parse("exists x in [0,1] . foo(x) = 0"), ParseError);
		CHECK_THROWS_AS(parse("exists x in [1,0] . x = 0"), ParseError);
		CHECK_THROWS_AS(parse("exists x in [0,1] . x^2.5 = 0"), ParseError);
	}

	TEST_CASE("unbound variables, shadowing and non-rational bounds are rejected")
	{
		CHECK_THROWS_AS(parse("exists x in [0,1] . y = 0"), ParseError);
		CHECK_THROWS_AS(parse("exists x in [0,pi] . x = 0"), ParseError);
		CHECK_THROWS_AS(parse("exists x in [0,sqrt(2)] . x = 0"), ParseError);
		CHECK_THROWS_AS(parse("forall x in [0,1] . exists x in [0,1] . x = 0"), ParseError);
		CHECK_THROWS_AS(parse("exists x in [0,1], x in [0,1] . x = 0"), ParseError);
		CHECK_NOTHROW(parse("(exists x in [0,1] . x = 0) and (exists x in [0,1] . x = 1)"));
		CHECK_NOTHROW(parse("exists x in [0,1] . x - p = 0", {"p"}));
	}

	TEST_CASE("literals are exact")
	{
		Formula f = parse("exists x in [0.1, 1.5e1] . x - 2.25e-2 = 0");
		CHECK(f.bounds()[0].lo() == Rational(1, 10));
		CHECK(f.bounds()[0].hi() == Rational(15));
		CHECK(f.body().atom().lhs.operand(1).value() == Rational(9, 400));
		CHECK(parse("exists x in [-1/3, 2/3] . x = 0").bounds()[0].lo() == Rational(-1, 3));
	}

	TEST_CASE("precedence and relation sugar")
	{
		Term t = parse_term("-x^2 + 3*y/2 - z");
		Term x = var("x"), y = var("y"), z = var("z");
		CHECK(t == Term::subtract(Term::add(Term::negate(Term::power(x, 2)), Term::divide(Term::multiply(num(3), y), num(2))), z));
		Formula le = parse("exists x in [0,1] . x <= 1/2");
		CHECK(le.body().atom().relation == Relation::Geq);
		CHECK(le.body().atom().lhs == num(1, 2));
		CHECK(le.body().atom().rhs == x);
		Formula f = parse("exists x in [0,1] . x = 0 or exists y in [0,1] . y = 0 and y >= 0");
		CHECK(f.body().kind() == FormulaKind::Or);
	}

	TEST_CASE("directly nested existentials merge into one block; parenthesized ones do not")
	{
		Formula merged = parse("exists x in [0,1] . exists y in [0,1] . x - y = 0 and x + y - 1 = 0");
		CHECK(merged.variables() == std::vector<std::string>{"x", "y"});
		Formula nested = parse("exists x in [0,1] . (exists y in [0,1] . x - y = 0 and x + y - 1 = 0)");
		CHECK(nested.variables() == std::vector<std::string>{"x"});
		CHECK(nested.body().kind() == FormulaKind::Exists);
		CHECK(parse(to_string(nested)) == nested);
	}

	TEST_CASE("print then parse is the identity on corpus formulas")
	{
		for (const auto& file : test::corpus_files()) {
			CAPTURE(file.filename().string());
			Formula f = parse(test::read_text(file));
			CHECK(parse(to_string(f)) == f);
		}
	}

	TEST_CASE("print then parse is the identity on generated formulas")
	{
		std::mt19937_64 rng(7);
		for (int i = 0; i < 300; ++i) {
			Formula f = test::random_sentence(rng, 3);
			std::string text = to_string(f);
			CAPTURE(text);
			CHECK(parse(text) == f);
		}
	}

	TEST_CASE("term printing round-trips awkward constants")
	{
		for (const char* s : {"(-3/4)", "-x", "--x", "x - -y", "(x + 1)^2", "(-1)^3", "(2^2)^3", "x/(y*z)", "x*(y/z)",
		                      "-(x*y)", "(-x)^2", "pi*x", "exp(-x)", "sqrt(x^2 + 1)"}) {
			CAPTURE(s);
			Term t = parse_term(s);
			CHECK(parse_term(to_string(t)) == t);
		}
		CHECK(to_string(num(-3, 4)) == "(-3/4)");
		CHECK(to_string(num(5)) == "5");
	}

	TEST_CASE("class B examples")
	{
		auto ok = validate_class_b(parse("forall x in [-1,1] . exists y in [-1,1], z in [-1,1] . "
		                                 "x^2-y^2-z^2 = 0 and x^3-y^3-z^3 = 0"));
		CHECK(ok.in_class);
		REQUIRE(ok.blocks.size() == 1);
		CHECK(ok.blocks[0].m == 2);
		CHECK(ok.blocks[0].n == 2);
		CHECK(ok.blocks[0].k == 0);

		auto under = validate_class_b(parse("exists x in [0,1], y in [0,1] . x - y = 0"));
		CHECK_FALSE(under.in_class);
		REQUIRE(under.blocks.size() == 1);
		CHECK(under.blocks[0].m == 2);
		CHECK(under.blocks[0].n == 1);
		CHECK(under.violations.size() == 1);

		auto ineq = validate_class_b(parse("exists x in [0,1] . x >= 0"));
		CHECK(ineq.in_class);
		CHECK(ineq.blocks[0].n == 0);
		CHECK(ineq.blocks[0].k == 1);
	}

	TEST_CASE("class B violations")
	{
		CHECK_FALSE(validate_class_b(parse("1 >= 0")).in_class);
		CHECK_FALSE(validate_class_b(parse("not exists x in [0,1] . x = 0")).in_class);
		CHECK_FALSE(validate_class_b(parse("exists x in [0,1] . x = 0 or x = 1")).in_class);
		CHECK_FALSE(validate_class_b(parse("exists x in [0,1] . forall y in [0,1] . x - y = 0")).in_class);
		CHECK(validate_class_b(parse("exists x in [0,1] . x = 0 and x - 1 = 0")).in_class); // n > m
		auto two = validate_class_b(parse("(exists x in [0,1], y in [0,1] . x = 0) or not 1 >= 0"));
		CHECK(two.violations.size() == 2);
	}

	TEST_CASE("class B membership does not depend on bound variable names")
	{
		std::mt19937_64 rng(11);
		for (int i = 0; i < 200; ++i) {
			Formula f = i % 2 ? test::random_class_b(rng, 3) : test::random_sentence(rng, 3);
			Formula g = test::rename_bound(f, "_renamed");
			auto a = validate_class_b(f);
			auto b = validate_class_b(g);
			CHECK(a.in_class == b.in_class);
			REQUIRE(a.blocks.size() == b.blocks.size());
			for (std::size_t k = 0; k < a.blocks.size(); ++k) {
				CHECK(a.blocks[k].m == b.blocks[k].m);
				CHECK(a.blocks[k].n == b.blocks[k].n);
				CHECK(a.blocks[k].k == b.blocks[k].k);
			}
			CHECK(a.violations.size() == b.violations.size());
		}
	}

	TEST_CASE("same structure examples")
	{
		Formula f = parse("exists x in [0,1] . forall y in [0,1] . x^2 - y = x*y and x = y");
		Formula g = parse("exists x in [0,1] . forall y in [0,1] . x^2 - y = x*y + 1 and x = y^2");
		CHECK(same_structure(f, g));
		CHECK(same_structure(f, f));
		CHECK_FALSE(same_structure(parse("1 >= 0"), parse("not not 1 >= 0")));
		CHECK_FALSE(same_structure(parse("exists x in [0,1] . x = 0"), parse("exists x in [0,2] . x = 0")));
		CHECK_FALSE(same_structure(parse("exists x in [0,1] . x = 0"), parse("exists x in [0,1] . x >= 0")));
		CHECK(same_structure(parse("exists x in [0,1] . x = 0"), parse("exists t in [0,1] . sin(t) = 1")));
	}

	TEST_CASE("same structure is an equivalence relation")
	{
		// a few skeletons, each instantiated with several term choices
		std::vector<Formula> set;
		std::mt19937_64 rng(3);
		for (int s = 0; s < 4; ++s) {
			std::mt19937_64 shape(100 + s);
			Formula base = test::random_sentence(shape, 2);
			set.push_back(base);
			set.push_back(test::rename_bound(base, "_a"));
		}
		for (int i = 0; i < 6; ++i)
			set.push_back(test::random_sentence(rng, 2));
		for (const auto& a : set) {
			CHECK(same_structure(a, a));
			for (const auto& b : set) {
				CHECK(same_structure(a, b) == same_structure(b, a));
				for (const auto& c : set)
					if (same_structure(a, b) && same_structure(b, c))
						CHECK(same_structure(a, c));
			}
		}
	}

	TEST_CASE("bind substitutes exact constants")
	{
		Formula f = parse("exists x in [-1,1] . sin(x + p) = 0", {"p"});
		Formula b = bind(f, ParamEnv{{"p", RatInterval(0)}});
		CHECK(b == parse("exists x in [-1,1] . sin(x + 0) = 0"));
		CHECK(free_variables(b).empty());

		Formula g = parse("exists x in [0,1] . x - a*b = 0 and x >= b - a", {"a", "b"});
		Formula h = bind(g, ParamEnv{{"a", RatInterval(Rational(1, 2))}, {"b", RatInterval(Rational(1, 3))}});
		CHECK(h == parse("exists x in [0,1] . x - (1/2)*(1/3) = 0 and x >= (1/3) - (1/2)"));

		Formula partial = bind(g, ParamEnv{{"a", RatInterval(1)}});
		CHECK(free_variables(partial) == std::vector<std::string>{"b"});

		CHECK_THROWS_AS(bind(f, ParamEnv{{"q", RatInterval(0)}}), std::invalid_argument);
		CHECK_THROWS_AS(bind(f, ParamEnv{{"x", RatInterval(0)}}), std::invalid_argument);
		CHECK_THROWS_AS(bind(f, ParamEnv{{"p", RatInterval(0, 1)}}), std::invalid_argument);
	}

	TEST_CASE("parameter order follows quantification order")
	{
		ParamEnv env{{"p", RatInterval(0, 1)}, {"q", RatInterval(2, 3)}};
		CHECK(env.names() == Scope{"p", "q"});
		CHECK(env.box() == RatBox{RatInterval(0, 1), RatInterval(2, 3)});
	}

	TEST_CASE("guarded operations are checked over the quantifier box")
	{
		CHECK_NOTHROW(parse("exists x in [0,1] . 1/(x + 1) = 1/2"));
		CHECK_NOTHROW(parse("exists x in [0,1] . sqrt(x) = 1/2"));
		CHECK_NOTHROW(parse("exists x in [1,2] . 1/(x^2 - x + 1) = 1/2"));
		CHECK_THROWS_AS(parse("exists x in [-1,1] . 1/x = 1"), ParseError);
		CHECK_THROWS_AS(parse("exists x in [0,1] . sqrt(x - 1/2) = 0"), ParseError);
		CHECK_THROWS_AS(parse("forall y in [-1,1] . exists x in [0,1] . x - 1/y = 0"), ParseError);

		Formula with_param = parse("exists x in [0,1] . x - 1/p = 0", {"p"});
		CHECK_NOTHROW(check_domains(with_param, RatBox{RatInterval(1, 2)}));
		CHECK_THROWS_AS(check_domains(with_param, RatBox{RatInterval(-1, 1)}), DomainError);
	}
}
