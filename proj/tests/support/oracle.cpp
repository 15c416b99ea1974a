#include "oracle.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace qd::test {

namespace {

std::size_t slot(const Scope& scope, const std::string& name)
{
	auto it = std::ranges::find(scope, name);
	if (it == scope.end())
		throw std::invalid_argument("oracle: unknown variable " + name);
	return static_cast<std::size_t>(it - scope.begin());
}

} // namespace

Rational exact_eval(const Term& t, const Scope& scope, std::span<const Rational> point)
{
	auto arg = [&](std::size_t i) { return exact_eval(t.operand(i), scope, point); };
	switch (t.kind()) {
	case TermKind::Constant:
		return t.value();
	case TermKind::Variable:
		return point[slot(scope, t.name())];
	case TermKind::Negate:
		return -arg(0);
	case TermKind::Add:
		return arg(0) + arg(1);
	case TermKind::Subtract:
		return arg(0) - arg(1);
	case TermKind::Multiply:
		return arg(0) * arg(1);
	case TermKind::Divide: {
		Rational d = arg(1);
		if (sgn(d) == 0)
			throw std::domain_error("oracle: division by zero");
		return arg(0) / d;
	}
	case TermKind::Power: {
		Rational b = arg(0);
		Rational out = 1;
		for (unsigned i = 0; i < t.exponent(); ++i)
			out *= b;
		return out;
	}
	default:
		throw std::invalid_argument("oracle: not a rational term");
	}
}

Big to_big(const Rational& q)
{
	Big num(q.get_num().get_str());
	Big den(q.get_den().get_str());
	return num / den;
}

Big mp_eval(const Term& t, const Scope& scope, std::span<const Rational> point)
{
	auto arg = [&](std::size_t i) { return mp_eval(t.operand(i), scope, point); };
	switch (t.kind()) {
	case TermKind::Constant:
		return to_big(t.value());
	case TermKind::Pi:
		return boost::math::constants::pi<Big>();
	case TermKind::Variable:
		return to_big(point[slot(scope, t.name())]);
	case TermKind::Negate:
		return -arg(0);
	case TermKind::Add:
		return arg(0) + arg(1);
	case TermKind::Subtract:
		return arg(0) - arg(1);
	case TermKind::Multiply:
		return arg(0) * arg(1);
	case TermKind::Divide:
		return arg(0) / arg(1);
	case TermKind::Power:
		return pow(arg(0), t.exponent());
	case TermKind::Exp:
		return exp(arg(0));
	case TermKind::Sin:
		return sin(arg(0));
	case TermKind::Cos:
		return cos(arg(0));
	case TermKind::Sqrt:
		return sqrt(arg(0));
	}
	throw std::logic_error("oracle: unhandled term");
}

bool inside(const RatInterval& enc, const Big& v, const Big& slack)
{
	return to_big(enc.lo()) - slack <= v && v <= to_big(enc.hi()) + slack;
}

Rational random_rational(std::mt19937_64& rng, const Rational& lo, const Rational& hi, unsigned den_bits)
{
	std::uniform_int_distribution<long> dist(0, (1L << den_bits));
	Rational t(dist(rng), 1L << den_bits);
	t.canonicalize();
	return lo + (hi - lo) * t;
}

Term random_poly_1d(std::mt19937_64& rng, unsigned degree, const std::string& var)
{
	std::uniform_int_distribution<int> coef(-9, 9);
	Term x = Term::variable(var);
	Term out = Term::constant(coef(rng));
	for (unsigned d = 1; d <= degree; ++d) {
		int c = coef(rng);
		if (c == 0)
			continue;
		Term mono = d == 1 ? x : Term::power(x, d);
		out = Term::add(out, Term::multiply(Term::constant(c), mono));
	}
	return out;
}

Term random_poly_2d(std::mt19937_64& rng, unsigned degree)
{
	std::uniform_int_distribution<int> coef(-4, 4);
	Term x = Term::variable("x");
	Term y = Term::variable("y");
	Term out = Term::constant(coef(rng));
	for (unsigned total = 1; total <= degree; ++total)
		for (unsigned i = 0; i <= total; ++i) {
			int c = coef(rng);
			if (c == 0)
				continue;
			unsigned j = total - i;
			Term mono = Term::constant(c);
			if (i)
				mono = Term::multiply(mono, i == 1 ? x : Term::power(x, i));
			if (j)
				mono = Term::multiply(mono, j == 1 ? y : Term::power(y, j));
			out = Term::add(out, mono);
		}
	return out;
}

Term random_term(std::mt19937_64& rng, const Scope& vars, unsigned depth, bool transcendental)
{
	std::uniform_int_distribution<int> pick(0, transcendental ? 11 : 6);
	std::uniform_int_distribution<int> small(-5, 5);
	if (depth == 0 || vars.empty()) {
		std::uniform_int_distribution<std::size_t> which(0, vars.size());
		std::size_t k = which(rng);
		if (k < vars.size())
			return Term::variable(vars[k]);
		return Term::constant(Rational(small(rng), 1 + std::abs(small(rng))));
	}
	auto sub = [&] { return random_term(rng, vars, depth - 1, transcendental); };
	switch (pick(rng)) {
	case 0:
		return Term::add(sub(), sub());
	case 1:
		return Term::subtract(sub(), sub());
	case 2:
		return Term::multiply(sub(), sub());
	case 3:
		return Term::negate(sub());
	case 4:
		return Term::power(sub(), 2 + static_cast<unsigned>(std::abs(small(rng))) % 2);
	case 5:
		return Term::divide(sub(), Term::constant(1 + std::abs(small(rng))));
	case 6:
		return random_term(rng, vars, 0, transcendental);
	case 7:
		return Term::sin(sub());
	case 8:
		return Term::cos(sub());
	case 9:
		return Term::exp(Term::divide(sub(), Term::constant(4)));
	case 10: {
		Term s = sub();
		return Term::sqrt(Term::add(Term::power(s, 2), Term::constant(Rational(1, 4))));
	}
	default:
		return Term::multiply(Term::pi(), sub());
	}
}

namespace {

RatInterval random_bounds(std::mt19937_64& rng)
{
	std::uniform_int_distribution<int> d(-3, 3);
	int a = d(rng);
	int b = d(rng);
	if (a == b)
		++b;
	Rational lo(std::min(a, b), 2);
	Rational hi(std::max(a, b), 2);
	lo.canonicalize();
	hi.canonicalize();
	return {lo, hi};
}

Formula random_atom(std::mt19937_64& rng, const Scope& vars, bool eq)
{
	Term lhs = random_term(rng, vars, 2, true);
	Term rhs = random_term(rng, vars, 1, false);
	return Formula::atom(eq ? Relation::Eq : Relation::Geq, lhs, rhs);
}

Formula random_formula(std::mt19937_64& rng, Scope& vars, unsigned depth, bool class_b)
{
	static int counter = 0;
	std::uniform_int_distribution<int> pick(0, class_b ? 3 : 5);
	int k = depth == 0 ? 0 : pick(rng);
	if (k == 0) {
		// existential block
		std::uniform_int_distribution<int> msize(1, 2);
		int m = msize(rng);
		std::vector<std::string> names;
		std::vector<RatInterval> sides;
		for (int i = 0; i < m; ++i) {
			names.push_back("v" + std::to_string(counter++));
			sides.push_back(random_bounds(rng));
		}
		Scope inner = vars;
		inner.insert(inner.end(), names.begin(), names.end());
		std::bernoulli_distribution equations(0.7);
		int n = equations(rng) ? m : 0;
		std::uniform_int_distribution<int> kcount(n == 0 ? 1 : 0, 1);
		int kk = kcount(rng);
		std::vector<Formula> atoms;
		for (int i = 0; i < n; ++i)
			atoms.push_back(random_atom(rng, inner, true));
		for (int i = 0; i < kk; ++i)
			atoms.push_back(random_atom(rng, inner, false));
		Formula body = atoms[0];
		for (std::size_t i = 1; i < atoms.size(); ++i)
			body = Formula::conjunction(body, atoms[i]);
		return Formula::exists(names, RatBox(sides), body);
	}
	if (k == 1) {
		std::string v = "u" + std::to_string(counter++);
		vars.push_back(v);
		Formula body = random_formula(rng, vars, depth - 1, class_b);
		vars.pop_back();
		return Formula::forall(v, random_bounds(rng), body);
	}
	if (k == 2 || k == 3) {
		Formula a = random_formula(rng, vars, depth - 1, class_b);
		Formula b = random_formula(rng, vars, depth - 1, class_b);
		return k == 2 ? Formula::conjunction(a, b) : Formula::disjunction(a, b);
	}
	if (k == 4)
		return Formula::negation(random_formula(rng, vars, depth - 1, class_b));
	// a bare atom under an existential over a compound body
	std::string v = "w" + std::to_string(counter++);
	vars.push_back(v);
	Formula body = Formula::disjunction(random_atom(rng, vars, true), random_atom(rng, vars, false));
	vars.pop_back();
	return Formula::exists({v}, RatBox{random_bounds(rng)}, body);
}

} // namespace

Formula random_sentence(std::mt19937_64& rng, unsigned depth)
{
	Scope vars;
	return random_formula(rng, vars, depth, false);
}

Formula random_class_b(std::mt19937_64& rng, unsigned depth)
{
	Scope vars;
	return random_formula(rng, vars, depth, true);
}

Formula rename_bound(const Formula& f, const std::string& suffix)
{
	// substitution through formulas is not public; rebuild bottom-up with a
	// running renaming of the bound names
	struct Walker {
		const std::string& suffix;
		std::map<std::string, Term> ren;

		Formula go(const Formula& f)
		{
			switch (f.kind()) {
			case FormulaKind::Atom:
				return Formula::atom(f.atom().relation, substitute(f.atom().lhs, ren), substitute(f.atom().rhs, ren));
			case FormulaKind::Not:
				return Formula::negation(go(f.operands()[0]));
			case FormulaKind::And:
				return Formula::conjunction(go(f.operands()[0]), go(f.operands()[1]));
			case FormulaKind::Or:
				return Formula::disjunction(go(f.operands()[0]), go(f.operands()[1]));
			case FormulaKind::Exists:
			case FormulaKind::ForAll: {
				auto saved = ren;
				std::vector<std::string> names;
				for (const auto& v : f.variables()) {
					names.push_back(v + suffix);
					ren[v] = Term::variable(v + suffix);
				}
				Formula body = go(f.body());
				ren = saved;
				if (f.kind() == FormulaKind::Exists)
					return Formula::exists(names, f.bounds(), body);
				return Formula::forall(names[0], f.bounds()[0], body);
			}
			}
			throw std::logic_error("unhandled");
		}
	};
	Walker w{suffix, {}};
	return w.go(f);
}

std::filesystem::path corpus_dir()
{
	return QD_CORPUS_DIR;
}

std::vector<std::filesystem::path> corpus_files()
{
	std::vector<std::filesystem::path> out;
	for (const auto& e : std::filesystem::directory_iterator(corpus_dir()))
		if (e.path().extension() == ".qd")
			out.push_back(e.path());
	std::ranges::sort(out);
	return out;
}

std::string read_text(const std::filesystem::path& p)
{
	std::ifstream in(p);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

namespace {

void collect(const Formula& f, Scope& scope, std::vector<RatInterval>& sides, const std::string& source,
             std::vector<ScopedTerm>& out)
{
	switch (f.kind()) {
	case FormulaKind::Atom:
		out.push_back({f.atom().normalized(), scope, RatBox(sides), source});
		return;
	case FormulaKind::Exists:
	case FormulaKind::ForAll: {
		auto mark = scope.size();
		scope.insert(scope.end(), f.variables().begin(), f.variables().end());
		sides.insert(sides.end(), f.bounds().sides().begin(), f.bounds().sides().end());
		collect(f.body(), scope, sides, source, out);
		scope.resize(mark);
		sides.resize(mark);
		return;
	}
	default:
		for (const auto& g : f.operands())
			collect(g, scope, sides, source, out);
	}
}

} // namespace

std::vector<ScopedTerm> scoped_terms(const Formula& f, const std::string& source)
{
	std::vector<ScopedTerm> out;
	Scope scope;
	std::vector<RatInterval> sides;
	collect(f, scope, sides, source, out);
	return out;
}

std::vector<ScopedTerm> corpus_terms()
{
	std::vector<ScopedTerm> out;
	for (const auto& file : corpus_files()) {
		auto terms = scoped_terms(parse(read_text(file)), file.stem().string());
		out.insert(out.end(), terms.begin(), terms.end());
	}
	return out;
}

} // namespace qd::test
