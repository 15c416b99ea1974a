#include "qdecide/formula.hpp"

#include <algorithm>
#include <cctype>

namespace qd {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line),
      column_(column)
{
}

namespace {

enum class Tok {
	Ident,
	Number,
	LParen,
	RParen,
	LBracket,
	RBracket,
	Comma,
	Dot,
	Plus,
	Minus,
	Star,
	Slash,
	Caret,
	Eq,
	Geq,
	Leq,
	End,
};

struct Token {
	Tok kind;
	std::string text;
	std::size_t line;
	std::size_t column;
	std::size_t offset;
};

std::vector<Token> tokenize(std::string_view src)
{
	std::vector<Token> out;
	std::size_t line = 1;
	std::size_t col = 1;
	std::size_t i = 0;
	auto advance = [&](std::size_t n) {
		for (std::size_t k = 0; k < n; ++k, ++i) {
			if (src[i] == '\n') {
				++line;
				col = 1;
			} else {
				++col;
			}
		}
	};
	while (i < src.size()) {
		char c = src[i];
		if (std::isspace(static_cast<unsigned char>(c))) {
			advance(1);
			continue;
		}
		if (c == '#') { // comment to end of line
			while (i < src.size() && src[i] != '\n')
				advance(1);
			continue;
		}
		Token t{Tok::End, "", line, col, i};
		if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
			std::size_t j = i;
			while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
				++j;
			t.kind = Tok::Ident;
			t.text = std::string(src.substr(i, j - i));
			out.push_back(t);
			advance(j - i);
			continue;
		}
		if (std::isdigit(static_cast<unsigned char>(c)) ||
		    (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
			std::size_t j = i;
			while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
				++j;
			if (j + 1 < src.size() && src[j] == '.' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
				++j;
				while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
					++j;
			}
			if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
				std::size_t k = j + 1;
				if (k < src.size() && (src[k] == '-' || src[k] == '+'))
					++k;
				if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
					while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k])))
						++k;
					j = k;
				}
			}
			t.kind = Tok::Number;
			t.text = std::string(src.substr(i, j - i));
			out.push_back(t);
			advance(j - i);
			continue;
		}
		std::size_t len = 1;
		switch (c) {
		case '(': t.kind = Tok::LParen; break;
		case ')': t.kind = Tok::RParen; break;
		case '[': t.kind = Tok::LBracket; break;
		case ']': t.kind = Tok::RBracket; break;
		case ',': t.kind = Tok::Comma; break;
		case '.': t.kind = Tok::Dot; break;
		case '+': t.kind = Tok::Plus; break;
		case '-': t.kind = Tok::Minus; break;
		case '*': t.kind = Tok::Star; break;
		case '/': t.kind = Tok::Slash; break;
		case '^': t.kind = Tok::Caret; break;
		case '=': t.kind = Tok::Eq; break;
		case '>':
		case '<':
			if (i + 1 < src.size() && src[i + 1] == '=') {
				t.kind = c == '>' ? Tok::Geq : Tok::Leq;
				len = 2;
				break;
			}
			throw ParseError(std::string("strict comparison '") + c + "' is not supported; use >= or <=", line, col);
		default:
			throw ParseError(std::string("unexpected character '") + c + "'", line, col);
		}
		t.text = std::string(src.substr(i, len));
		out.push_back(t);
		advance(len);
	}
	out.push_back({Tok::End, "<end of input>", line, col, i});
	return out;
}

bool is_keyword(const std::string& s)
{
	static const char* const words[] = {"exists", "forall", "in", "and", "or", "not", "pi", "exp", "sin", "cos", "sqrt"};
	return std::ranges::any_of(words, [&](const char* w) { return s == w; });
}

class Parser {
public:
	Parser(std::string_view src, std::vector<std::string> params) : toks_(tokenize(src)), params_(std::move(params)) {}

	Formula parse_sentence()
	{
		Formula f = formula();
		expect(Tok::End, "end of input");
		return f;
	}

	Term parse_term_only()
	{
		allow_any_variable_ = true;
		Term t = expr();
		expect(Tok::End, "end of input");
		return t;
	}

private:
	std::vector<Token> toks_;
	std::size_t pos_ = 0;
	std::vector<std::string> params_;
	std::vector<std::string> bound_;
	bool allow_any_variable_ = false;

	const Token& peek() const { return toks_[pos_]; }
	const Token& take() { return toks_[pos_++]; }
	bool at(Tok k) const { return peek().kind == k; }
	bool at_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }

	[[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(msg, t.line, t.column); }

	const Token& expect(Tok k, const char* what)
	{
		if (!at(k))
			fail(peek(), std::string("expected ") + what + ", found '" + peek().text + "'");
		return take();
	}

	void expect_word(const char* w)
	{
		if (!at_word(w))
			fail(peek(), std::string("expected '") + w + "', found '" + peek().text + "'");
		take();
	}

	// formula := quantified | disjunction
	Formula formula()
	{
		if (at_word("exists") || at_word("forall"))
			return quantified();
		return disjunction();
	}

	Formula quantified()
	{
		bool existential = take().text == "exists";
		std::vector<std::string> vars;
		std::vector<RatInterval> bounds;
		do {
			const Token& name = expect(Tok::Ident, "a variable name");
			if (is_keyword(name.text))
				fail(name, "keyword '" + name.text + "' cannot be a variable");
			if (std::ranges::find(bound_, name.text) != bound_.end() ||
			    std::ranges::find(vars, name.text) != vars.end() ||
			    std::ranges::find(params_, name.text) != params_.end())
				fail(name, "variable '" + name.text + "' is already bound on this path");
			expect_word("in");
			bounds.push_back(bound_interval());
			vars.push_back(name.text);
		} while (at(Tok::Comma) && (take(), true));
		expect(Tok::Dot, "'.' after the quantifier bounds");

		bool nested_exists = at_word("exists");
		auto mark = bound_.size();
		bound_.insert(bound_.end(), vars.begin(), vars.end());
		Formula body = formula();
		bound_.resize(mark);

		if (!existential) {
			// forall x in I, y in J . F  ==  forall x in I . forall y in J . F
			for (std::size_t i = vars.size(); i-- > 0;)
				body = Formula::forall(vars[i], bounds[i], body);
			return body;
		}
		if (nested_exists && body.kind() == FormulaKind::Exists) {
			vars.insert(vars.end(), body.variables().begin(), body.variables().end());
			bounds.insert(bounds.end(), body.bounds().sides().begin(), body.bounds().sides().end());
			return Formula::exists(std::move(vars), RatBox(std::move(bounds)), body.body());
		}
		return Formula::exists(std::move(vars), RatBox(std::move(bounds)), body);
	}

	RatInterval bound_interval()
	{
		const Token& open = expect(Tok::LBracket, "'['");
		Rational lo = bound_value();
		expect(Tok::Comma, "','");
		Rational hi = bound_value();
		expect(Tok::RBracket, "']'");
		if (hi < lo)
			fail(open, "empty interval: lower bound exceeds upper bound");
		return {lo, hi};
	}

	Rational bound_value()
	{
		const Token& start = peek();
		Term t = expr();
		if (t.kind() != TermKind::Constant)
			fail(start, "non-rational literal in quantifier bound: '" + to_string(t) + "'");
		return t.value();
	}

	Formula disjunction()
	{
		Formula f = conjunction();
		while (at_word("or")) {
			take();
			f = Formula::disjunction(f, conjunction());
		}
		return f;
	}

	Formula conjunction()
	{
		Formula f = unary();
		while (at_word("and")) {
			take();
			f = Formula::conjunction(f, unary());
		}
		return f;
	}

	Formula unary()
	{
		if (at_word("not")) {
			take();
			return Formula::negation(unary());
		}
		if (at_word("exists") || at_word("forall"))
			return quantified();
		if (at(Tok::LParen)) {
			// "(" may open a parenthesized formula or a term; try the formula first.
			std::size_t save = pos_;
			try {
				take();
				Formula f = formula();
				expect(Tok::RParen, "')'");
				if (!continues_term())
					return f;
			} catch (const ParseError&) {
			}
			pos_ = save;
		}
		return atom();
	}

	bool continues_term() const
	{
		switch (peek().kind) {
		case Tok::Plus:
		case Tok::Minus:
		case Tok::Star:
		case Tok::Slash:
		case Tok::Caret:
		case Tok::Eq:
		case Tok::Geq:
		case Tok::Leq:
			return true;
		default:
			return false;
		}
	}

	Formula atom()
	{
		Term lhs = expr();
		const Token& op = peek();
		if (op.kind != Tok::Eq && op.kind != Tok::Geq && op.kind != Tok::Leq)
			fail(op, "expected '=', '>=' or '<=', found '" + op.text + "'");
		take();
		Term rhs = expr();
		if (op.kind == Tok::Eq)
			return Formula::atom(Relation::Eq, lhs, rhs);
		if (op.kind == Tok::Geq)
			return Formula::atom(Relation::Geq, lhs, rhs);
		return Formula::atom(Relation::Geq, rhs, lhs);
	}

	Term expr()
	{
		Term t = product();
		while (at(Tok::Plus) || at(Tok::Minus)) {
			bool plus = take().kind == Tok::Plus;
			Term rhs = product();
			t = plus ? Term::add(t, rhs) : Term::subtract(t, rhs);
		}
		return t;
	}

	Term product()
	{
		Term t = signed_factor();
		while (at(Tok::Star) || at(Tok::Slash)) {
			bool times = take().kind == Tok::Star;
			Term rhs = signed_factor();
			t = times ? Term::multiply(t, rhs) : Term::divide(t, rhs);
		}
		return t;
	}

	Term signed_factor()
	{
		if (at(Tok::Minus)) {
			take();
			return Term::negate(signed_factor());
		}
		return power();
	}

	Term power()
	{
		Term base = primary();
		if (at(Tok::Caret)) {
			take();
			const Token& e = expect(Tok::Number, "a natural exponent");
			if (!std::ranges::all_of(e.text, [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
			    e.text.size() > 4)
				fail(e, "exponent must be a natural number below 10000");
			base = Term::power(base, static_cast<unsigned>(std::stoul(e.text)));
		}
		return base;
	}

	Term primary()
	{
		const Token& t = peek();
		switch (t.kind) {
		case Tok::Number: {
			take();
			try {
				return Term::constant(parse_rational(t.text));
			} catch (const std::invalid_argument& e) {
				fail(t, e.what());
			}
		}
		case Tok::LParen: {
			take();
			Term inner = expr();
			expect(Tok::RParen, "')'");
			return inner;
		}
		case Tok::Ident:
			return identifier();
		default:
			fail(t, "expected a term, found '" + t.text + "'");
		}
	}

	Term identifier()
	{
		const Token& t = take();
		if (t.text == "pi")
			return Term::pi();
		if (t.text == "exp" || t.text == "sin" || t.text == "cos" || t.text == "sqrt") {
			expect(Tok::LParen, "'(' after function name");
			Term arg = expr();
			expect(Tok::RParen, "')'");
			if (t.text == "exp")
				return Term::exp(arg);
			if (t.text == "sin")
				return Term::sin(arg);
			if (t.text == "cos")
				return Term::cos(arg);
			return Term::sqrt(arg);
		}
		if (is_keyword(t.text))
			fail(t, "unexpected keyword '" + t.text + "'");
		if (at(Tok::LParen))
			fail(t, "unknown function '" + t.text + "'");
		if (!allow_any_variable_ && std::ranges::find(bound_, t.text) == bound_.end() &&
		    std::ranges::find(params_, t.text) == params_.end())
			fail(t, "unbound variable '" + t.text + "'");
		return Term::variable(t.text);
	}
};

} // namespace

Formula parse(std::string_view text, const std::vector<std::string>& parameters)
{
	Formula f = Parser(text, parameters).parse_sentence();
	if (parameters.empty()) {
		try {
			check_domains(f);
		} catch (const DomainError& e) {
			throw ParseError(e.what(), 1, 1);
		}
	}
	return f;
}

Term parse_term(std::string_view text)
{
	return Parser(text, {}).parse_term_only();
}

} // namespace qd
