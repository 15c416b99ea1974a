#include "qdecide/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qd::cli {

RunReport run(const RunConfig& config, std::string_view source)
{
	RunReport report;
	Formula f = Formula::atom(Relation::Eq, Term::constant(0), Term::constant(0));
	try {
		f = parse(source);
	} catch (const ParseError& e) {
		report.output = std::string("parse error at ") + e.what() + "\n";
		return report;
	} catch (const DomainError& e) {
		report.output = std::string("domain error: ") + e.what() + "\n";
		return report;
	}
	ClassBReport cb = validate_class_b(f);
	if (!cb.in_class) {
		report.output = "not in class B:\n";
		for (const auto& v : cb.violations)
			report.output += "  " + v + "\n";
		return report;
	}
	SolverOptions opts;
	opts.workers = config.workers;
	Verdict v = quasi_decide(f, config.budget, config.epsilon, opts, config.time_limit);
	report.exit_code = v.outcome == Outcome::Unknown ? 2 : 0;
	report.output = render(v, config);
	report.verdict = std::move(v);
	return report;
}

Expectation parse_expectation(std::string_view line)
{
	std::istringstream in{std::string(line)};
	std::string word;
	std::string label;
	in >> word >> label;
	if (word != "EXPECT")
		throw std::invalid_argument("sidecar must start with EXPECT");
	Expectation e;
	if (label == "TRUE") {
		e.outcome = Outcome::True;
	} else if (label == "FALSE") {
		e.outcome = Outcome::False;
	} else if (label.starts_with("UNKNOWN@")) {
		auto digits = label.substr(8);
		if (digits.empty() || !std::ranges::all_of(digits, [](char c) { return c >= '0' && c <= '9'; }))
			throw std::invalid_argument("malformed budget in '" + label + "'");
		e.outcome = Outcome::Unknown;
		e.budget = std::stoul(digits);
		if (*e.budget == 0)
			throw std::invalid_argument("budget must be at least 1");
	} else {
		throw std::invalid_argument("unknown label '" + label + "'");
	}
	return e;
}

namespace {

std::string read_file(const std::filesystem::path& p)
{
	std::ifstream in(p);
	if (!in)
		throw std::runtime_error("cannot read " + p.string());
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

std::string label(const Expectation& e)
{
	if (e.outcome == Outcome::Unknown)
		return "UNKNOWN@" + std::to_string(*e.budget);
	return to_string(e.outcome);
}

} // namespace

CorpusSummary corpus(const RunConfig& config, const std::filesystem::path& dir)
{
	CorpusSummary out;
	if (!std::filesystem::is_directory(dir)) {
		out.exit_code = 1;
		out.table = "not a directory: " + dir.string() + "\n";
		return out;
	}
	std::vector<std::filesystem::path> files;
	for (const auto& e : std::filesystem::directory_iterator(dir))
		if (e.is_regular_file() && e.path().extension() == ".qd")
			files.push_back(e.path());
	std::ranges::sort(files);

	bool setup_error = false;
	bool mismatch = false;
	bool unsound = false;
	std::ostringstream table;
	for (const auto& file : files) {
		CorpusEntry entry;
		entry.name = file.stem().string();
		auto sidecar = file;
		sidecar.replace_extension(".expect");
		try {
			if (!std::filesystem::exists(sidecar))
				throw std::runtime_error("missing sidecar " + sidecar.filename().string());
			std::string text = read_file(sidecar);
			entry.expected = parse_expectation(text.substr(0, text.find('\n')));
		} catch (const std::exception& e) {
			entry.error = e.what();
			setup_error = true;
			table << "ERROR " << entry.name << ": " << entry.error << '\n';
			out.entries.push_back(std::move(entry));
			continue;
		}
		RunConfig cfg = config;
		cfg.format = Format::Text;
		if (entry.expected.budget)
			cfg.budget = *entry.expected.budget;
		RunReport r = run(cfg, read_file(file));
		if (!r.verdict) {
			entry.error = r.output.substr(0, r.output.find('\n'));
			setup_error = true;
		} else {
			entry.actual = r.verdict->outcome;
			entry.pass = *entry.actual == entry.expected.outcome;
			entry.soundness_violation =
			    (*entry.actual == Outcome::True && entry.expected.outcome == Outcome::False) ||
			    (*entry.actual == Outcome::False && entry.expected.outcome == Outcome::True);
			mismatch = mismatch || !entry.pass;
			unsound = unsound || entry.soundness_violation;
		}
		table << (entry.pass ? "PASS " : entry.soundness_violation ? "UNSOUND " : entry.error.empty() ? "FAIL " : "ERROR ")
		      << entry.name << ": expected " << label(entry.expected);
		if (entry.actual)
			table << ", got " << to_string(*entry.actual) << " after " << r.verdict->iterations << " iteration(s)";
		else
			table << ", " << entry.error;
		table << '\n';
		out.entries.push_back(std::move(entry));
	}
	std::size_t passed = static_cast<std::size_t>(std::ranges::count_if(out.entries, [](const CorpusEntry& e) { return e.pass; }));
	table << passed << "/" << out.entries.size() << " passed\n";
	out.table = table.str();
	out.exit_code = unsound ? 3 : setup_error ? 1 : mismatch ? 2 : 0;
	return out;
}

} // namespace qd::cli
