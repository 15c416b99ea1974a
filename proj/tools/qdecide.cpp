#include "qdecide/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Flags {
	std::size_t budget = 20;
	std::string epsilon = "1";
	std::string format = "text";
	bool certificate = false;
	bool trace = false;
	std::size_t workers = 1;
	long time_limit_ms = 0;
};

void add_common(CLI::App* cmd, Flags& f)
{
	cmd->add_option("--budget", f.budget, "Maximum number of refinement iterations")->check(CLI::PositiveNumber);
	cmd->add_option("--epsilon", f.epsilon, "Initial refinement width (rational, e.g. 1/2)");
	cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"text", "json"}));
	cmd->add_flag("--certificate", f.certificate, "Report the robustness margin or separation bound");
	cmd->add_flag("--trace", f.trace, "Print per-iteration statistics");
	cmd->add_option("--workers", f.workers, "Worker threads for grid evaluation")->check(CLI::PositiveNumber);
	cmd->add_option("--time-limit", f.time_limit_ms, "Per-iteration time limit in milliseconds")
	    ->check(CLI::NonNegativeNumber);
}

qd::cli::RunConfig to_config(const Flags& f)
{
	qd::cli::RunConfig c;
	c.budget = f.budget;
	c.epsilon = qd::parse_rational(f.epsilon);
	if (sgn(c.epsilon) <= 0)
		throw std::invalid_argument("--epsilon must be positive");
	c.format = f.format == "json" ? qd::cli::Format::Json : qd::cli::Format::Text;
	c.certificate = f.certificate;
	c.trace = f.trace;
	c.workers = f.workers;
	if (f.time_limit_ms > 0)
		c.time_limit = std::chrono::milliseconds(f.time_limit_ms);
	return c;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Quasi-decision procedure for bounded first-order sentences over the reals"};
	app.require_subcommand(1);

	Flags solve_flags;
	std::string formula;
	std::string file;
	auto* solve = app.add_subcommand("solve", "Decide one sentence");
	add_common(solve, solve_flags);
	solve->add_option("formula", formula, "Sentence text");
	solve->add_option("--file", file, "Read the sentence from a file")->check(CLI::ExistingFile);

	Flags corpus_flags;
	std::string dir;
	auto* corpus = app.add_subcommand("corpus", "Run a directory of labelled sentences");
	add_common(corpus, corpus_flags);
	corpus->add_option("dir", dir, "Directory with .qd files and .expect sidecars")->required();

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		int code = app.exit(e);
		return code == 0 ? 0 : 1;
	}

	try {
		if (solve->parsed()) {
			if (formula.empty() == file.empty()) {
				std::cerr << "give either a formula or --file\n";
				return 1;
			}
			if (!file.empty()) {
				std::ifstream in(file);
				std::ostringstream ss;
				ss << in.rdbuf();
				formula = ss.str();
			}
			auto report = qd::cli::run(to_config(solve_flags), formula);
			(report.exit_code == 1 ? std::cerr : std::cout) << report.output;
			return report.exit_code;
		}
		auto summary = qd::cli::corpus(to_config(corpus_flags), dir);
		std::cout << summary.table;
		return summary.exit_code;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 1;
	}
}
