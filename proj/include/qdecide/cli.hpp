#pragma once

#include "qdecide/solver.hpp"

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qd::cli {

enum class Format { Text, Json };

struct RunConfig {
	std::size_t budget = 20;
	Rational epsilon = 1;
	Format format = Format::Text;
	bool certificate = false;
	bool trace = false;
	std::size_t workers = 1;
	std::optional<std::chrono::milliseconds> time_limit; // per iteration
};

struct RunReport {
	int exit_code = 1; // 0 TRUE/FALSE, 2 UNKNOWN, 1 error
	std::string output;
	std::optional<Verdict> verdict;
};

/// Parses, validates and decides `source`; the report text follows config.format.
RunReport run(const RunConfig& config, std::string_view source);

std::string render(const Verdict& v, const RunConfig& config);

struct Expectation {
	Outcome outcome = Outcome::Unknown;
	std::optional<std::size_t> budget; // for UNKNOWN@b
};

/// Reads "EXPECT TRUE", "EXPECT FALSE" or "EXPECT UNKNOWN@<budget>".
Expectation parse_expectation(std::string_view line);

struct CorpusEntry {
	std::string name;
	Expectation expected;
	std::optional<Outcome> actual; // nullopt on error
	std::string error;
	bool pass = false;
	bool soundness_violation = false;
};

struct CorpusSummary {
	std::vector<CorpusEntry> entries;
	int exit_code = 0; // 0 all pass, 1 setup error, 2 mismatch, 3 soundness violation
	std::string table;
};

/// Runs every *.qd file of `dir` against its .expect sidecar.
CorpusSummary corpus(const RunConfig& config, const std::filesystem::path& dir);

} // namespace qd::cli
