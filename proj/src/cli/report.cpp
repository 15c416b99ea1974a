#include "qdecide/cli.hpp"

#include <json.hpp>

#include <sstream>

namespace qd::cli {

namespace {

nlohmann::json to_json(const IterationRecord& rec)
{
	return {
	    {"iteration", rec.iteration},
	    {"epsilon", to_fraction_string(rec.epsilon)},
	    {"value", to_string(rec.value)},
	    {"cells", rec.stats.cells},
	    {"candidates", rec.stats.candidates},
	    {"zero_faces", rec.stats.zero_faces},
	    {"complexes", rec.stats.complexes},
	    {"removed", rec.stats.removed},
	    {"degrees", rec.stats.degrees},
	    {"degree_failures", rec.stats.degree_failures},
	};
}

std::string join_degrees(const std::vector<long>& ds)
{
	std::string s = "[";
	for (std::size_t i = 0; i < ds.size(); ++i)
		s += (i ? "," : "") + std::to_string(ds[i]);
	return s + "]";
}

} // namespace

std::string render(const Verdict& v, const RunConfig& config)
{
	if (config.format == Format::Json) {
		nlohmann::json j;
		j["verdict"] = to_string(v.outcome);
		j["iterations"] = v.iterations;
		j["epsilon"] = to_fraction_string(v.epsilon);
		j["timed_out"] = v.timed_out;
		if (config.certificate)
			j["certificate"] = v.certificate ? nlohmann::json(to_fraction_string(*v.certificate)) : nlohmann::json();
		j["trace"] = nlohmann::json::array();
		for (const auto& rec : v.trace)
			j["trace"].push_back(to_json(rec));
		return j.dump(2) + "\n";
	}
	std::ostringstream os;
	os << to_string(v.outcome) << '\n';
	os << "iterations: " << v.iterations << '\n';
	os << "epsilon: " << to_fraction_string(v.epsilon) << '\n';
	if (v.timed_out)
		os << "stopped: per-iteration time limit reached\n";
	if (config.certificate) {
		os << "certificate: ";
		if (!v.certificate)
			os << "none\n";
		else if (v.outcome == Outcome::True)
			os << "robust margin " << to_fraction_string(*v.certificate) << '\n';
		else
			os << "separation " << to_fraction_string(*v.certificate) << '\n';
	}
	os << "values:";
	for (const auto& rec : v.trace)
		os << ' ' << to_string(rec.value);
	os << '\n';
	if (config.trace)
		for (const auto& rec : v.trace)
			os << "  #" << rec.iteration << " eps=" << to_fraction_string(rec.epsilon) << ' ' << to_string(rec.value)
			   << " cells=" << rec.stats.cells << " candidates=" << rec.stats.candidates
			   << " zero_faces=" << rec.stats.zero_faces << " complexes=" << rec.stats.complexes
			   << " removed=" << rec.stats.removed << " degrees=" << join_degrees(rec.stats.degrees)
			   << " degree_failures=" << rec.stats.degree_failures << '\n';
	return os.str();
}

} // namespace qd::cli
