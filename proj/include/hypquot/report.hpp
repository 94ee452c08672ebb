#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "hypquot/certify.hpp"

namespace hypquot {

using Json = nlohmann::ordered_json;

Json graph_summary(const Graph& g);
Json to_json(const ProofConstants& constants);
Json to_json(const Witness& witness);
Json to_json(const StatementReport& report);
Json to_json(const LowerBoundReport& report, bool include_pairs = true);
Json to_json(const ProfileResult& profile, double p);
Json to_json(const EuclidResult& result, int m, int d_len, double epsilon);
Json to_json(const Decomposition& decomposition);
Json to_json(const FlowSolution& solution);

/// Envelope shared by every CLI report; determinism: identical inputs yield
/// identical bodies except the timestamp field.
Json report_envelope(const std::string& subcommand, std::uint64_t seed, int workers);

void write_profile_csv(std::ostream& out, const ProfileResult& profile, double p);
void write_counterexample_csv(std::ostream& out, const EuclidResult& result, int m, int d_len,
                              double epsilon);

/// Chain file: lines "u v coefficient" (u < v canonical orientation).
Chain read_chain_text(std::istream& in, const Graph& g);

} // namespace hypquot
