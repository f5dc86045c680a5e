#include "stiffkit/report.hpp"

#include <cmath>

#include "stiffkit/code_io.hpp"

namespace stiffkit {

using nlohmann::json;

namespace {

// JSON has no infinity; report it as a string.
json number(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

}  // namespace

std::string version() {
#ifdef STIFFKIT_VERSION
  return STIFFKIT_VERSION;
#else
  return "unknown";
#endif
}

json to_json(const DesignReport& r) {
  json sums = json::object();
  for (const auto& [n, v] : r.pair_sums) sums[std::to_string(n)] = v;
  return {{"code", r.code_name},
          {"checked_up_to", r.checked_up_to},
          {"index_set", r.index_set},
          {"strength", r.strength},
          {"exact", r.exact},
          {"pair_sums", sums}};
}

json to_json(const SpectrumReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json item = {{"value", e.value}, {"multiplicity", e.multiplicity}};
    if (e.exact) item["exact"] = e.exact->str();
    entries.push_back(item);
  }
  return {{"probe", r.probe}, {"exact", r.exact}, {"distinct", r.distinct_count()}, {"entries", entries}};
}

json to_json(const DualSet& r) {
  return {{"size", r.size()},
          {"exact", r.exact},
          {"complete", r.complete},
          {"nodes_forced", r.nodes_forced},
          {"nodes_overridden", r.nodes_overridden},
          {"node_values", r.node_values},
          {"basis", r.basis},
          {"systems", r.systems},
          {"max_residual", r.max_residual},
          {"points", code_to_json(r.points)}};
}

json to_json(const StiffnessCertificate& r) {
  return {{"code", r.code_name},
          {"m", r.m},
          {"design_strength", r.design_strength},
          {"stiff", r.stiff},
          {"dual", to_json(r.dual)},
          {"frequency_table", r.frequency_table},
          {"expected_frequencies", r.expected_frequencies},
          {"expected_exact", r.expected_exact},
          {"frequencies_match", r.frequencies_match},
          {"antipodal_dual", r.antipodal_dual},
          {"cardinality_ok", r.cardinality_ok},
          {"double_dual_inclusion", r.double_dual_inclusion},
          {"dual_general_position", r.dual_general_position},
          {"dual_1stiff", r.dual_1stiff}};
}

json to_json(const OneStiffResult& r) {
  json j = {{"one_stiff", r.one_stiff}, {"centered", r.centered}, {"rank", r.rank}};
  if (r.witness) j["witness"] = *r.witness;
  return j;
}

json to_json(const SharpnessReport& r) {
  return {{"inner_dot_count", r.inner_dot_count},
          {"inner_dots", r.inner_dots},
          {"strength", r.strength},
          {"sharp", r.sharp},
          {"strongly_sharp", r.strongly_sharp}};
}

json to_json(const MinimizationReport& r) {
  json j = {{"kernel", r.kernel},
            {"global_min_value", number(r.global_min_value)},
            {"argmin_cluster", r.argmin_cluster},
            {"starts", r.starts},
            {"converged", r.converged},
            {"stalled", r.stalled},
            {"failed", r.failed},
            {"min_from_other_starts", number(r.min_from_other_starts)},
            {"dual_match", r.dual_match},
            {"restarts", r.restarts},
            {"seed", r.seed},
            {"tolerance", r.tolerance}};
  if (r.dual_value) {
    j["dual_value"] = number(*r.dual_value);
    j["gap"] = number(r.gap);
  }
  return j;
}

json to_json(const UniversalMinimumReport& r) {
  return {{"kernel", r.kernel},
          {"pass", r.pass},
          {"dual_value", number(r.dual_value)},
          {"dual_spread", number(r.dual_spread)},
          {"equal_values", r.equal_values},
          {"global_min", number(r.global_min)},
          {"margin", number(r.margin)},
          {"no_lower_value", r.no_lower_value},
          {"max_argmin_distance", number(r.max_argmin_distance)},
          {"argmins_on_dual", r.argmins_on_dual},
          {"minimization", to_json(r.minimization)}};
}

json to_json(const SkipOneAddTwoReport& r) {
  return {{"pass", r.pass()},
          {"index_ok", r.index_ok},
          {"sum_ok", r.sum_ok},
          {"sumsq_ok", r.sumsq_ok},
          {"candidates_ok", r.candidates_ok},
          {"index_set", r.index_set},
          {"sum", r.sum},
          {"sumsq_expr", r.sumsq_expr},
          {"bound", r.bound},
          {"sum_margin", r.sum_margin},
          {"sumsq_margin", r.sumsq_margin}};
}

json to_json(const GlueResult& r) {
  return {{"code", code_to_json(r.code)},
          {"z1", r.z1},
          {"z2", r.z2},
          {"attempts", r.attempts},
          {"disjoint", r.disjoint},
          {"design_strength", r.design_strength},
          {"design_ok", r.design_ok},
          {"z2_distinct", r.z2_distinct},
          {"z2_in_dual", r.z2_in_dual},
          {"stiff", r.stiff},
          {"seed", r.seed}};
}

json to_json(const RotatedCubes& r) {
  return {{"code", code_to_json(r.code)}, {"certificate", to_json(r.certificate)}, {"dual_is_axis", r.dual_is_axis}};
}

json envelope(const std::string& command, json result, std::optional<std::uint64_t> seed, json tolerances) {
  json j = {{"tool", "stiffkit"}, {"version", version()}, {"command", command}};
  if (seed) j["seed"] = *seed;
  j["tolerances"] = std::move(tolerances);
  j["result"] = std::move(result);
  return j;
}

}  // namespace stiffkit
