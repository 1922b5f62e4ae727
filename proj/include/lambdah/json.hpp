#ifndef LAMBDAH_JSON_HPP
#define LAMBDAH_JSON_HPP

// JSON-lines records for traces and agreement rows.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lambdah/equivalence.hpp"
#include "lambdah/machines.hpp"
#include "lambdah/syntax.hpp"

namespace lambdah {

// {"kind": "t"|"i"|"j_wrap"|"j_drop", "before": ..., "after": ..., "t_steps": n}
inline nlohmann::ordered_json to_json(const TraceEntry& entry, const std::vector<std::string>& free_names = {}) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(entry.kind);
  j["before"] = print(entry.before, free_names);
  j["after"] = print(entry.after, free_names);
  j["t_steps"] = entry.t_steps;
  return j;
}

inline const char* verdict_name(const VerdictSummary& v) { return v.hnf ? "hnf" : "unknown"; }

// {"context", "verdict_I", "verdict_J", "agree", "t_steps_I", "t_steps_J"}
inline nlohmann::ordered_json to_json(const AgreementRow& row, const std::string& context_text) {
  nlohmann::ordered_json j;
  j["context"] = context_text;
  j["verdict_I"] = verdict_name(row.verdict_i);
  j["verdict_J"] = verdict_name(row.verdict_j);
  j["agree"] = row.agree;
  j["t_steps_I"] = row.verdict_i.t_steps;
  j["t_steps_J"] = row.verdict_j.t_steps;
  return j;
}

}  // namespace lambdah

#endif  // LAMBDAH_JSON_HPP
