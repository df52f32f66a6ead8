#pragma once

#include <json.hpp>
#include <string>

#include "sl4branch/branching.hpp"
#include "sl4branch/decompose.hpp"
#include "sl4branch/report.hpp"

namespace sl4branch {

using json = nlohmann::json;

inline json weight_json(const Weight& w) { return json::array({w.x, w.y}); }

template <class Key>
json entries_json(const MultTable<Key>& t);

template <>
inline json entries_json<Weight>(const MultTable<Weight>& t) {
  json entries = json::array();
  for (const auto& [w, m] : t.entries())
    entries.push_back({{"hw", weight_json(w)}, {"mult", m}});
  return entries;
}

template <>
inline json entries_json<U2Irrep>(const MultTable<U2Irrep>& t) {
  json entries = json::array();
  for (const auto& [k, m] : t.entries())
    entries.push_back({{"hw", weight_json(k.hw)}, {"mult", m}});
  return entries;
}

/// The common wrapper every table-producing command emits.  Subgroup and
/// variant are null when they do not apply.
template <class Key>
json table_json(const std::string& module, const std::string& subgroup,
                const std::string& variant, long long max_norm,
                const MultTable<Key>& t) {
  json out;
  out["module"] = module;
  out["subgroup"] = subgroup.empty() ? json(nullptr) : json(subgroup);
  out["variant"] = variant.empty() ? json(nullptr) : json(variant);
  out["maxNorm"] = max_norm;
  out["entries"] = entries_json(t);
  out["certificate"] = nullptr;
  return out;
}

inline json certificate_json(const DecompositionCertificate& cert) {
  json summands = json::array();
  for (const auto& [s, m] : cert.summands)
    summands.push_back({{"id", s.text()},
                        {"minType", weight_json(s.minimal_type().hw)},
                        {"mult", m}});
  return {{"family", cert.family == PeelFamily::SpCones ? "sp" : "gl"},
          {"region", cert.region},
          {"exact", cert.exact},
          {"summands", summands},
          {"residual", entries_json(cert.residual)}};
}

inline json report_json(const VerificationReport& rep) {
  json clauses = json::array();
  for (const ClauseResult& c : rep.clauses)
    clauses.push_back({{"name", c.name},
                       {"pass", c.pass},
                       {"expected", c.expected},
                       {"actual", c.actual}});
  return {{"target", rep.target}, {"pass", rep.pass()}, {"clauses", clauses}};
}

inline json admissibility_json(const std::string& module, const std::string& subgroup,
                               U2Variant v, const AdmissibilityVerdict& verdict) {
  json out;
  out["module"] = module;
  out["subgroup"] = subgroup.empty() ? json(nullptr) : json(subgroup);
  out["variant"] = variant_name(v);
  out["admissible"] = verdict.admissible;
  out["witness"] = verdict.witness ? weight_json(verdict.witness->hw) : json(nullptr);
  out["direction"] = verdict.admissible ? json(nullptr) : json(verdict.direction);
  return out;
}

inline json restriction_json(const std::string& module, const std::string& subgroup,
                             U2Variant v, long long max_norm,
                             const RestrictionResult& res) {
  json out = table_json(module, subgroup, variant_name(v), max_norm, res.table);
  json inf = json::array();
  for (const InfiniteKey& k : res.infinite)
    inf.push_back({{"hw", weight_json(k.key.hw)}, {"direction", k.direction}});
  out["infinite"] = inf;
  return out;
}

inline json grid_json(const GridReport& grid) {
  json a = json::array();
  for (const auto& [key, id] : grid.diagonal_to_cone)
    a.push_back({{"ktype", weight_json(key.hw)}, {"summand", id.text()}});
  json b = json::array();
  for (const auto& [key, id] : grid.cone_key_to_ray)
    b.push_back({{"ktype", weight_json(key.hw)}, {"summand", id.text()}});
  return {{"report", report_json(grid.report)},
          {"diagonalToCone", a},
          {"coneKeyToRay", b}};
}

/// Serialized with a trailing newline; nlohmann sorts object keys, so the
/// bytes are a pure function of the data.
inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace sl4branch
