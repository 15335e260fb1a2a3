#include "lllgas/json_io.hpp"

#include <bit>
#include <stdexcept>

namespace lllgas {

json report_to_json(const ConvergenceReport& report) {
  json per_vertex = json::array();
  for (const auto& c : report.per_vertex)
    per_vertex.push_back(json{{"id", c.id},
                              {"pass", c.pass},
                              {"slack", c.slack},
                              {"t_bound", c.t_bound}});
  json doc;
  doc["criterion"] = report.criterion;
  doc["per_vertex"] = std::move(per_vertex);
  doc["all_pass"] = report.all_pass;
  doc["total_bound"] =
      report.total_bound ? json(*report.total_bound) : json(nullptr);
  doc["xi_at_minus_p"] =
      report.xi_at_minus_p ? json(*report.xi_at_minus_p) : json(nullptr);
  return doc;
}

ConvergenceReport report_from_json(const json& doc) {
  ConvergenceReport report;
  report.criterion = doc.at("criterion").get<std::string>();
  for (const auto& c : doc.at("per_vertex")) {
    PerVertexCheck check;
    check.id = c.at("id").get<VertexId>();
    check.pass = c.at("pass").get<bool>();
    check.slack = c.at("slack").get<double>();
    check.t_bound = c.at("t_bound").get<double>();
    report.per_vertex.push_back(check);
  }
  report.all_pass = doc.at("all_pass").get<bool>();
  if (!doc.at("total_bound").is_null())
    report.total_bound = doc.at("total_bound").get<double>();
  if (!doc.at("xi_at_minus_p").is_null())
    report.xi_at_minus_p = doc.at("xi_at_minus_p").get<double>();
  return report;
}

std::vector<VertexId> set_to_ids(VertexSet s) {
  std::vector<VertexId> ids;
  while (s) {
    ids.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return ids;
}

json shearer_to_json(const ShearerResult& result) {
  json doc;
  doc["criterion"] = "shearer";
  doc["in_region"] = result.in_region;
  doc["marginal"] = result.marginal;
  doc["witness"] = result.witness ? json(set_to_ids(*result.witness)) : json(nullptr);
  doc["xi_at_minus_p"] = result.xi_full;
  return doc;
}

std::string rule_name(SelectionRule rule) {
  return rule == SelectionRule::lowest_index ? "lowest_index" : "uniform_random";
}

SelectionRule rule_from_name(const std::string& name) {
  if (name == "lowest_index") return SelectionRule::lowest_index;
  if (name == "uniform_random") return SelectionRule::uniform_random;
  throw std::invalid_argument("unknown selection rule");
}

json log_to_json(const ExecutionLog& log) {
  json counts = json::object();
  for (std::size_t x = 0; x < log.counts.size(); ++x)
    counts[std::to_string(x)] = log.counts[x];
  json doc;
  doc["seed"] = log.seed;
  doc["rule"] = rule_name(log.rule);
  doc["steps"] = log.steps;
  doc["terminated"] = log.terminated;
  doc["counts"] = std::move(counts);
  doc["final_assignment"] = log.final_assignment;
  return doc;
}

ExecutionLog log_from_json(const json& doc) {
  ExecutionLog log;
  log.seed = doc.at("seed").get<std::uint64_t>();
  log.rule = rule_from_name(doc.at("rule").get<std::string>());
  log.steps = doc.at("steps").get<std::vector<VertexId>>();
  log.terminated = doc.at("terminated").get<bool>();
  const auto& counts = doc.at("counts");
  log.counts.assign(counts.size(), 0);
  for (const auto& [key, value] : counts.items())
    log.counts.at(std::stoul(key)) = value.get<std::uint64_t>();
  log.final_assignment = doc.at("final_assignment").get<Assignment>();
  return log;
}

}  // namespace lllgas
