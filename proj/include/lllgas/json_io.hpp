#pragma once
// JSON views of reports and logs. Key order is fixed so identical inputs
// produce byte-identical documents.

#include <json.hpp>

#include "lllgas/cluster.hpp"
#include "lllgas/mt_engine.hpp"

namespace lllgas {

inline constexpr int kSchemaVersion = 1;

using json = nlohmann::ordered_json;

json report_to_json(const ConvergenceReport& report);
ConvergenceReport report_from_json(const json& doc);

json shearer_to_json(const ShearerResult& result);

json log_to_json(const ExecutionLog& log);
ExecutionLog log_from_json(const json& doc);

std::string rule_name(SelectionRule rule);
SelectionRule rule_from_name(const std::string& name);

std::vector<VertexId> set_to_ids(VertexSet s);

}  // namespace lllgas
