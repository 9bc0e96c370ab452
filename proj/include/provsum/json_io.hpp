#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "provsum/model.hpp"
#include "provsum/pipeline.hpp"

namespace provsum {

nlohmann::json to_json(const SegmentationParams& params);
nlohmann::json to_json(const SegmentSummary& card);
nlohmann::json to_json(const SessionOverview& overview);
nlohmann::json to_json(const SummaryResponse& response);
nlohmann::json to_json(const InteractionEvent& event);

SegmentationParams params_from_json(const nlohmann::json& j);
SegmentSummary card_from_json(const nlohmann::json& j);
SessionOverview overview_from_json(const nlohmann::json& j);
SummaryResponse response_from_json(const nlohmann::json& j);

/// Stable text form shared by the HTTP API and the json export.
std::string serialize(const SummaryResponse& response);

}  // namespace provsum
