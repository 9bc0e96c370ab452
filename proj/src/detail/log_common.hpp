#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "provsum/model.hpp"

namespace provsum::detail {

struct PendingEvent {
  InteractionEvent event;
  std::size_t line = 0;
};

bool is_blank(std::string_view line);
void check_event_invariants(const InteractionEvent& ev, std::size_t line);

/// Rejects regressions beyond `tolerance_ms` (naming the offending seq), then
/// sorts by (timestamp, seq).
std::vector<InteractionEvent> order_events(std::vector<PendingEvent> pending,
                                           Timestamp tolerance_ms);

/// Accepts integer milliseconds or ISO-8601 UTC ("2021-03-04T05:06:07.890Z").
std::optional<Timestamp> parse_timestamp(std::string_view text);

Session parse_vast_tool(std::istream& in, const ParseOptions& options);
Session parse_conversation_tool(std::istream& in, const ParseOptions& options);
Session parse_query_metadata(std::istream& in, const ParseOptions& options);

}  // namespace provsum::detail
