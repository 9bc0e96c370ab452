#include "provsum/model.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "detail/log_common.hpp"

namespace provsum {

namespace {

constexpr std::pair<EventKind, std::string_view> kKindNames[] = {
    {EventKind::Search, "Search"},       {EventKind::DocOpen, "DocOpen"},
    {EventKind::Highlight, "Highlight"}, {EventKind::Note, "Note"},
    {EventKind::AudioPlay, "AudioPlay"}, {EventKind::Other, "Other"},
};

constexpr std::pair<LogFormat, std::string_view> kFormatNames[] = {
    {LogFormat::CanonicalJsonl, "canonical_jsonl"},
    {LogFormat::VastTool, "vast_tool"},
    {LogFormat::ConversationTool, "conversation_tool"},
    {LogFormat::QueryMetadata, "query_metadata"},
};

std::int64_t require_int(const nlohmann::json& record, const char* key, std::size_t line) {
  auto it = record.find(key);
  if (it == record.end()) {
    throw ParseError(line, std::string("missing field '") + key + "'");
  }
  if (!it->is_number_integer()) {
    throw ParseError(line, std::string("field '") + key + "' must be an integer");
  }
  return it->get<std::int64_t>();
}

std::optional<std::string> optional_string(const nlohmann::json& record, const char* key,
                                           std::size_t line) {
  auto it = record.find(key);
  if (it == record.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw ParseError(line, std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

Session parse_canonical(std::istream& in, const ParseOptions& options) {
  std::vector<detail::PendingEvent> pending;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::int64_t> last_seq;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_blank(line)) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!record.is_object()) throw ParseError(line_no, "record is not a JSON object");

    InteractionEvent ev;
    ev.seq = require_int(record, "seq", line_no);
    ev.timestamp = require_int(record, "ts", line_no);
    auto kind_it = record.find("kind");
    if (kind_it == record.end() || !kind_it->is_string()) {
      throw ParseError(line_no, "field 'kind' must be a string");
    }
    const auto kind_name = kind_it->get<std::string>();
    ev.doc_id = optional_string(record, "doc_id", line_no);
    ev.text = optional_string(record, "text", line_no);
    if (auto meta_it = record.find("meta"); meta_it != record.end() && !meta_it->is_null()) {
      if (!meta_it->is_object()) throw ParseError(line_no, "field 'meta' must be an object");
      for (const auto& [key, value] : meta_it->items()) {
        ev.meta[key] = value.is_string() ? value.get<std::string>() : value.dump();
      }
    }
    if (auto kind = parse_event_kind(kind_name)) {
      ev.kind = *kind;
    } else {
      ev.kind = EventKind::Other;
      ev.meta["original_kind"] = kind_name;
      if (!ev.text) ev.text = line;
    }

    if (last_seq && ev.seq <= *last_seq) {
      throw ParseError(line_no, "seq " + std::to_string(ev.seq) + " is not greater than " +
                                    std::to_string(*last_seq));
    }
    last_seq = ev.seq;
    detail::check_event_invariants(ev, line_no);
    pending.push_back({std::move(ev), line_no});
  }

  Session session;
  session.id = options.session_id;
  session.events = detail::order_events(std::move(pending), options.regression_tolerance_ms);
  return session;
}

}  // namespace

std::string_view to_string(EventKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "Other";
}

std::optional<EventKind> parse_event_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(LogFormat format) {
  for (const auto& [f, name] : kFormatNames) {
    if (f == format) return name;
  }
  return "canonical_jsonl";
}

std::optional<LogFormat> parse_log_format(std::string_view name) {
  for (const auto& [f, n] : kFormatNames) {
    if (n == name) return f;
  }
  return std::nullopt;
}

InteractionEvent to_event(const QueryRecord& record, std::int64_t seq) {
  InteractionEvent ev;
  ev.seq = seq;
  ev.timestamp = record.timestamp;
  ev.kind = EventKind::Search;
  ev.text = record.query;
  ev.meta["result_count"] = std::to_string(record.result_count);
  ev.meta["requester"] = record.requester;
  if (record.justification) ev.meta["justification"] = *record.justification;
  return ev;
}

Session parse_log(std::istream& in, LogFormat format, const ParseOptions& options) {
  switch (format) {
    case LogFormat::CanonicalJsonl:
      return parse_canonical(in, options);
    case LogFormat::VastTool:
      return detail::parse_vast_tool(in, options);
    case LogFormat::ConversationTool:
      return detail::parse_conversation_tool(in, options);
    case LogFormat::QueryMetadata:
      return detail::parse_query_metadata(in, options);
  }
  throw InvalidArgument("unknown log format");
}

Session parse_log_file(const std::filesystem::path& path, LogFormat format,
                       const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open log file: " + path.string());
  return parse_log(in, format, options);
}

void write_canonical(std::ostream& out, const Session& session) {
  for (const auto& ev : session.events) {
    nlohmann::ordered_json record;
    record["seq"] = ev.seq;
    record["ts"] = ev.timestamp;
    record["kind"] = std::string(to_string(ev.kind));
    if (ev.doc_id) record["doc_id"] = *ev.doc_id;
    if (ev.text) record["text"] = *ev.text;
    if (!ev.meta.empty()) record["meta"] = ev.meta;
    out << record.dump() << '\n';
  }
}

std::string to_canonical(const Session& session) {
  std::ostringstream out;
  write_canonical(out, session);
  return out.str();
}

void validate_session(const Session& session) {
  for (std::size_t i = 0; i < session.events.size(); ++i) {
    const auto& ev = session.events[i];
    detail::check_event_invariants(ev, i + 1);
    if (i > 0) {
      const auto& prev = session.events[i - 1];
      if (ev.seq <= prev.seq) {
        throw ParseError(i + 1, "seq not strictly increasing at seq " + std::to_string(ev.seq));
      }
      if (ev.timestamp < prev.timestamp) {
        throw OrderingError(ev.seq, ev.timestamp, prev.timestamp);
      }
    }
  }
}

namespace detail {

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

void check_event_invariants(const InteractionEvent& ev, std::size_t line) {
  if (ev.kind == EventKind::Search && !ev.has_text()) {
    throw ParseError(line, "Search event " + std::to_string(ev.seq) + " has no query text");
  }
  if (ev.kind == EventKind::DocOpen && (!ev.doc_id || ev.doc_id->empty())) {
    throw ParseError(line, "DocOpen event " + std::to_string(ev.seq) + " has no doc_id");
  }
}

std::vector<InteractionEvent> order_events(std::vector<PendingEvent> pending,
                                           Timestamp tolerance_ms) {
  std::optional<Timestamp> latest;
  for (const auto& p : pending) {
    if (latest && p.event.timestamp < *latest - tolerance_ms) {
      throw OrderingError(p.event.seq, p.event.timestamp, *latest);
    }
    latest = latest ? std::max(*latest, p.event.timestamp) : p.event.timestamp;
  }
  std::stable_sort(pending.begin(), pending.end(), [](const auto& a, const auto& b) {
    if (a.event.timestamp != b.event.timestamp) return a.event.timestamp < b.event.timestamp;
    return a.event.seq < b.event.seq;
  });
  const bool reordered = std::adjacent_find(pending.begin(), pending.end(), [](const auto& a,
                                                                               const auto& b) {
                           return a.event.seq > b.event.seq;
                         }) != pending.end();
  std::vector<InteractionEvent> events;
  events.reserve(pending.size());
  for (auto& p : pending) events.push_back(std::move(p.event));
  if (reordered) {
    // Keep seq strictly increasing in (timestamp, seq) order.
    std::int64_t next = events.front().seq;
    for (auto& ev : events) next = std::min(next, ev.seq);
    for (auto& ev : events) {
      ev.meta["original_seq"] = std::to_string(ev.seq);
      ev.seq = next++;
    }
  }
  return events;
}

}  // namespace detail

}  // namespace provsum
