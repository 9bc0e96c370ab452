#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "provsum/error.hpp"

namespace provsum {

/// Milliseconds since the Unix epoch.
using Timestamp = std::int64_t;

enum class EventKind { Search, DocOpen, Highlight, Note, AudioPlay, Other };

inline constexpr EventKind kAllEventKinds[] = {EventKind::Search,    EventKind::DocOpen,
                                               EventKind::Highlight, EventKind::Note,
                                               EventKind::AudioPlay, EventKind::Other};

std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view name);

struct Document {
  std::string id;
  std::string title;
  std::string body;

  bool operator==(const Document&) const = default;
};

struct InteractionEvent {
  std::int64_t seq = 0;
  Timestamp timestamp = 0;
  EventKind kind = EventKind::Other;
  std::optional<std::string> doc_id;
  std::optional<std::string> text;
  std::map<std::string, std::string> meta;

  bool has_text() const { return text && !text->empty(); }
  bool operator==(const InteractionEvent&) const = default;
};

struct Session {
  std::string id;
  std::optional<std::string> analyst;
  std::vector<InteractionEvent> events;
  std::optional<std::string> corpus_ref;

  Timestamp start_time() const { return events.empty() ? 0 : events.front().timestamp; }
  Timestamp end_time() const { return events.empty() ? 0 : events.back().timestamp; }
  Timestamp duration_ms() const { return end_time() - start_time(); }

  bool operator==(const Session&) const = default;
};

/// One row of a query-compliance log: query metadata only, no document links.
struct QueryRecord {
  std::string query;
  std::int64_t result_count = 0;
  Timestamp timestamp = 0;
  std::string requester;
  std::optional<std::string> justification;
};

/// Lossless mapping onto a Search event; the metadata lands in `meta`.
InteractionEvent to_event(const QueryRecord& record, std::int64_t seq);

enum class LogFormat { CanonicalJsonl, VastTool, ConversationTool, QueryMetadata };

std::string_view to_string(LogFormat format);
std::optional<LogFormat> parse_log_format(std::string_view name);

struct ParseOptions {
  std::string session_id = "session";
  /// How far (ms) a timestamp may fall behind the latest one seen before the
  /// log is rejected. Tolerated regressions are re-sorted and renumbered from the
  /// smallest seq, with the old seq kept in meta["original_seq"].
  Timestamp regression_tolerance_ms = 0;
  /// Added to relative times in formats that record seconds since start.
  Timestamp base_time_ms = 0;
};

Session parse_log(std::istream& in, LogFormat format, const ParseOptions& options = {});
Session parse_log_file(const std::filesystem::path& path, LogFormat format,
                       const ParseOptions& options = {});

/// Canonical JSONL, one event per line.
void write_canonical(std::ostream& out, const Session& session);
std::string to_canonical(const Session& session);

/// Throws ParseError if any Session invariant does not hold.
void validate_session(const Session& session);

// Corpus loading: a JSONL file of {id,title,body} records or a directory of
// .txt files (stem = id, first line = title).
std::vector<Document> load_corpus(const std::filesystem::path& path);
std::vector<Document> parse_corpus_jsonl(std::istream& in);
void write_corpus_jsonl(std::ostream& out, std::span<const Document> docs);

}  // namespace provsum
