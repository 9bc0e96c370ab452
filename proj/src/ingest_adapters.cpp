// Adapters that translate tool-specific interaction logs into Sessions.
//
// vast_tool          JSON array (or JSONL) of {InteractionType, ID, Text, time}
//                    records; `time` is seconds since session start.
// conversation_tool  CSV with a header naming timestamp,user,action,item,detail.
// query_metadata     JSONL of {query, results, ts, requester, justification}.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

#include "detail/log_common.hpp"

namespace provsum::detail {

namespace {

std::string squash(std::string_view s) {
  std::string out;
  for (unsigned char c : s) {
    if (c == ' ' || c == '_' || c == '-') continue;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::string json_string_or_empty(const nlohmann::json& record, const char* key) {
  auto it = record.find(key);
  if (it == record.end() || it->is_null()) return {};
  return it->is_string() ? it->get<std::string>() : it->dump();
}

// ---------------------------------------------------------------- vast_tool

InteractionEvent map_vast_record(const nlohmann::json& record, std::int64_t seq,
                                 std::size_t line, const ParseOptions& options) {
  if (!record.is_object()) throw ParseError(line, "record is not a JSON object");
  auto type_it = record.find("InteractionType");
  if (type_it == record.end() || !type_it->is_string()) {
    throw ParseError(line, "missing string field 'InteractionType'");
  }
  auto time_it = record.find("time");
  if (time_it == record.end() || !time_it->is_number()) {
    throw ParseError(line, "missing numeric field 'time'");
  }
  const double seconds = time_it->get<double>();
  if (!std::isfinite(seconds)) throw ParseError(line, "non-finite 'time'");

  const auto type = type_it->get<std::string>();
  const auto id = json_string_or_empty(record, "ID");
  const auto text = json_string_or_empty(record, "Text");

  InteractionEvent ev;
  ev.seq = seq;
  ev.timestamp = options.base_time_ms + static_cast<Timestamp>(std::llround(seconds * 1000.0));
  if (auto it = record.find("duration"); it != record.end() && it->is_number()) {
    ev.meta["duration"] = it->dump();
  }

  const auto key = squash(type);
  if ((key == "docopen" || key == "opendocument" || key == "open") && !id.empty()) {
    ev.kind = EventKind::DocOpen;
    ev.doc_id = id;
  } else if (key == "search" && !text.empty()) {
    ev.kind = EventKind::Search;
    ev.text = text;
  } else if (key == "highlight" || key == "highlighting") {
    ev.kind = EventKind::Highlight;
    if (!id.empty()) ev.doc_id = id;
    if (!text.empty()) ev.text = text;
  } else if (key == "addnote" || key == "note" || key == "createnote" || key == "notes") {
    ev.kind = EventKind::Note;
    if (!text.empty()) ev.text = text;
    if (!id.empty()) ev.meta["note_id"] = id;
  } else {
    ev.kind = EventKind::Other;
    ev.meta["original_kind"] = type;
    if (!id.empty()) ev.meta["id"] = id;
    ev.text = text.empty() ? record.dump() : text;
  }
  return ev;
}

// ----------------------------------------------------------- CSV (RFC 4180)

struct CsvRow {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

std::vector<CsvRow> read_csv(std::istream& in) {
  const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  std::size_t line = 1;
  row.line = line;
  bool quoted = false;
  bool field_started = false;

  auto end_field = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    const bool blank = row.fields.size() == 1 && row.fields[0].empty();
    if (!blank) rows.push_back(std::move(row));
    row = CsvRow{};
    row.line = line;
  };

  for (std::size_t i = 0; i < data.size(); ++i) {
    const char c = data[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < data.size() && data[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started) throw ParseError(line, "unexpected quote inside unquoted field");
        quoted = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        end_row();
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (quoted) throw ParseError(line, "unterminated quoted field");
  if (field_started || !row.fields.empty()) end_row();
  return rows;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  Timestamp value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc() && ptr == text.data() + text.size()) return value;

  // YYYY-MM-DDTHH:MM:SS[.fff]Z
  std::tm tm{};
  std::istringstream in{std::string(text)};
  in >> std::get_time(&tm, "%Y-%m-%dT%H:%M:%S");
  if (in.fail()) return std::nullopt;
  Timestamp millis = 0;
  if (in.peek() == '.') {
    in.get();
    int digits = 0;
    while (std::isdigit(in.peek())) {
      const int d = in.get() - '0';
      if (digits < 3) millis = millis * 10 + d;
      ++digits;
    }
    if (digits == 0) return std::nullopt;
    for (; digits < 3; ++digits) millis *= 10;
  }
  std::string rest;
  in >> rest;
  if (!rest.empty() && rest != "Z") return std::nullopt;
  const std::time_t seconds = timegm(&tm);
  return static_cast<Timestamp>(seconds) * 1000 + millis;
}

Session parse_vast_tool(std::istream& in, const ParseOptions& options) {
  const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::vector<PendingEvent> pending;
  std::int64_t seq = 0;

  const auto first = data.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && data[first] == '[') {
    nlohmann::json records;
    try {
      records = nlohmann::json::parse(data);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(1, std::string("invalid JSON: ") + e.what());
    }
    // Array records carry no line numbers; report the 1-based record index.
    for (std::size_t i = 0; i < records.size(); ++i) {
      auto ev = map_vast_record(records[i], ++seq, i + 1, options);
      pending.push_back({std::move(ev), i + 1});
    }
  } else {
    std::istringstream lines(data);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
      ++line_no;
      if (is_blank(line)) continue;
      nlohmann::json record;
      try {
        record = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
      }
      auto ev = map_vast_record(record, ++seq, line_no, options);
      pending.push_back({std::move(ev), line_no});
    }
  }

  Session session;
  session.id = options.session_id;
  session.events = order_events(std::move(pending), options.regression_tolerance_ms);
  return session;
}

Session parse_conversation_tool(std::istream& in, const ParseOptions& options) {
  auto rows = read_csv(in);
  Session session;
  session.id = options.session_id;
  if (rows.empty()) return session;

  const auto& header = rows.front().fields;
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (squash(header[i]) == name) return i;
    }
    return std::nullopt;
  };
  const auto ts_col = column("timestamp");
  const auto action_col = column("action");
  if (!ts_col || !action_col) {
    throw ParseError(rows.front().line, "header must name 'timestamp' and 'action' columns");
  }
  const auto user_col = column("user");
  const auto item_col = column("item");
  const auto detail_col = column("detail");

  std::vector<PendingEvent> pending;
  std::int64_t seq = 0;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != header.size()) {
      throw ParseError(row.line, "expected " + std::to_string(header.size()) + " fields, got " +
                                     std::to_string(row.fields.size()));
    }
    auto get = [&](const std::optional<std::size_t>& col) -> std::string {
      return col ? row.fields[*col] : std::string();
    };
    const auto ts = parse_timestamp(get(ts_col));
    if (!ts) throw ParseError(row.line, "unparseable timestamp '" + get(ts_col) + "'");

    const auto action = get(action_col);
    const auto item = get(item_col);
    const auto detail = get(detail_col);
    const auto user = get(user_col);
    if (!session.analyst && !user.empty()) session.analyst = user;

    InteractionEvent ev;
    ev.seq = ++seq;
    ev.timestamp = *ts;
    const auto key = squash(action);
    if (key == "search" && !detail.empty()) {
      ev.kind = EventKind::Search;
      ev.text = detail;
    } else if ((key == "opentranscript" || key == "open") && !item.empty()) {
      ev.kind = EventKind::DocOpen;
      ev.doc_id = item;
    } else if ((key == "playaudio" || key == "play") && !item.empty()) {
      ev.kind = EventKind::AudioPlay;
      ev.doc_id = item;
      if (!detail.empty()) ev.meta["position"] = detail;
    } else {
      ev.kind = EventKind::Other;
      ev.meta["original_kind"] = action;
      if (!item.empty()) ev.meta["item"] = item;
      ev.text = detail.empty() ? action : detail;
    }
    if (!user.empty() && session.analyst && user != *session.analyst) ev.meta["user"] = user;
    pending.push_back({std::move(ev), row.line});
  }
  session.events = order_events(std::move(pending), options.regression_tolerance_ms);
  return session;
}

Session parse_query_metadata(std::istream& in, const ParseOptions& options) {
  std::vector<PendingEvent> pending;
  std::string line;
  std::size_t line_no = 0;
  std::int64_t seq = 0;
  std::optional<std::string> requester;
  bool single_requester = true;

  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!record.is_object()) throw ParseError(line_no, "record is not a JSON object");

    QueryRecord q;
    auto query_it = record.find("query");
    if (query_it == record.end() || !query_it->is_string() ||
        query_it->get<std::string>().empty()) {
      throw ParseError(line_no, "field 'query' must be a non-empty string");
    }
    q.query = query_it->get<std::string>();

    auto results_it = record.find("results");
    if (results_it == record.end() || !results_it->is_number_integer() ||
        results_it->get<std::int64_t>() < 0) {
      throw ParseError(line_no, "field 'results' must be a non-negative integer");
    }
    q.result_count = results_it->get<std::int64_t>();

    auto ts_it = record.find("ts");
    std::optional<Timestamp> ts;
    if (ts_it != record.end()) {
      if (ts_it->is_number_integer()) ts = ts_it->get<Timestamp>();
      else if (ts_it->is_string()) ts = parse_timestamp(ts_it->get<std::string>());
    }
    if (!ts) throw ParseError(line_no, "field 'ts' must be integer ms or an ISO-8601 string");
    q.timestamp = *ts;

    q.requester = json_string_or_empty(record, "requester");
    if (auto j = json_string_or_empty(record, "justification"); !j.empty()) {
      q.justification = j;
    }

    if (!requester) requester = q.requester;
    else if (*requester != q.requester) single_requester = false;

    pending.push_back({to_event(q, ++seq), line_no});
  }

  Session session;
  session.id = options.session_id;
  if (requester && single_requester && !requester->empty()) session.analyst = requester;
  session.events = order_events(std::move(pending), options.regression_tolerance_ms);
  return session;
}

}  // namespace provsum::detail
