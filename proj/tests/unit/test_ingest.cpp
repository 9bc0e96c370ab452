#include <doctest.h>

#include <map>
#include <sstream>

#include "provsum/model.hpp"
#include "support.hpp"

using namespace provsum;

namespace {

std::map<EventKind, int> kind_counts(const Session& s) {
  std::map<EventKind, int> out;
  for (const auto& ev : s.events) ++out[ev.kind];
  return out;
}

Session parse_text(const std::string& text, LogFormat format, ParseOptions options = {}) {
  std::istringstream in(text);
  return parse_log(in, format, options);
}

}  // namespace

TEST_SUITE("ingest") {
  TEST_CASE("vast tool array") {
    ParseOptions options;
    options.base_time_ms = 1'000'000;
    auto s = parse_log_file(test::fixture("small/vast_tool.json"), LogFormat::VastTool, options);
    REQUIRE(s.events.size() == 18);
    auto counts = kind_counts(s);
    CHECK(counts[EventKind::Search] == 4);
    CHECK(counts[EventKind::DocOpen] == 9);
    CHECK(counts[EventKind::Highlight] == 2);
    CHECK(counts[EventKind::Note] == 2);
    CHECK(counts[EventKind::Other] == 1);

    CHECK(s.events[0].timestamp == 1'000'000);
    CHECK(*s.events[0].text == "rifles shipment");
    CHECK(*s.events[1].doc_id == "d01");
    CHECK(s.events[1].meta.at("duration") == "40");
    CHECK(s.events[2].timestamp == 1'052'500);
    CHECK(*s.events[3].text == "Viktor Petrov paid the port fees");
    CHECK(s.events[7].meta.at("note_id") == "n1");
    CHECK(s.events[8].meta.at("original_kind") == "Scroll");
    CHECK_FALSE(s.events[12].has_text());
    CHECK_NOTHROW(validate_session(s));
  }

  TEST_CASE("vast tool JSONL and record errors") {
    auto s = parse_text(R"({"InteractionType":"Search","Text":"a b","time":1})" "\n"
                        R"({"InteractionType":"Doc_open","ID":"d1","time":2})" "\n",
                        LogFormat::VastTool);
    CHECK(s.events.size() == 2);
    CHECK(s.events[1].kind == EventKind::DocOpen);

    try {
      parse_text(R"({"InteractionType":"Search","Text":"a","time":1})" "\n"
                 R"({"InteractionType":"Search","Text":"b"})" "\n",
                 LogFormat::VastTool);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_text("[{\"time\": 3}]", LogFormat::VastTool), ParseError);
  }

  TEST_CASE("vast tool: a search without text survives as Other") {
    auto s = parse_text(R"([{"InteractionType":"Search","Text":"","time":1}])", LogFormat::VastTool);
    REQUIRE(s.events.size() == 1);
    CHECK(s.events[0].kind == EventKind::Other);
  }

  TEST_CASE("conversation tool CSV") {
    auto s = parse_log_file(test::fixture("small/conversation.csv"), LogFormat::ConversationTool);
    REQUIRE(s.events.size() == 12);
    auto counts = kind_counts(s);
    CHECK(counts[EventKind::Search] == 4);
    CHECK(counts[EventKind::DocOpen] == 5);
    CHECK(counts[EventKind::AudioPlay] == 2);
    CHECK(counts[EventKind::Other] == 1);
    CHECK(s.analyst == "analyst7");

    CHECK(*s.events[0].text == "freighter, rifles");
    CHECK(s.events[0].timestamp == 1677661200000);
    CHECK(s.events[2].meta.at("position") == "call 1, part \"A\"");
    CHECK(s.events[4].timestamp == 1677661390500);
    CHECK(s.events[6].meta.at("original_kind") == "bookmark");
    CHECK(s.events[6].meta.at("item") == "d03");
    CHECK_NOTHROW(validate_session(s));
  }

  TEST_CASE("conversation tool errors") {
    CHECK_THROWS_AS(parse_text("when,what\n1,search\n", LogFormat::ConversationTool), ParseError);
    try {
      parse_text("timestamp,action,detail\n1,search,a\n2,search\n", LogFormat::ConversationTool);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    try {
      parse_text("timestamp,action,detail\nyesterday,search,a\n", LogFormat::ConversationTool);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_text("timestamp,action,detail\n1,search,\"open\n", LogFormat::ConversationTool),
                    ParseError);
  }

  TEST_CASE("conversation tool: quoted newline counts toward line numbers") {
    try {
      parse_text("timestamp,action,detail\n1,search,\"two\nlines\"\n2,search\n",
                 LogFormat::ConversationTool);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 4);
    }
  }

  TEST_CASE("query metadata") {
    auto s = parse_log_file(test::fixture("small/queries.jsonl"), LogFormat::QueryMetadata);
    REQUIRE(s.events.size() == 12);
    for (const auto& ev : s.events) CHECK(ev.kind == EventKind::Search);
    CHECK(s.analyst == "A1");
    CHECK(*s.events[0].text == "rifles shipment Caracas");
    CHECK(s.events[0].meta.at("result_count") == "14");
    CHECK(s.events[0].meta.at("requester") == "A1");
    CHECK(s.events[0].meta.at("justification") == "case 17");
    CHECK(s.events[1].meta.count("justification") == 0);
    CHECK(s.events[8].timestamp == 1700000480000);
    CHECK_NOTHROW(validate_session(s));
  }

  TEST_CASE("query metadata: bridge example") {
    auto s = parse_text(R"({"query":"bridge","results":14,"ts":77,"requester":"A1"})" "\n",
                        LogFormat::QueryMetadata);
    REQUIRE(s.events.size() == 1);
    CHECK(s.events[0].kind == EventKind::Search);
    CHECK(*s.events[0].text == "bridge");
    CHECK(s.events[0].meta.at("result_count") == "14");
  }

  TEST_CASE("query metadata errors and mixed requesters") {
    CHECK_THROWS_AS(parse_text(R"({"query":"","results":1,"ts":1})" "\n", LogFormat::QueryMetadata),
                    ParseError);
    CHECK_THROWS_AS(parse_text(R"({"query":"a","results":-1,"ts":1})" "\n", LogFormat::QueryMetadata),
                    ParseError);
    CHECK_THROWS_AS(parse_text(R"({"query":"a","results":1})" "\n", LogFormat::QueryMetadata),
                    ParseError);
    auto s = parse_text(R"({"query":"a","results":1,"ts":1,"requester":"A1"})" "\n"
                        R"({"query":"b","results":1,"ts":2,"requester":"B2"})" "\n",
                        LogFormat::QueryMetadata);
    CHECK_FALSE(s.analyst.has_value());
  }

  TEST_CASE("adapter totality: one event per input record") {
    struct Case {
      const char* file;
      LogFormat format;
      std::size_t records;
    };
    for (const auto& c : {Case{"small/vast_tool.json", LogFormat::VastTool, 18},
                          Case{"small/conversation.csv", LogFormat::ConversationTool, 12},
                          Case{"small/queries.jsonl", LogFormat::QueryMetadata, 12},
                          Case{"desk/session.jsonl", LogFormat::CanonicalJsonl, 600}}) {
      CAPTURE(c.file);
      auto s = parse_log_file(test::fixture(c.file), c.format);
      CHECK(s.events.size() == c.records);
    }
  }
}
