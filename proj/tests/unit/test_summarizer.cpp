#include <doctest.h>

#include <cstdio>

#include "provsum/pipeline.hpp"
#include "provsum/resources.hpp"
#include "provsum/summarizer.hpp"

using namespace provsum;

namespace {

InteractionEvent ev(std::int64_t seq, Timestamp ts, EventKind kind,
                    std::optional<std::string> doc = std::nullopt,
                    std::optional<std::string> text = std::nullopt) {
  InteractionEvent e;
  e.seq = seq;
  e.timestamp = ts;
  e.kind = kind;
  e.doc_id = std::move(doc);
  e.text = std::move(text);
  return e;
}

const SentenceTemplates& prose() {
  static const auto t = SentenceTemplates::parse(Resources::bundled().segment_template);
  return t;
}

const SentenceTemplates& overview_templates() {
  static const auto t = SentenceTemplates::parse(Resources::bundled().overview_template);
  return t;
}

Segment whole(const Session& s) {
  Segment seg;
  seg.start = 0;
  seg.end = 1;
  for (const auto& e : s.events) seg.member_event_seqs.push_back(e.seq);
  return seg;
}

SegmentSummary card(int index, Timestamp t0, Timestamp t1, std::size_t n_events, int searches,
                    int docs, std::vector<std::string> keywords = {}) {
  SegmentSummary s;
  s.segment_index = index;
  s.t_start_ms = t0;
  s.t_end_ms = t1;
  s.duration_ms = t1 - t0;
  s.n_events = n_events;
  if (searches > 0) s.counts["Search"] = searches;
  for (int i = 0; i < docs; ++i) s.docs_opened.push_back({"d" + std::to_string(i), ""});
  for (auto& k : keywords) s.keywords.push_back({k, 1.0});
  return s;
}

void check_spans(const std::string& text, const std::vector<TextSpan>& spans) {
  std::size_t prev_end = 0;
  for (const auto& span : spans) {
    CHECK(span.start <= span.end);
    CHECK(span.end <= text.size());
    CHECK(span.start >= prev_end);
    prev_end = span.end;
  }
}

}  // namespace

TEST_SUITE("summarizer") {
  TEST_CASE("format_duration") {
    CHECK(format_duration(0) == "0 seconds");
    CHECK(format_duration(1000) == "1 second");
    CHECK(format_duration(45000) == "45 seconds");
    CHECK(format_duration(59499) == "59 seconds");
    CHECK(format_duration(60000) == "1 minute");
    CHECK(format_duration(720000) == "12 minutes");
    CHECK(format_duration(3600000) == "1 hour");
    CHECK(format_duration(7500000) == "2 hours 5 minutes");
  }

  TEST_CASE("segment_keywords orders by weight then term") {
    const std::vector<std::string> texts{"alpha beta gamma delta"};
    const auto vocab = Vocabulary::from_texts(texts);
    REQUIRE(vocab.terms() == std::vector<std::string>{"alpha", "beta", "delta", "gamma"});
    const TermVector centroid({{0, 0.5}, {1, 0.5}, {2, 0.2}, {3, 0.7}});
    const auto top = segment_keywords(centroid, vocab, 3);
    REQUIRE(top.size() == 3);
    CHECK(top[0] == Keyword{"gamma", 0.7});
    CHECK(top[1] == Keyword{"alpha", 0.5});
    CHECK(top[2] == Keyword{"beta", 0.5});
    CHECK(segment_keywords(centroid, vocab, 10).size() == 4);
    CHECK(segment_keywords(TermVector{}, vocab, 3).empty());
    CHECK_THROWS_AS(segment_keywords(centroid, vocab, 0), InvalidArgument);
  }

  TEST_CASE("card fields, dwell and entities") {
    IndexedCorpus corpus({{"d1", "Harbor report", "Maria Perez met Viktor in Caracas."},
                          {"d2", "Customs memo", "Shipments moved through Lagos."},
                          {"d3", "Unrelated", "Nothing here."}});
    Session s;
    s.id = "s";
    s.events = {ev(1, 0, EventKind::Search, std::nullopt, "harbor shipments"),
                ev(2, 10000, EventKind::DocOpen, "d1"),
                ev(3, 40000, EventKind::DocOpen, "d2"),
                ev(4, 100000, EventKind::Note, std::nullopt, "ask about Caracas"),
                ev(5, 101000, EventKind::Other),
                ev(6, 102000, EventKind::DocOpen, "d1")};
    auto seg = whole(s);
    const TermVector* v1 = corpus.vector_of("d1");
    const TermVector* v2 = corpus.vector_of("d2");
    const TermVector* members[] = {v1, v2};
    seg.centroid = mean_vector(members);

    SummaryContext ctx(s, &corpus, corpus.vocabulary(), HeuristicEntityExtractor::standard(),
                       prose(), 4);
    const auto c = summarize_segment(ctx, seg, 0);

    CHECK(c.n_events == 6);
    CHECK(c.t_start_ms == 0);
    CHECK(c.t_end_ms == 102000);
    CHECK(c.duration_ms == 102000);
    CHECK(c.counts == std::map<std::string, int>{{"DocOpen", 3}, {"Note", 1}, {"Other", 1},
                                                 {"Search", 1}});
    CHECK(c.searches == std::vector<std::string>{"harbor shipments"});
    CHECK(c.notes == std::vector<std::string>{"ask about Caracas"});
    CHECK(c.highlights.empty());
    REQUIRE(c.docs_opened.size() == 2);
    CHECK(c.docs_opened[0] == OpenedDocument{"d1", "Harbor report"});
    CHECK(c.docs_opened[1] == OpenedDocument{"d2", "Customs memo"});
    // d1 held 30 s, d2 held 60 s; the final open has no successor.
    REQUIRE(c.avg_doc_dwell_ms.has_value());
    CHECK(*c.avg_doc_dwell_ms == 45000);
    CHECK(c.keywords.size() == 4);

    CHECK(c.people == std::vector<EntityCount>{{"Maria Perez", 1}, {"Viktor", 1}});
    CHECK(c.places == std::vector<EntityCount>{{"Caracas", 2}, {"Lagos", 1}});

    CHECK(c.prose.find("Segment #1 spans 2 minutes with 6 interactions.") == 0);
    CHECK(c.prose.find("45 seconds on average") != std::string::npos);
    CHECK(c.prose.find("They opened 2 documents: Harbor report and Customs memo.") !=
          std::string::npos);
    CHECK(c.prose.find("They left 1 note.") != std::string::npos);
    CHECK(c.prose.find("highlighted") == std::string::npos);
    check_spans(c.prose, c.prose_spans);
    for (const auto& span : c.prose_spans) CHECK(span.link_key.rfind("segment:0", 0) == 0);
  }

  TEST_CASE("many searches are abbreviated") {
    Session s;
    s.id = "s";
    for (int i = 0; i < 5; ++i) {
      s.events.push_back(ev(i + 1, i * 1000, EventKind::Search, std::nullopt,
                            "query" + std::to_string(i)));
    }
    SummaryContext ctx(s, nullptr, Vocabulary::from_texts(std::vector<std::string>{"query0"}),
                       HeuristicEntityExtractor::standard(), prose());
    const auto c = summarize_segment(ctx, whole(s), 2);
    CHECK(c.prose.find("Segment #3") == 0);
    CHECK(c.prose.find("ran 5 searches: query0, query1 and query2, among others.") !=
          std::string::npos);
    CHECK_FALSE(c.avg_doc_dwell_ms.has_value());
    CHECK(c.prose.find("attention") == std::string::npos);
  }

  TEST_CASE("unresolved documents fall back to their id") {
    Session s;
    s.id = "s";
    s.events = {ev(1, 0, EventKind::DocOpen, "x9"), ev(2, 5000, EventKind::Search, std::nullopt, "q")};
    IndexedCorpus corpus({{"d1", "T", "body"}});
    SummaryContext ctx(s, &corpus, corpus.vocabulary(), HeuristicEntityExtractor::standard(),
                       prose());
    const auto c = summarize_segment(ctx, whole(s), 0);
    REQUIRE(c.docs_opened.size() == 1);
    CHECK(c.docs_opened[0] == OpenedDocument{"x9", ""});
    CHECK(c.prose.find("1 document: x9.") != std::string::npos);
    CHECK(*c.avg_doc_dwell_ms == 5000);
  }

  TEST_CASE("overview statistics") {
    std::vector<Document> docs;
    for (int i = 0; i < 102; ++i) {
      char id[8];
      std::snprintf(id, sizeof id, "d%03d", i);
      docs.push_back({id, "title", "body text " + std::to_string(i)});
    }
    IndexedCorpus corpus(std::move(docs));
    Session s;
    s.id = "s";
    // Ten events over five minutes; five distinct resolvable documents.
    s.events = {ev(1, 0, EventKind::Search, std::nullopt, "harbor cargo"),
                ev(2, 30000, EventKind::DocOpen, "d001"),
                ev(3, 60000, EventKind::DocOpen, "d002"),
                ev(4, 90000, EventKind::DocOpen, "d001"),
                ev(5, 120000, EventKind::Search, std::nullopt, "cargo manifest"),
                ev(6, 150000, EventKind::DocOpen, "d010"),
                ev(7, 180000, EventKind::DocOpen, "zzz"),
                ev(8, 210000, EventKind::DocOpen, "d050"),
                ev(9, 240000, EventKind::Search, std::nullopt, "the cargo"),
                ev(10, 300000, EventKind::DocOpen, "d101")};
    std::vector<SegmentSummary> cards{card(0, 0, 120000, 5, 2, 2, {"cargo", "harbor"}),
                                      card(1, 150000, 300000, 5, 1, 4, {"cargo"})};
    const auto o = compute_overview(s, cards, &corpus, overview_templates());

    CHECK(o.n_events == 10);
    CHECK(o.n_searches == 3);
    CHECK(o.n_docs_opened_unique == 5);
    REQUIRE(o.corpus_size.has_value());
    CHECK(*o.corpus_size == 102);
    CHECK(o.pct_corpus_reviewed == doctest::Approx(5.0 / 102.0).epsilon(1e-12));
    CHECK(o.pct_corpus_reviewed == doctest::Approx(0.0490).epsilon(1e-3));
    CHECK(o.avg_interaction_rate == doctest::Approx(2.0));
    CHECK(o.n_keywords == 2);
    CHECK(o.n_segments == 2);
    CHECK(o.session_start_ms == 0);
    CHECK(o.session_end_ms == 300000);
    REQUIRE(o.top_search_terms.size() == 3);
    CHECK(o.top_search_terms[0] == TermCount{"cargo", 3});
    CHECK(o.top_search_terms[1] == TermCount{"harbor", 1});
    CHECK(o.top_search_terms[2] == TermCount{"manifest", 1});

    CHECK(o.superlatives.at("longest_duration") == 1);
    CHECK(o.superlatives.at("most_searches") == 0);
    CHECK(o.superlatives.at("most_documents") == 1);
    // 5 events / 2 min vs 5 events / 2.5 min.
    CHECK(o.superlatives.at("busiest_rate") == 0);

    REQUIRE(o.sentences.size() == 8);
    CHECK(o.sentences[0].text ==
          "The session contains 10 interactions over 5 minutes, about 2.0 per minute.");
    CHECK(o.sentences[1].text ==
          "The analyst ran 3 searches, most often for cargo, harbor and manifest.");
    CHECK(o.sentences[2].text ==
          "They opened 5 unique documents, reviewing 4.9% of the dataset.");
    CHECK(o.sentences[4].text == "Segment #2 was the longest period.");
    for (const auto& sentence : o.sentences) check_spans(sentence.text, sentence.spans);
  }

  TEST_CASE("overview without corpus or searches") {
    Session s;
    s.id = "s";
    s.events = {ev(1, 0, EventKind::DocOpen, "a"), ev(2, 1000, EventKind::DocOpen, "b")};
    std::vector<SegmentSummary> cards{card(0, 0, 1000, 2, 0, 2)};
    const auto o = compute_overview(s, cards, nullptr, overview_templates());
    CHECK_FALSE(o.corpus_size.has_value());
    CHECK(o.pct_corpus_reviewed == 0.0);
    CHECK(o.n_docs_opened_unique == 2);
    bool saw_docs = false;
    for (const auto& sentence : o.sentences) {
      CHECK(sentence.text.find("most searches") == std::string::npos);
      CHECK(sentence.text.find("reviewing") == std::string::npos);
      if (sentence.text == "They opened 2 unique documents.") saw_docs = true;
    }
    CHECK(saw_docs);
    CHECK(o.sentences[1].text == "The analyst ran 0 searches.");
  }

  TEST_CASE("superlative ties go to the earliest segment") {
    Session s;
    s.id = "s";
    s.events = {ev(1, 0, EventKind::Search, std::nullopt, "x")};
    std::vector<SegmentSummary> cards{card(0, 0, 60000, 4, 2, 3), card(1, 60000, 120000, 4, 2, 3),
                                      card(2, 120000, 180000, 4, 2, 3)};
    const auto o = compute_overview(s, cards, nullptr, overview_templates());
    for (const char* label : kSuperlativeLabels) CHECK(o.superlatives.at(label) == 0);
  }

  TEST_CASE("busiest rate floors zero-length segments at one second") {
    Session s;
    s.id = "s";
    s.events = {ev(1, 0, EventKind::Other)};
    // 3 events in 0 ms counts as 180/min; 10 events in 2 s is 300/min.
    std::vector<SegmentSummary> cards{card(0, 0, 0, 3, 0, 0), card(1, 0, 2000, 10, 0, 0)};
    const auto o = compute_overview(s, cards, nullptr, overview_templates());
    CHECK(o.superlatives.at("busiest_rate") == 1);
  }

  TEST_CASE("keyword link index") {
    std::vector<SegmentSummary> cards{card(0, 0, 1, 1, 0, 0, {"a", "b"}),
                                      card(1, 1, 2, 1, 0, 0, {"b", "c"}),
                                      card(2, 2, 3, 1, 0, 0, {"a"})};
    const auto index = keyword_link_index(cards);
    CHECK(index == std::map<std::string, std::vector<int>>{
                       {"a", {0, 2}}, {"b", {0, 1}}, {"c", {1}}});
    CHECK(keyword_link_index({}).empty());
  }
}
