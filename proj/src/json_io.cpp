#include "provsum/json_io.hpp"

#include "provsum/error.hpp"

namespace provsum {

using nlohmann::json;

namespace {

json span_json(const TextSpan& s) {
  return {{"start", s.start}, {"end", s.end}, {"slot", s.slot}, {"link_key", s.link_key}};
}

TextSpan span_from(const json& j) {
  return {j.at("start").get<std::size_t>(), j.at("end").get<std::size_t>(),
          j.at("slot").get<std::string>(), j.at("link_key").get<std::string>()};
}

json spans_json(const std::vector<TextSpan>& spans) {
  json out = json::array();
  for (const auto& s : spans) out.push_back(span_json(s));
  return out;
}

std::vector<TextSpan> spans_from(const json& j) {
  std::vector<TextSpan> out;
  for (const auto& s : j) out.push_back(span_from(s));
  return out;
}

json counts_json(const std::vector<EntityCount>& counts) {
  json out = json::array();
  for (const auto& c : counts) out.push_back({{"name", c.name}, {"count", c.count}});
  return out;
}

std::vector<EntityCount> counts_from(const json& j) {
  std::vector<EntityCount> out;
  for (const auto& c : j) out.push_back({c.at("name").get<std::string>(), c.at("count").get<int>()});
  return out;
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

}  // namespace

json to_json(const SegmentationParams& p) {
  return {{"max_segments", p.max_segments},
          {"min_gain_ratio", p.min_gain_ratio},
          {"min_segment_len", p.min_segment_len}};
}

SegmentationParams params_from_json(const json& j) {
  SegmentationParams p;
  p.max_segments = j.at("max_segments").get<int>();
  p.min_gain_ratio = j.at("min_gain_ratio").get<double>();
  p.min_segment_len = j.at("min_segment_len").get<int>();
  return p;
}

json to_json(const SegmentSummary& c) {
  json keywords = json::array();
  for (const auto& k : c.keywords) keywords.push_back({{"term", k.term}, {"weight", k.weight}});
  json docs = json::array();
  for (const auto& d : c.docs_opened) docs.push_back({{"doc_id", d.doc_id}, {"title", d.title}});
  return {{"segment_index", c.segment_index},
          {"start", c.start},
          {"end", c.end},
          {"t_start_ms", c.t_start_ms},
          {"t_end_ms", c.t_end_ms},
          {"n_events", c.n_events},
          {"keywords", keywords},
          {"people", counts_json(c.people)},
          {"places", counts_json(c.places)},
          {"searches", c.searches},
          {"docs_opened", docs},
          {"notes", c.notes},
          {"highlights", c.highlights},
          {"counts", c.counts},
          {"duration_ms", c.duration_ms},
          {"avg_doc_dwell_ms", optional_json(c.avg_doc_dwell_ms)},
          {"prose", c.prose},
          {"prose_spans", spans_json(c.prose_spans)}};
}

SegmentSummary card_from_json(const json& j) {
  SegmentSummary c;
  c.segment_index = j.at("segment_index").get<int>();
  c.start = j.at("start").get<std::size_t>();
  c.end = j.at("end").get<std::size_t>();
  c.t_start_ms = j.at("t_start_ms").get<Timestamp>();
  c.t_end_ms = j.at("t_end_ms").get<Timestamp>();
  c.n_events = j.at("n_events").get<std::size_t>();
  for (const auto& k : j.at("keywords")) {
    c.keywords.push_back({k.at("term").get<std::string>(), k.at("weight").get<double>()});
  }
  c.people = counts_from(j.at("people"));
  c.places = counts_from(j.at("places"));
  c.searches = j.at("searches").get<std::vector<std::string>>();
  for (const auto& d : j.at("docs_opened")) {
    c.docs_opened.push_back({d.at("doc_id").get<std::string>(), d.at("title").get<std::string>()});
  }
  c.notes = j.at("notes").get<std::vector<std::string>>();
  c.highlights = j.at("highlights").get<std::vector<std::string>>();
  c.counts = j.at("counts").get<std::map<std::string, int>>();
  c.duration_ms = j.at("duration_ms").get<Timestamp>();
  c.avg_doc_dwell_ms = optional_from<Timestamp>(j, "avg_doc_dwell_ms");
  c.prose = j.at("prose").get<std::string>();
  c.prose_spans = spans_from(j.at("prose_spans"));
  return c;
}

json to_json(const SessionOverview& o) {
  json terms = json::array();
  for (const auto& t : o.top_search_terms) terms.push_back({{"term", t.term}, {"count", t.count}});
  json sentences = json::array();
  for (const auto& s : o.sentences) {
    sentences.push_back({{"text", s.text}, {"spans", spans_json(s.spans)}});
  }
  return {{"n_events", o.n_events},
          {"n_searches", o.n_searches},
          {"n_docs_opened_unique", o.n_docs_opened_unique},
          {"n_keywords", o.n_keywords},
          {"n_segments", o.n_segments},
          {"corpus_size", optional_json(o.corpus_size)},
          {"pct_corpus_reviewed", o.pct_corpus_reviewed},
          {"top_search_terms", terms},
          {"avg_interaction_rate", o.avg_interaction_rate},
          {"session_start_ms", o.session_start_ms},
          {"session_end_ms", o.session_end_ms},
          {"superlatives", o.superlatives},
          {"sentences", sentences}};
}

SessionOverview overview_from_json(const json& j) {
  SessionOverview o;
  o.n_events = j.at("n_events").get<std::size_t>();
  o.n_searches = j.at("n_searches").get<std::size_t>();
  o.n_docs_opened_unique = j.at("n_docs_opened_unique").get<std::size_t>();
  o.n_keywords = j.at("n_keywords").get<std::size_t>();
  o.n_segments = j.at("n_segments").get<std::size_t>();
  o.corpus_size = optional_from<std::size_t>(j, "corpus_size");
  o.pct_corpus_reviewed = j.at("pct_corpus_reviewed").get<double>();
  for (const auto& t : j.at("top_search_terms")) {
    o.top_search_terms.push_back({t.at("term").get<std::string>(), t.at("count").get<int>()});
  }
  o.avg_interaction_rate = j.at("avg_interaction_rate").get<double>();
  o.session_start_ms = j.at("session_start_ms").get<Timestamp>();
  o.session_end_ms = j.at("session_end_ms").get<Timestamp>();
  o.superlatives = j.at("superlatives").get<std::map<std::string, int>>();
  for (const auto& s : j.at("sentences")) {
    o.sentences.push_back({s.at("text").get<std::string>(), spans_from(s.at("spans"))});
  }
  return o;
}

json to_json(const SummaryResponse& r) {
  json cards = json::array();
  for (const auto& c : r.cards) cards.push_back(to_json(c));
  return {{"session_id", r.session_id}, {"params", to_json(r.params)},
          {"degraded", r.degraded},     {"overview", to_json(r.overview)},
          {"cards", cards},             {"link_index", r.link_index},
          {"warnings", r.warnings}};
}

SummaryResponse response_from_json(const json& j) {
  try {
    SummaryResponse r;
    r.session_id = j.at("session_id").get<std::string>();
    r.params = params_from_json(j.at("params"));
    r.degraded = j.at("degraded").get<bool>();
    r.overview = overview_from_json(j.at("overview"));
    for (const auto& c : j.at("cards")) r.cards.push_back(card_from_json(c));
    r.link_index = j.at("link_index").get<std::map<std::string, std::vector<int>>>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed summary JSON: ") + e.what());
  }
}

json to_json(const InteractionEvent& e) {
  return {{"seq", e.seq},
          {"ts", e.timestamp},
          {"kind", std::string(to_string(e.kind))},
          {"doc_id", optional_json(e.doc_id)},
          {"text", optional_json(e.text)},
          {"meta", e.meta}};
}

std::string serialize(const SummaryResponse& response) {
  return to_json(response).dump(2) + "\n";
}

}  // namespace provsum
