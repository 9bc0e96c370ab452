#include "provsum/summarizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace provsum {

namespace {

std::string plural_unit(long long n, const char* unit) {
  return std::to_string(n) + " " + unit + (n == 1 ? "" : "s");
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

template <class T, class F>
std::vector<std::string> names_of(const std::vector<T>& items, F&& f) {
  std::vector<std::string> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(f(item));
  return out;
}

double events_per_minute(std::size_t events, Timestamp duration_ms) {
  // Floors the span at one second so bursts of same-timestamp events stay finite.
  const double minutes = static_cast<double>(std::max<Timestamp>(duration_ms, 1000)) / 60000.0;
  return static_cast<double>(events) / minutes;
}

}  // namespace

std::string format_duration(Timestamp ms) {
  const auto seconds = static_cast<long long>(std::llround(static_cast<double>(ms) / 1000.0));
  if (seconds < 60) return plural_unit(seconds, "second");
  const auto minutes = static_cast<long long>(std::llround(static_cast<double>(seconds) / 60.0));
  if (minutes < 60) return plural_unit(minutes, "minute");
  const auto hours = minutes / 60;
  const auto rest = minutes % 60;
  if (rest == 0) return plural_unit(hours, "hour");
  return plural_unit(hours, "hour") + " " + plural_unit(rest, "minute");
}

std::vector<Keyword> segment_keywords(const TermVector& centroid, const Vocabulary& vocab,
                                      std::size_t k) {
  if (k == 0) throw InvalidArgument("keyword count must be at least 1");
  std::vector<Keyword> all;
  all.reserve(centroid.size());
  for (const auto& e : centroid.entries()) {
    if (e.weight > 0.0) all.push_back({vocab.term(e.term), e.weight});
  }
  const auto n = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(),
                    [](const Keyword& a, const Keyword& b) {
                      if (a.weight != b.weight) return a.weight > b.weight;
                      return a.term < b.term;
                    });
  all.resize(n);
  return all;
}

SummaryContext::SummaryContext(const Session& session, const IndexedCorpus* corpus,
                               const Vocabulary& vocab, const EntityExtractor& extractor,
                               const SentenceTemplates& prose_templates,
                               std::size_t keywords_per_card)
    : session_(session),
      corpus_(corpus),
      vocab_(vocab),
      extractor_(extractor),
      templates_(prose_templates),
      keywords_per_card_(keywords_per_card) {
  for (std::size_t i = 0; i < session.events.size(); ++i) {
    event_index_.emplace(session.events[i].seq, i);
  }
}

SegmentSummary summarize_segment(const SummaryContext& ctx, const Segment& segment,
                                 int segment_index) {
  const auto& events = ctx.session().events;
  SegmentSummary s;
  s.segment_index = segment_index;
  s.start = segment.start;
  s.end = segment.end;
  s.keywords = segment_keywords(segment.centroid, ctx.vocabulary(), ctx.keywords_per_card());

  std::vector<std::size_t> members;
  members.reserve(segment.member_event_seqs.size());
  for (auto seq : segment.member_event_seqs) members.push_back(ctx.event_index(seq));
  std::sort(members.begin(), members.end());
  s.n_events = members.size();

  std::string entity_text;
  std::set<std::string> docs_seen;
  std::set<std::string> entity_docs;
  Timestamp dwell_total = 0;
  std::size_t dwell_count = 0;
  bool first = true;

  for (auto idx : members) {
    const auto& ev = events[idx];
    ++s.counts[std::string(to_string(ev.kind))];
    if (first) {
      s.t_start_ms = s.t_end_ms = ev.timestamp;
      first = false;
    }
    s.t_start_ms = std::min(s.t_start_ms, ev.timestamp);
    s.t_end_ms = std::max(s.t_end_ms, ev.timestamp);

    switch (ev.kind) {
      case EventKind::Search:
        s.searches.push_back(*ev.text);
        break;
      case EventKind::Note:
        if (ev.has_text()) s.notes.push_back(*ev.text);
        break;
      case EventKind::Highlight:
        if (ev.has_text()) s.highlights.push_back(*ev.text);
        break;
      default:
        break;
    }
    if (ev.kind == EventKind::DocOpen) {
      if (idx + 1 < events.size()) {
        dwell_total += events[idx + 1].timestamp - ev.timestamp;
        ++dwell_count;
      }
      if (docs_seen.insert(*ev.doc_id).second) {
        const Document* doc = ctx.corpus() ? ctx.corpus()->find(*ev.doc_id) : nullptr;
        s.docs_opened.push_back({*ev.doc_id, doc ? doc->title : std::string()});
      }
    }
    if ((ev.kind == EventKind::DocOpen || ev.kind == EventKind::AudioPlay) && ev.doc_id &&
        ctx.corpus()) {
      const Document* doc = ctx.corpus()->find(*ev.doc_id);
      if (doc && entity_docs.insert(doc->id).second) {
        entity_text += document_text(*doc);
        entity_text += "\n";
      }
    }
    if (ev.kind != EventKind::Other && ev.has_text()) {
      entity_text += *ev.text;
      entity_text += "\n";
    }
  }
  s.duration_ms = s.t_end_ms - s.t_start_ms;
  if (dwell_count > 0) {
    s.avg_doc_dwell_ms = static_cast<Timestamp>(
        std::llround(static_cast<double>(dwell_total) / static_cast<double>(dwell_count)));
  }

  const auto mentions = ctx.extractor().extract(entity_text);
  s.people = count_entities(mentions, EntityKind::Person, 5);
  s.places = count_entities(mentions, EntityKind::Location, 5);

  const auto link = "segment:" + std::to_string(segment_index);
  const auto count_of = [&](EventKind k) -> std::int64_t {
    auto it = s.counts.find(std::string(to_string(k)));
    return it == s.counts.end() ? 0 : it->second;
  };
  SlotMap slots;
  slots["segment_number"] = SlotValue(segment_index + 1, link);
  slots["duration"] = SlotValue(format_duration(s.duration_ms), link + "/time");
  slots["n_events"] = SlotValue(s.n_events, link);
  slots["searches"] = SlotValue(s.searches, link + "/searches");
  slots["n_searches"] = SlotValue(count_of(EventKind::Search), link + "/searches");
  slots["has_searches"] = SlotValue(!s.searches.empty());
  slots["more_searches"] = SlotValue(s.searches.size() > 3);
  slots["docs"] = SlotValue(names_of(s.docs_opened,
                                     [](const OpenedDocument& d) {
                                       return d.title.empty() ? d.doc_id : d.title;
                                     }),
                            link + "/docs");
  slots["n_docs"] = SlotValue(s.docs_opened.size(), link + "/docs");
  slots["has_docs"] = SlotValue(!s.docs_opened.empty());
  slots["more_docs"] = SlotValue(s.docs_opened.size() > 3);
  slots["has_dwell"] = SlotValue(s.avg_doc_dwell_ms.has_value());
  slots["avg_dwell"] =
      SlotValue(format_duration(s.avg_doc_dwell_ms.value_or(0)), link + "/docs");
  slots["keywords"] =
      SlotValue(names_of(s.keywords, [](const Keyword& k) { return k.term; }), link + "/keywords");
  slots["has_keywords"] = SlotValue(!s.keywords.empty());
  slots["people"] =
      SlotValue(names_of(s.people, [](const EntityCount& e) { return e.name; }), link + "/people");
  slots["has_people"] = SlotValue(!s.people.empty());
  slots["places"] =
      SlotValue(names_of(s.places, [](const EntityCount& e) { return e.name; }), link + "/places");
  slots["has_places"] = SlotValue(!s.places.empty());
  slots["n_notes"] = SlotValue(count_of(EventKind::Note), link + "/notes");
  slots["has_notes"] = SlotValue(count_of(EventKind::Note) > 0);
  slots["n_highlights"] = SlotValue(count_of(EventKind::Highlight), link + "/highlights");
  slots["has_highlights"] = SlotValue(count_of(EventKind::Highlight) > 0);

  auto prose = ctx.prose_templates().render_joined(slots);
  s.prose = std::move(prose.text);
  s.prose_spans = std::move(prose.spans);
  return s;
}

SessionOverview compute_overview(const Session& session, std::span<const SegmentSummary> summaries,
                                 const IndexedCorpus* corpus,
                                 const SentenceTemplates& overview_templates,
                                 const Tokenizer& tokenizer) {
  SessionOverview o;
  o.n_events = session.events.size();
  o.n_segments = summaries.size();
  o.session_start_ms = session.start_time();
  o.session_end_ms = session.end_time();

  std::set<std::string> opened;
  std::map<std::string, int> term_counts;
  for (const auto& ev : session.events) {
    if (ev.kind == EventKind::Search) {
      ++o.n_searches;
      for (const auto& t : tokenizer.tokenize(*ev.text)) ++term_counts[t];
    } else if (ev.kind == EventKind::DocOpen && (!corpus || corpus->find(*ev.doc_id))) {
      opened.insert(*ev.doc_id);
    }
  }
  o.n_docs_opened_unique = opened.size();
  if (corpus) {
    o.corpus_size = corpus->size();
    o.pct_corpus_reviewed =
        static_cast<double>(o.n_docs_opened_unique) / static_cast<double>(corpus->size());
  }

  for (const auto& [term, count] : term_counts) o.top_search_terms.push_back({term, count});
  std::stable_sort(o.top_search_terms.begin(), o.top_search_terms.end(),
                   [](const TermCount& a, const TermCount& b) { return a.count > b.count; });
  if (o.top_search_terms.size() > 5) o.top_search_terms.resize(5);

  const auto duration = session.duration_ms();
  o.avg_interaction_rate =
      duration > 0 ? static_cast<double>(o.n_events) / (static_cast<double>(duration) / 60000.0)
                   : 0.0;

  std::set<std::string> keyword_terms;
  for (const auto& s : summaries) {
    for (const auto& k : s.keywords) keyword_terms.insert(k.term);
  }
  o.n_keywords = keyword_terms.size();

  // Superlatives: strict '>' keeps the earliest segment on ties.
  auto argmax = [&](auto&& metric) {
    int best = 0;
    for (std::size_t i = 1; i < summaries.size(); ++i) {
      if (metric(summaries[i]) > metric(summaries[static_cast<std::size_t>(best)])) {
        best = static_cast<int>(i);
      }
    }
    return summaries.empty() ? 0 : summaries[static_cast<std::size_t>(best)].segment_index;
  };
  auto search_count = [](const SegmentSummary& s) {
    auto it = s.counts.find("Search");
    return it == s.counts.end() ? 0 : it->second;
  };
  if (!summaries.empty()) {
    o.superlatives["longest_duration"] = argmax([](const SegmentSummary& s) { return s.duration_ms; });
    o.superlatives["most_searches"] = argmax(search_count);
    o.superlatives["most_documents"] =
        argmax([](const SegmentSummary& s) { return s.docs_opened.size(); });
    o.superlatives["busiest_rate"] = argmax(
        [](const SegmentSummary& s) { return events_per_minute(s.n_events, s.duration_ms); });
  }

  SlotMap slots;
  slots["n_events"] = SlotValue(o.n_events, "session/events");
  slots["duration"] = SlotValue(format_duration(duration), "session/time");
  slots["rate"] = SlotValue(format_fixed(o.avg_interaction_rate, 1), "session/rate");
  slots["n_searches"] = SlotValue(o.n_searches, "session/searches");
  std::vector<std::string> top_terms;
  for (const auto& t : o.top_search_terms) top_terms.push_back(t.term);
  slots["has_top_terms"] = SlotValue(!top_terms.empty());
  slots["top_terms"] = SlotValue(top_terms, "session/search_terms");
  slots["has_corpus"] = SlotValue(corpus != nullptr);
  slots["no_corpus"] = SlotValue(corpus == nullptr);
  slots["n_docs"] = SlotValue(o.n_docs_opened_unique, "session/docs");
  slots["pct_reviewed"] = SlotValue(format_fixed(100.0 * o.pct_corpus_reviewed, 1) + "%",
                                    "session/coverage");
  slots["n_keywords"] = SlotValue(o.n_keywords, "session/keywords");
  slots["n_segments"] = SlotValue(o.n_segments, "session/segments");
  slots["any_searches"] = SlotValue(o.n_searches > 0);
  slots["any_docs"] = SlotValue(o.n_docs_opened_unique > 0);
  for (const char* label : kSuperlativeLabels) {
    const int idx = o.superlatives.count(label) ? o.superlatives.at(label) : 0;
    slots[label] = SlotValue(idx + 1, "segment:" + std::to_string(idx));
  }
  o.sentences = overview_templates.render_each(slots);
  return o;
}

std::map<std::string, std::vector<int>> keyword_link_index(
    std::span<const SegmentSummary> summaries) {
  std::map<std::string, std::vector<int>> index;
  for (const auto& s : summaries) {
    for (const auto& k : s.keywords) {
      auto& list = index[k.term];
      if (list.empty() || list.back() != s.segment_index) list.push_back(s.segment_index);
    }
  }
  for (auto& [term, list] : index) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return index;
}

}  // namespace provsum
