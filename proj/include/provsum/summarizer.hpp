#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "provsum/entities.hpp"
#include "provsum/model.hpp"
#include "provsum/segmenter.hpp"
#include "provsum/template.hpp"
#include "provsum/textvec.hpp"

namespace provsum {

struct Keyword {
  std::string term;
  double weight = 0.0;

  bool operator==(const Keyword&) const = default;
};

struct OpenedDocument {
  std::string doc_id;
  std::string title;

  bool operator==(const OpenedDocument&) const = default;
};

struct SegmentSummary {
  int segment_index = 0;
  std::size_t start = 0;  // vector-sequence range
  std::size_t end = 0;
  Timestamp t_start_ms = 0;  // earliest and latest member event
  Timestamp t_end_ms = 0;
  std::size_t n_events = 0;

  std::vector<Keyword> keywords;
  std::vector<EntityCount> people;
  std::vector<EntityCount> places;
  std::vector<std::string> searches;
  std::vector<OpenedDocument> docs_opened;  // first-open order, no repeats
  std::vector<std::string> notes;
  std::vector<std::string> highlights;
  std::map<std::string, int> counts;  // event kind name -> count, non-zero only
  Timestamp duration_ms = 0;
  std::optional<Timestamp> avg_doc_dwell_ms;

  std::string prose;
  std::vector<TextSpan> prose_spans;

  bool operator==(const SegmentSummary&) const = default;
};

struct TermCount {
  std::string term;
  int count = 0;

  bool operator==(const TermCount&) const = default;
};

struct SessionOverview {
  std::size_t n_events = 0;
  std::size_t n_searches = 0;
  std::size_t n_docs_opened_unique = 0;
  std::size_t n_keywords = 0;  // distinct keyword terms across all cards
  std::size_t n_segments = 0;
  std::optional<std::size_t> corpus_size;
  double pct_corpus_reviewed = 0.0;
  std::vector<TermCount> top_search_terms;
  double avg_interaction_rate = 0.0;  // events per minute
  Timestamp session_start_ms = 0;
  Timestamp session_end_ms = 0;
  std::map<std::string, int> superlatives;  // label -> segment index
  std::vector<RenderedText> sentences;

  bool operator==(const SessionOverview&) const = default;
};

inline constexpr const char* kSuperlativeLabels[] = {"longest_duration", "most_searches",
                                                     "most_documents", "busiest_rate"};

/// Top-k centroid terms by weight, ties in lexicographic order.
std::vector<Keyword> segment_keywords(const TermVector& centroid, const Vocabulary& vocab,
                                      std::size_t k);

/// Everything shared by the per-segment summaries of one session.
class SummaryContext {
 public:
  SummaryContext(const Session& session, const IndexedCorpus* corpus, const Vocabulary& vocab,
                 const EntityExtractor& extractor, const SentenceTemplates& prose_templates,
                 std::size_t keywords_per_card = 8);

  const Session& session() const { return session_; }
  const IndexedCorpus* corpus() const { return corpus_; }
  const Vocabulary& vocabulary() const { return vocab_; }
  const EntityExtractor& extractor() const { return extractor_; }
  const SentenceTemplates& prose_templates() const { return templates_; }
  std::size_t keywords_per_card() const { return keywords_per_card_; }

  /// Position of an event in session.events.
  std::size_t event_index(std::int64_t seq) const { return event_index_.at(seq); }

 private:
  const Session& session_;
  const IndexedCorpus* corpus_;
  const Vocabulary& vocab_;
  const EntityExtractor& extractor_;
  const SentenceTemplates& templates_;
  std::size_t keywords_per_card_;
  std::unordered_map<std::int64_t, std::size_t> event_index_;
};

/// `segment.member_event_seqs` must already hold every member event.
SegmentSummary summarize_segment(const SummaryContext& ctx, const Segment& segment,
                                 int segment_index);

/// Statistics over the whole session; superlative ties go to the earliest
/// segment. `corpus` may be null, in which case pct_corpus_reviewed is 0.
SessionOverview compute_overview(const Session& session, std::span<const SegmentSummary> summaries,
                                 const IndexedCorpus* corpus,
                                 const SentenceTemplates& overview_templates,
                                 const Tokenizer& tokenizer = Tokenizer::standard());

/// term -> ascending indices of the segments listing it as a keyword.
std::map<std::string, std::vector<int>> keyword_link_index(
    std::span<const SegmentSummary> summaries);

/// "45 seconds", "12 minutes", "2 hours 5 minutes".
std::string format_duration(Timestamp ms);

}  // namespace provsum
