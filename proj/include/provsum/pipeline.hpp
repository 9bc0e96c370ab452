#pragma once

#include <map>
#include <string>
#include <vector>

#include "provsum/entities.hpp"
#include "provsum/segmenter.hpp"
#include "provsum/summarizer.hpp"
#include "provsum/template.hpp"

namespace provsum {

/// The wire shape served by the API and written by `export json`.
struct SummaryResponse {
  std::string session_id;
  SegmentationParams params;
  bool degraded = false;
  SessionOverview overview;
  std::vector<SegmentSummary> cards;  // ordered by segment start
  std::map<std::string, std::vector<int>> link_index;
  std::vector<std::string> warnings;

  bool operator==(const SummaryResponse&) const = default;
};

struct PipelineResult {
  SummaryResponse response;
  /// Segments parallel to response.cards, with every member event assigned.
  std::vector<Segment> segments;
};

/// Read-only inputs shared by every pipeline run.
struct PipelineAssets {
  const EntityExtractor& extractor;
  const SentenceTemplates& prose_templates;
  const SentenceTemplates& overview_templates;
  std::size_t keywords_per_card = 8;
};

/// vectorize -> segment -> assign events -> summarize cards -> overview ->
/// keyword link index. Falls back to text-only vectors (degraded mode) when
/// `corpus` is null or none of the session's document references resolve.
PipelineResult run_pipeline(const Session& session, const IndexedCorpus* corpus,
                            const SegmentationParams& params, const PipelineAssets& assets);

}  // namespace provsum
