#include "provsum/pipeline.hpp"

namespace provsum {

namespace {

/// One segment spanning the whole session, for sessions with nothing to vectorize.
Segment whole_session_segment(const Session& session) {
  Segment seg;
  seg.t_start = session.start_time();
  seg.t_end = session.end_time();
  for (const auto& ev : session.events) seg.member_event_seqs.push_back(ev.seq);
  return seg;
}

}  // namespace

PipelineResult run_pipeline(const Session& session, const IndexedCorpus* corpus,
                            const SegmentationParams& params, const PipelineAssets& assets) {
  params.validate();

  PipelineResult result;
  auto& response = result.response;
  response.session_id = session.id;
  response.params = params;

  const IndexedCorpus* effective = corpus;
  if (corpus == nullptr) {
    response.warnings.push_back(
        "degraded mode: no corpus in workspace, segmenting on interaction text only");
  } else if (!session.events.empty() && count_resolvable(*corpus, session) == 0) {
    effective = nullptr;
    response.warnings.push_back(
        "degraded mode: no event references a corpus document, segmenting on interaction "
        "text only");
  }

  VectorizedSession vectorized = vectorize_session(effective, session);
  response.degraded = vectorized.degraded();
  response.warnings.insert(response.warnings.end(), vectorized.warnings.begin(),
                           vectorized.warnings.end());

  if (vectorized.sequence.empty()) {
    response.warnings.push_back("no vectorizable events, showing the session as one segment");
    result.segments.push_back(whole_session_segment(session));
  } else {
    result.segments = assign_all_events(session, vectorized.sequence,
                                        binary_segmentation(vectorized.sequence, params));
  }

  SummaryContext ctx(session, effective, vectorized.vocabulary(), assets.extractor,
                     assets.prose_templates, assets.keywords_per_card);
  for (std::size_t i = 0; i < result.segments.size(); ++i) {
    response.cards.push_back(summarize_segment(ctx, result.segments[i], static_cast<int>(i)));
  }
  response.overview = compute_overview(session, response.cards, effective,
                                       assets.overview_templates);
  response.link_index = keyword_link_index(response.cards);
  return result;
}

}  // namespace provsum
