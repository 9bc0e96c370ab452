#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "provsum/model.hpp"
#include "provsum/textvec.hpp"

namespace provsum {

struct VectorItem {
  std::int64_t event_seq = 0;
  Timestamp timestamp = 0;
  TermVector vector;
};

/// The vectorizable events of a session, in event order.
class VectorSequence {
 public:
  void push_back(VectorItem item);

  const std::vector<VectorItem>& items() const { return items_; }
  const VectorItem& operator[](std::size_t i) const { return items_[i]; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::optional<std::size_t> position_of(std::int64_t event_seq) const;

 private:
  std::vector<VectorItem> items_;
  std::unordered_map<std::int64_t, std::size_t> index_map_;
};

struct VectorizedSession {
  VectorSequence sequence;
  /// Set in degraded mode: built from the session's own event texts.
  std::optional<Vocabulary> text_vocabulary;
  const IndexedCorpus* corpus = nullptr;
  std::vector<std::string> warnings;

  bool degraded() const { return text_vocabulary.has_value(); }
  const Vocabulary& vocabulary() const;
};

/// DocOpen and AudioPlay events take the TF-IDF vector of their document;
/// Search, Highlight and Note events are vectorized from their own text.
/// Without a corpus (degraded mode) only text-bearing events are vectorized,
/// against a vocabulary built from those texts. Events that yield no vector
/// are left out of the sequence.
VectorizedSession vectorize_session(const IndexedCorpus* corpus, const Session& session);

/// Number of events in `session` whose doc_id resolves in `corpus`.
std::size_t count_resolvable(const IndexedCorpus& corpus, const Session& session);

struct SegmentationParams {
  int max_segments = 11;
  double min_gain_ratio = 1e-3;
  int min_segment_len = 3;

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
  bool operator==(const SegmentationParams&) const = default;
};

struct Segment {
  std::size_t start = 0;  // inclusive position in the vector sequence
  std::size_t end = 0;    // exclusive
  Timestamp t_start = 0;
  Timestamp t_end = 0;
  TermVector centroid;
  std::vector<std::int64_t> member_event_seqs;
};

struct AcceptedSplit {
  std::size_t position = 0;
  std::size_t parent_start = 0;
  std::size_t parent_end = 0;
  double gain = 0.0;
};

struct SegmentationResult {
  std::vector<Segment> segments;
  std::vector<AcceptedSplit> splits;  // in acceptance order
  double total_cost = 0.0;
  double gain_threshold = 0.0;

  /// Start positions of every segment but the first, ascending.
  std::vector<std::size_t> breakpoints() const;
};

/// Gains closer than this fraction of the sequence's total squared norm to
/// the best gain are ties, resolved by the earliest split position.
inline constexpr double kRelativeTieTolerance = 1e-10;

/// Within-range scatter: sum of squared L2 distances to the range mean.
double cost(const VectorSequence& seq, std::size_t a, std::size_t b);

/// Greedy binary segmentation. Each round splits the segment and position
/// with the largest scatter reduction; stops at `max_segments` or when the
/// best reduction falls below `min_gain_ratio` times the whole-sequence cost.
SegmentationResult segment_sequence(const VectorSequence& seq, const SegmentationParams& params);

std::vector<Segment> binary_segmentation(const VectorSequence& seq,
                                         const SegmentationParams& params);

/// Fills member_event_seqs with every session event. Vectorized events go to
/// the segment holding their position; the rest are placed by timestamp (a
/// boundary tie or a gap between segments goes to the earlier segment, events
/// outside all spans go to the first or last segment).
std::vector<Segment> assign_all_events(const Session& session, const VectorSequence& seq,
                                       std::vector<Segment> segments);

}  // namespace provsum
