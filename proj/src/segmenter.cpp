#include "provsum/segmenter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace provsum {

void VectorSequence::push_back(VectorItem item) {
  index_map_[item.event_seq] = items_.size();
  items_.push_back(std::move(item));
}

std::optional<std::size_t> VectorSequence::position_of(std::int64_t event_seq) const {
  auto it = index_map_.find(event_seq);
  if (it == index_map_.end()) return std::nullopt;
  return it->second;
}

const Vocabulary& VectorizedSession::vocabulary() const {
  if (text_vocabulary) return *text_vocabulary;
  if (corpus == nullptr) throw Error("vectorized session has no vocabulary");
  return corpus->vocabulary();
}

namespace {

bool is_text_event(const InteractionEvent& ev) {
  return (ev.kind == EventKind::Search || ev.kind == EventKind::Highlight ||
          ev.kind == EventKind::Note) &&
         ev.has_text();
}

bool is_doc_event(const InteractionEvent& ev) {
  return (ev.kind == EventKind::DocOpen || ev.kind == EventKind::AudioPlay) && ev.doc_id;
}

}  // namespace

std::size_t count_resolvable(const IndexedCorpus& corpus, const Session& session) {
  return static_cast<std::size_t>(std::count_if(
      session.events.begin(), session.events.end(),
      [&](const InteractionEvent& ev) { return ev.doc_id && corpus.find(*ev.doc_id); }));
}

VectorizedSession vectorize_session(const IndexedCorpus* corpus, const Session& session) {
  VectorizedSession out;
  out.corpus = corpus;

  if (corpus == nullptr) {
    std::vector<std::string> texts;
    for (const auto& ev : session.events) {
      if (is_text_event(ev)) texts.push_back(*ev.text);
    }
    out.text_vocabulary = Vocabulary::from_texts(texts);
    for (const auto& ev : session.events) {
      if (!is_text_event(ev)) continue;
      auto v = tfidf(*out.text_vocabulary, *ev.text);
      if (!v.empty()) out.sequence.push_back({ev.seq, ev.timestamp, std::move(v)});
    }
    return out;
  }

  std::map<std::string, std::size_t> unresolved;
  for (const auto& ev : session.events) {
    if (is_doc_event(ev)) {
      if (const auto* v = corpus->vector_of(*ev.doc_id)) {
        if (!v->empty()) out.sequence.push_back({ev.seq, ev.timestamp, *v});
      } else {
        ++unresolved[*ev.doc_id];
      }
    } else if (is_text_event(ev)) {
      auto v = tfidf(corpus->vocabulary(), *ev.text, corpus->tokenizer());
      if (!v.empty()) out.sequence.push_back({ev.seq, ev.timestamp, std::move(v)});
    }
  }
  for (const auto& [doc_id, count] : unresolved) {
    out.warnings.push_back("unresolved doc_id '" + doc_id + "' referenced by " +
                           std::to_string(count) + (count == 1 ? " event" : " events"));
  }
  return out;
}

void SegmentationParams::validate() const {
  if (max_segments < 1) throw InvalidArgument("max_segments must be at least 1");
  if (!(min_gain_ratio >= 0.0) || !std::isfinite(min_gain_ratio)) {
    throw InvalidArgument("min_gain_ratio must be a finite non-negative number");
  }
  if (min_segment_len < 1) throw InvalidArgument("min_segment_len must be at least 1");
}

std::vector<std::size_t> SegmentationResult::breakpoints() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < segments.size(); ++i) out.push_back(segments[i].start);
  return out;
}

double cost(const VectorSequence& seq, std::size_t a, std::size_t b) {
  if (a >= b || b > seq.size()) throw InvalidArgument("cost range must satisfy 0 <= a < b <= n");
  if (b - a == 1) return 0.0;
  std::map<TermId, double> mean;
  for (std::size_t i = a; i < b; ++i) {
    for (const auto& e : seq[i].vector.entries()) mean[e.term] += e.weight;
  }
  const double m = static_cast<double>(b - a);
  for (auto& [term, w] : mean) w /= m;

  double total = 0.0;
  for (std::size_t i = a; i < b; ++i) {
    const auto& v = seq[i].vector;
    double d = 0.0;
    for (const auto& [term, mu] : mean) {
      const double diff = v.weight(term) - mu;
      d += diff * diff;
    }
    total += d;
  }
  return total;
}

namespace {

// Sparse rows over a compacted column space, plus the scratch buffers used to
// scan a segment's split points in time linear in its non-zeros.
class ScatterEngine {
 public:
  explicit ScatterEngine(const VectorSequence& seq) {
    std::map<TermId, std::uint32_t> columns;
    for (const auto& item : seq.items()) {
      for (const auto& e : item.vector.entries()) columns.emplace(e.term, 0);
    }
    std::uint32_t next = 0;
    for (auto& [term, col] : columns) col = next++;

    rows_.resize(seq.size());
    sq_norms_.resize(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
      for (const auto& e : seq[i].vector.entries()) {
        rows_[i].push_back({columns[e.term], e.weight});
        sq_norms_[i] += e.weight * e.weight;
      }
    }
    left_.assign(next, 0.0);
    right_.assign(next, 0.0);
    seen_.assign(next, 0);
  }

  double total_sq_norm() const {
    double s = 0.0;
    for (double v : sq_norms_) s += v;
    return s;
  }

  double cost(std::size_t a, std::size_t b) {
    double sq = 0.0;
    for (std::size_t i = a; i < b; ++i) {
      sq += sq_norms_[i];
      for (const auto& [col, w] : rows_[i]) right_[col] += w;
    }
    const double tt = squared_sum(a, b);
    for (std::size_t i = a; i < b; ++i) {
      for (const auto& [col, w] : rows_[i]) right_[col] = 0.0;
    }
    return std::max(0.0, sq - tt / static_cast<double>(b - a));
  }

  /// gains[k] is the gain of splitting [a,b) at a + min_len + k.
  std::vector<double> split_gains(std::size_t a, std::size_t b, std::size_t min_len) {
    std::vector<double> gains;
    const std::size_t m = b - a;
    if (m < 2 * min_len) return gains;

    for (std::size_t i = a; i < b; ++i) {
      for (const auto& [col, w] : rows_[i]) right_[col] += w;
    }
    const double tt = squared_sum(a, b);
    double ll = 0.0;
    double rr = tt;
    const double whole = tt / static_cast<double>(m);

    gains.reserve(m - 2 * min_len + 1);
    for (std::size_t t = a + 1; t < b; ++t) {
      const auto& row = rows_[t - 1];
      double lx = 0.0;
      double rx = 0.0;
      for (const auto& [col, w] : row) {
        lx += left_[col] * w;
        rx += right_[col] * w;
      }
      ll += 2.0 * lx + sq_norms_[t - 1];
      rr += -2.0 * rx + sq_norms_[t - 1];
      for (const auto& [col, w] : row) {
        left_[col] += w;
        right_[col] -= w;
      }
      const std::size_t n_left = t - a;
      const std::size_t n_right = b - t;
      if (n_left >= min_len && n_right >= min_len) {
        const double gain = std::max(0.0, ll) / static_cast<double>(n_left) +
                            std::max(0.0, rr) / static_cast<double>(n_right) - whole;
        gains.push_back(gain);
      }
    }
    for (std::size_t i = a; i < b; ++i) {
      for (const auto& [col, w] : rows_[i]) {
        left_[col] = 0.0;
        right_[col] = 0.0;
      }
    }
    return gains;
  }

 private:
  // ‖right_‖² over the columns used by rows [a,b), each column counted once.
  double squared_sum(std::size_t a, std::size_t b) {
    double total = 0.0;
    for (std::size_t i = a; i < b; ++i) {
      for (const auto& [col, w] : rows_[i]) {
        if (!seen_[col]) {
          seen_[col] = 1;
          total += right_[col] * right_[col];
        }
      }
    }
    for (std::size_t i = a; i < b; ++i) {
      for (const auto& [col, w] : rows_[i]) seen_[col] = 0;
    }
    return total;
  }

  struct Cell {
    std::uint32_t col;
    double weight;
  };
  std::vector<std::vector<Cell>> rows_;
  std::vector<double> sq_norms_;
  std::vector<double> left_;
  std::vector<double> right_;
  std::vector<char> seen_;
};

struct OpenSegment {
  std::size_t start;
  std::size_t end;
  std::vector<double> gains;  // indexed from start + min_len
  double best = -std::numeric_limits<double>::infinity();
};

OpenSegment open_segment(ScatterEngine& engine, std::size_t a, std::size_t b, std::size_t min_len) {
  OpenSegment s{a, b, engine.split_gains(a, b, min_len)};
  for (double g : s.gains) s.best = std::max(s.best, g);
  return s;
}

Segment make_segment(const VectorSequence& seq, std::size_t a, std::size_t b) {
  Segment s;
  s.start = a;
  s.end = b;
  s.t_start = seq[a].timestamp;
  s.t_end = seq[b - 1].timestamp;
  std::vector<const TermVector*> members;
  members.reserve(b - a);
  for (std::size_t i = a; i < b; ++i) {
    members.push_back(&seq[i].vector);
    s.member_event_seqs.push_back(seq[i].event_seq);
  }
  s.centroid = mean_vector(members);
  return s;
}

}  // namespace

SegmentationResult segment_sequence(const VectorSequence& seq, const SegmentationParams& params) {
  params.validate();
  if (seq.empty()) throw InvalidArgument("cannot segment an empty vector sequence");

  const auto n = seq.size();
  const auto min_len = static_cast<std::size_t>(params.min_segment_len);
  ScatterEngine engine(seq);

  SegmentationResult result;
  result.total_cost = engine.cost(0, n);
  result.gain_threshold = params.min_gain_ratio * result.total_cost;
  const double tie_eps = kRelativeTieTolerance * engine.total_sq_norm();

  std::vector<OpenSegment> open;  // kept sorted by start
  open.push_back(open_segment(engine, 0, n, min_len));

  while (open.size() < static_cast<std::size_t>(params.max_segments)) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& s : open) best = std::max(best, s.best);
    if (!std::isfinite(best) || best <= tie_eps || best < result.gain_threshold) break;

    // Earliest split position whose gain ties the best.
    std::size_t chosen_segment = 0;
    std::size_t chosen_pos = 0;
    double chosen_gain = 0.0;
    bool found = false;
    for (std::size_t si = 0; si < open.size() && !found; ++si) {
      const auto& s = open[si];
      for (std::size_t k = 0; k < s.gains.size(); ++k) {
        if (s.gains[k] >= best - tie_eps) {
          chosen_segment = si;
          chosen_pos = s.start + min_len + k;
          chosen_gain = s.gains[k];
          found = true;
          break;
        }
      }
    }

    if (chosen_gain < result.gain_threshold) break;

    const auto parent = open[chosen_segment];
    result.splits.push_back({chosen_pos, parent.start, parent.end, chosen_gain});
    auto left = open_segment(engine, parent.start, chosen_pos, min_len);
    auto right = open_segment(engine, chosen_pos, parent.end, min_len);
    open[chosen_segment] = std::move(left);
    open.insert(open.begin() + static_cast<std::ptrdiff_t>(chosen_segment) + 1, std::move(right));
  }

  result.segments.reserve(open.size());
  for (const auto& s : open) result.segments.push_back(make_segment(seq, s.start, s.end));
  return result;
}

std::vector<Segment> binary_segmentation(const VectorSequence& seq,
                                         const SegmentationParams& params) {
  return segment_sequence(seq, params).segments;
}

std::vector<Segment> assign_all_events(const Session& session, const VectorSequence& seq,
                                       std::vector<Segment> segments) {
  for (auto& s : segments) s.member_event_seqs.clear();
  if (segments.empty()) return segments;

  auto by_position = [&](std::size_t pos) {
    auto it = std::upper_bound(segments.begin(), segments.end(), pos,
                               [](std::size_t p, const Segment& s) { return p < s.start; });
    return static_cast<std::size_t>(std::distance(segments.begin(), it)) - 1;
  };
  auto by_time = [&](Timestamp ts) -> std::size_t {
    if (ts < segments.front().t_start) return 0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
      if (ts <= segments[i].t_end) {
        // Either inside segment i or in the gap before it; gaps go earlier.
        return (ts >= segments[i].t_start || i == 0) ? i : i - 1;
      }
    }
    return segments.size() - 1;
  };

  for (const auto& ev : session.events) {
    const auto pos = seq.position_of(ev.seq);
    const auto idx = pos ? by_position(*pos) : by_time(ev.timestamp);
    segments[idx].member_event_seqs.push_back(ev.seq);
  }
  return segments;
}

}  // namespace provsum
