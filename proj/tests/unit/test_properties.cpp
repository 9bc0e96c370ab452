#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "provsum/json_io.hpp"
#include "provsum/pipeline.hpp"
#include "provsum/synthetic.hpp"
#include "provsum/workspace.hpp"
#include "support.hpp"

using namespace provsum;

namespace {

struct Case {
  SyntheticWorkspace synth;
  SegmentationParams params;
  bool with_corpus = true;
};

/// Random workspace shapes and parameters, including degraded runs.
Case draw(std::mt19937_64& rng) {
  const int phases = 1 + static_cast<int>(rng() % 6);
  const int docs = phases * (3 + static_cast<int>(rng() % 15));
  const int events = phases * (4 + static_cast<int>(rng() % 60));
  Case c{generate_synthetic(rng(), docs, events, phases), {}, rng() % 4 != 0};
  c.params.max_segments = 1 + static_cast<int>(rng() % 12);
  c.params.min_segment_len = 1 + static_cast<int>(rng() % 5);
  c.params.min_gain_ratio = (rng() % 3 == 0) ? 0.0 : std::pow(10.0, -1.0 - static_cast<double>(rng() % 4));
  return c;
}

std::shared_ptr<const PipelineResult> run(const Case& c) {
  static thread_local std::vector<std::unique_ptr<Workspace>> keep;
  keep.clear();
  std::optional<std::vector<Document>> corpus;
  if (c.with_corpus) corpus = c.synth.documents;
  keep.push_back(std::make_unique<Workspace>(std::move(corpus), std::vector<Session>{c.synth.session}));
  return keep.back()->summarize(c.synth.session.id, c.params);
}

void check_spans(const std::string& text, const std::vector<TextSpan>& spans) {
  std::size_t prev = 0;
  for (const auto& s : spans) {
    CHECK(s.start >= prev);
    CHECK(s.start <= s.end);
    CHECK(s.end <= text.size());
    CHECK_FALSE(s.slot.empty());
    prev = s.end;
  }
}

constexpr int kRounds = 60;

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("segments partition the vector sequence and the session") {
    std::mt19937_64 rng(101);
    for (int round = 0; round < kRounds; ++round) {
      const auto c = draw(rng);
      const auto r = run(c);
      const auto& segs = r->segments;
      REQUIRE_FALSE(segs.empty());
      CHECK(segs.size() <= static_cast<std::size_t>(c.params.max_segments));
      CHECK(segs.front().start == 0);
      for (std::size_t i = 1; i < segs.size(); ++i) {
        CHECK(segs[i].start == segs[i - 1].end);
        CHECK(segs[i].end - segs[i].start >= static_cast<std::size_t>(c.params.min_segment_len));
      }
      std::multiset<std::int64_t> members;
      for (const auto& s : segs) members.insert(s.member_event_seqs.begin(), s.member_event_seqs.end());
      std::multiset<std::int64_t> all;
      for (const auto& e : c.synth.session.events) all.insert(e.seq);
      CHECK(members == all);
    }
  }

  TEST_CASE("event counts are conserved across cards") {
    std::mt19937_64 rng(202);
    for (int round = 0; round < kRounds; ++round) {
      const auto c = draw(rng);
      const auto r = run(c);
      std::map<std::string, int> expected;
      for (const auto& e : c.synth.session.events) ++expected[std::string(to_string(e.kind))];
      std::map<std::string, int> total;
      std::size_t n = 0;
      for (const auto& card : r->response.cards) {
        for (const auto& [k, v] : card.counts) {
          CHECK(v > 0);
          total[k] += v;
        }
        n += card.n_events;
      }
      CHECK(total == expected);
      CHECK(n == c.synth.session.events.size());
      CHECK(r->response.overview.n_events == n);
    }
  }

  TEST_CASE("keywords are sound") {
    std::mt19937_64 rng(303);
    for (int round = 0; round < kRounds; ++round) {
      const auto c = draw(rng);
      const auto r = run(c);
      for (std::size_t i = 0; i < r->response.cards.size(); ++i) {
        const auto& card = r->response.cards[i];
        const auto& seg = r->segments[i];
        CHECK(card.keywords.size() <= 8);
        for (std::size_t k = 0; k < card.keywords.size(); ++k) {
          CHECK(card.keywords[k].weight > 0.0);
          if (k > 0) {
            const auto& a = card.keywords[k - 1];
            const auto& b = card.keywords[k];
            CHECK((a.weight > b.weight || (a.weight == b.weight && a.term < b.term)));
          }
        }
        // Every keyword occurs in the text of some member of the segment.
        std::set<std::string> tokens;
        for (auto seq : seg.member_event_seqs) {
          for (const auto& e : c.synth.session.events) {
            if (e.seq != seq) continue;
            if (e.text) {
              for (auto& t : tokenize(*e.text)) tokens.insert(t);
            }
            if (c.with_corpus && e.doc_id) {
              for (const auto& d : c.synth.documents) {
                if (d.id == *e.doc_id) {
                  for (auto& t : tokenize(document_text(d))) tokens.insert(t);
                }
              }
            }
          }
        }
        for (const auto& k : card.keywords) {
          CAPTURE(k.term);
          CHECK(tokens.count(k.term) == 1);
        }
      }
    }
  }

  TEST_CASE("link index is the inverse of the card keywords") {
    std::mt19937_64 rng(404);
    for (int round = 0; round < kRounds; ++round) {
      const auto r = run(draw(rng));
      const auto& resp = r->response;
      std::map<std::string, std::vector<int>> expected;
      for (const auto& card : resp.cards) {
        for (const auto& k : card.keywords) expected[k.term].push_back(card.segment_index);
      }
      CHECK(resp.link_index == expected);
      CHECK(resp.overview.n_keywords == expected.size());
    }
  }

  TEST_CASE("prose and overview spans are well formed") {
    std::mt19937_64 rng(505);
    for (int round = 0; round < kRounds; ++round) {
      const auto r = run(draw(rng));
      for (const auto& card : r->response.cards) {
        CHECK_FALSE(card.prose.empty());
        check_spans(card.prose, card.prose_spans);
      }
      for (const auto& s : r->response.overview.sentences) check_spans(s.text, s.spans);
    }
  }

  TEST_CASE("superlatives do not depend on the time unit") {
    std::mt19937_64 rng(606);
    int compared = 0;
    for (int round = 0; round < kRounds; ++round) {
      auto c = draw(rng);
      const auto base = run(c);
      bool sub_second = false;
      for (const auto& card : base->response.cards) {
        sub_second = sub_second || (card.duration_ms > 0 && card.duration_ms < 1000);
      }
      if (sub_second) continue;
      for (auto& e : c.synth.session.events) e.timestamp *= 3;
      const auto scaled = run(c);
      CHECK(scaled->response.overview.superlatives == base->response.overview.superlatives);
      CHECK(scaled->response.overview.avg_interaction_rate * 3.0 ==
            doctest::Approx(base->response.overview.avg_interaction_rate));
      ++compared;
    }
    CHECK(compared > kRounds / 2);
  }

  TEST_CASE("summaries are deterministic") {
    std::mt19937_64 rng(707);
    for (int round = 0; round < 20; ++round) {
      const auto c = draw(rng);
      const auto a = serialize(run(c)->response);
      const auto b = serialize(run(c)->response);
      CHECK(a == b);
    }
  }

  TEST_CASE("greedy segmentation matches the exhaustive oracle") {
    std::mt19937_64 rng(808);
    for (int round = 0; round < 150; ++round) {
      const std::size_t n = 2 + rng() % 70;
      const auto rows = test::random_rows(rng, n, 1 + rng() % 6, round % 3 == 0 ? 1 + rng() % 3 : 0);
      SegmentationParams p;
      p.max_segments = 1 + static_cast<int>(rng() % 8);
      p.min_segment_len = 1 + static_cast<int>(rng() % 4);
      p.min_gain_ratio = round % 2 ? 0.0 : 0.01;
      const auto seq = test::to_sequence(rows);
      const auto got = segment_sequence(seq, p).breakpoints();
      const auto want = oracle::greedy_breakpoints(rows, p.max_segments, p.min_gain_ratio,
                                                   static_cast<std::size_t>(p.min_segment_len));
      CAPTURE(round);
      CHECK(got == want);
    }
  }

  TEST_CASE("accepted splits are the best available within the tie tolerance") {
    std::mt19937_64 rng(909);
    for (int round = 0; round < 100; ++round) {
      const auto rows = test::random_rows(rng, 10 + rng() % 60, 4);
      const auto seq = test::to_sequence(rows);
      SegmentationParams p;
      p.max_segments = 6;
      p.min_segment_len = 2;
      p.min_gain_ratio = 0.0;
      const auto result = segment_sequence(seq, p);
      const double eps = oracle::tie_eps(rows);
      for (const auto& split : result.splits) {
        auto best = oracle::best_split(rows, split.parent_start, split.parent_end, 2, eps);
        REQUIRE(best);
        CHECK(split.gain >= best->gain - eps);
        CHECK(split.gain >= result.gain_threshold);
      }
    }
  }
}
