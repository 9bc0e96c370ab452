#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "provsum/model.hpp"

namespace provsum {

/// A generated corpus and session whose topical phases are known.
struct SyntheticWorkspace {
  std::vector<Document> documents;
  Session session;
  /// Seq of the first event of every phase after the first. Each phase opens
  /// with a DocOpen, so these are also the true breakpoints of the vector
  /// sequence.
  std::vector<std::int64_t> boundary_event_seqs;
  /// Phase index of each session event, parallel to session.events.
  std::vector<int> event_phase;
  /// Topic terms per phase; sets are pairwise disjoint.
  std::vector<std::vector<std::string>> phase_terms;
};

/// Deterministic for a fixed seed on every platform. Documents are split into
/// `n_phases` contiguous topic clusters and events are drawn phase by phase.
/// Requires n_phases >= 1, n_events >= n_phases and n_docs >= n_phases.
SyntheticWorkspace generate_synthetic(std::uint64_t seed, int n_docs, int n_events,
                                      int n_phases);

}  // namespace provsum
