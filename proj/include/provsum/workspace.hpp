#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "provsum/model.hpp"
#include "provsum/pipeline.hpp"
#include "provsum/resources.hpp"
#include "provsum/synthetic.hpp"

namespace provsum {

/// A directory holding an optional corpus and any number of ingested sessions:
///
///   workspace.json          manifest (session ids and their files)
///   corpus.jsonl            optional
///   sessions/<id>.jsonl     canonical event logs
///   resources/              optional overrides of the bundled word lists and templates
///
/// Loaded workspaces are immutable. Summaries are cached per (session, params)
/// and safe to request from several threads.
class Workspace {
 public:
  Workspace(std::optional<std::vector<Document>> corpus, std::vector<Session> sessions,
            Resources resources = Resources::bundled());
  ~Workspace();
  Workspace(Workspace&&) noexcept;
  Workspace& operator=(Workspace&&) noexcept;

  static Workspace open(const std::filesystem::path& dir);

  bool has_corpus() const;
  const IndexedCorpus* corpus() const;
  const Resources& resources() const;

  std::vector<std::string> session_ids() const;
  /// Throws NotFoundError.
  const Session& session(std::string_view id) const;

  /// Throws NotFoundError for an unknown session, InvalidArgument for bad params.
  std::shared_ptr<const PipelineResult> summarize(std::string_view session_id,
                                                  const SegmentationParams& params = {}) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct IngestRequest {
  LogFormat format = LogFormat::CanonicalJsonl;
  std::filesystem::path logs;
  std::optional<std::filesystem::path> corpus;
  ParseOptions parse;
};

/// Parses a log (and optionally a corpus) into `workspace_dir`, creating it if
/// needed. A re-ingested session id replaces the old session; a new corpus
/// replaces the old corpus. Returns the session id.
std::string ingest_into_workspace(const std::filesystem::path& workspace_dir,
                                  const IngestRequest& request);

/// Writes a generated corpus and session as a fresh workspace.
void write_workspace(const std::filesystem::path& workspace_dir,
                     const SyntheticWorkspace& synthetic);

/// Session ids become file names; anything outside [A-Za-z0-9._-] maps to '_'.
std::string session_file_name(std::string_view session_id);

}  // namespace provsum
