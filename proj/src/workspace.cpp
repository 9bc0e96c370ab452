#include "provsum/workspace.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "provsum/entities.hpp"
#include "provsum/error.hpp"
#include "provsum/template.hpp"
#include "provsum/textvec.hpp"

namespace provsum {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kManifest = "workspace.json";
constexpr const char* kCorpusFile = "corpus.jsonl";
constexpr int kFormatVersion = 1;

using CacheKey = std::tuple<std::string, int, double, int>;

json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error("malformed " + path.string() + ": " + e.what());
  }
}

void write_text_file(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw Error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

json empty_manifest() {
  return {{"format_version", kFormatVersion}, {"corpus", nullptr}, {"sessions", json::array()}};
}

json load_manifest(const fs::path& dir) {
  auto path = dir / kManifest;
  if (!fs::exists(path)) return empty_manifest();
  auto manifest = read_json_file(path);
  if (!manifest.is_object() || manifest.value("format_version", 0) != kFormatVersion) {
    throw Error("unsupported workspace manifest " + path.string());
  }
  return manifest;
}

void upsert_session(json& manifest, const Session& session, std::string_view source_format) {
  json entry = {{"id", session.id},
                {"file", "sessions/" + session_file_name(session.id) + ".jsonl"},
                {"analyst", session.analyst ? json(*session.analyst) : json(nullptr)},
                {"corpus_ref", session.corpus_ref ? json(*session.corpus_ref) : json(nullptr)},
                {"source_format", std::string(source_format)},
                {"n_events", session.events.size()}};
  auto& sessions = manifest["sessions"];
  for (auto& existing : sessions) {
    if (existing.at("id") == session.id) {
      existing = std::move(entry);
      return;
    }
  }
  sessions.push_back(std::move(entry));
}

void store_session(const fs::path& dir, json& manifest, const Session& session,
                   std::string_view source_format) {
  fs::create_directories(dir / "sessions");
  write_text_file(dir / "sessions" / (session_file_name(session.id) + ".jsonl"),
                  to_canonical(session));
  upsert_session(manifest, session, source_format);
}

void store_corpus(const fs::path& dir, json& manifest, std::span<const Document> docs) {
  std::ostringstream out;
  write_corpus_jsonl(out, docs);
  write_text_file(dir / kCorpusFile, out.str());
  manifest["corpus"] = kCorpusFile;
}

}  // namespace

std::string session_file_name(std::string_view session_id) {
  std::string out;
  for (char c : session_id) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '.' || c == '_' || c == '-';
    out += ok ? c : '_';
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

struct Workspace::Impl {
  Resources resources;
  Tokenizer tokenizer;
  std::optional<IndexedCorpus> corpus;
  std::vector<Session> sessions;
  std::map<std::string, std::size_t, std::less<>> by_id;
  HeuristicEntityExtractor extractor;
  SentenceTemplates prose;
  SentenceTemplates overview;

  mutable std::mutex mutex;
  mutable std::map<CacheKey, std::shared_ptr<const PipelineResult>> cache;

  Impl(std::optional<std::vector<Document>> docs, std::vector<Session> s, Resources r)
      : resources(std::move(r)),
        tokenizer(resources.stopwords),
        sessions(std::move(s)),
        extractor(resources),
        prose(SentenceTemplates::parse(resources.segment_template)),
        overview(SentenceTemplates::parse(resources.overview_template)) {
    if (docs) {
      if (docs->empty()) throw CorpusError("workspace corpus is empty");
      corpus.emplace(std::move(*docs), tokenizer);
    }
    for (std::size_t i = 0; i < sessions.size(); ++i) {
      validate_session(sessions[i]);
      if (!by_id.emplace(sessions[i].id, i).second) {
        throw Error("duplicate session id '" + sessions[i].id + "'");
      }
    }
  }
};

Workspace::Workspace(std::optional<std::vector<Document>> corpus, std::vector<Session> sessions,
                     Resources resources)
    : impl_(std::make_unique<Impl>(std::move(corpus), std::move(sessions), std::move(resources))) {}

Workspace::~Workspace() = default;
Workspace::Workspace(Workspace&&) noexcept = default;
Workspace& Workspace::operator=(Workspace&&) noexcept = default;

Workspace Workspace::open(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw NotFoundError("workspace directory not found: " + dir.string());
  if (!fs::exists(dir / kManifest)) throw Error("not a workspace (no manifest): " + dir.string());
  auto manifest = load_manifest(dir);

  std::optional<std::vector<Document>> corpus;
  if (auto it = manifest.find("corpus"); it != manifest.end() && it->is_string()) {
    // A deleted corpus file leaves the sessions usable in degraded mode.
    if (auto path = dir / it->get<std::string>(); fs::exists(path)) corpus = load_corpus(path);
  }

  std::vector<Session> sessions;
  for (const auto& entry : manifest.at("sessions")) {
    ParseOptions options;
    options.session_id = entry.at("id").get<std::string>();
    Session session = parse_log_file(dir / entry.at("file").get<std::string>(),
                                     LogFormat::CanonicalJsonl, options);
    if (auto a = entry.find("analyst"); a != entry.end() && a->is_string()) {
      session.analyst = a->get<std::string>();
    }
    if (auto c = entry.find("corpus_ref"); c != entry.end() && c->is_string()) {
      session.corpus_ref = c->get<std::string>();
    }
    sessions.push_back(std::move(session));
  }

  Resources resources = fs::is_directory(dir / "resources") ? Resources::load(dir / "resources")
                                                            : Resources::bundled();
  return Workspace(std::move(corpus), std::move(sessions), std::move(resources));
}

bool Workspace::has_corpus() const { return impl_->corpus.has_value(); }

const IndexedCorpus* Workspace::corpus() const {
  return impl_->corpus ? &*impl_->corpus : nullptr;
}

const Resources& Workspace::resources() const { return impl_->resources; }

std::vector<std::string> Workspace::session_ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, _] : impl_->by_id) ids.push_back(id);
  return ids;
}

const Session& Workspace::session(std::string_view id) const {
  auto it = impl_->by_id.find(id);
  if (it == impl_->by_id.end()) throw NotFoundError("unknown session '" + std::string(id) + "'");
  return impl_->sessions[it->second];
}

std::shared_ptr<const PipelineResult> Workspace::summarize(std::string_view session_id,
                                                           const SegmentationParams& params) const {
  const Session& s = session(session_id);
  params.validate();
  CacheKey key{s.id, params.max_segments, params.min_gain_ratio, params.min_segment_len};
  {
    std::lock_guard lock(impl_->mutex);
    if (auto it = impl_->cache.find(key); it != impl_->cache.end()) return it->second;
  }
  PipelineAssets assets{impl_->extractor, impl_->prose, impl_->overview};
  auto result = std::make_shared<const PipelineResult>(run_pipeline(s, corpus(), params, assets));
  std::lock_guard lock(impl_->mutex);
  return impl_->cache.emplace(std::move(key), std::move(result)).first->second;
}

std::string ingest_into_workspace(const fs::path& dir, const IngestRequest& request) {
  // Parse everything before touching the workspace so a bad input leaves it unchanged.
  std::optional<std::vector<Document>> docs;
  if (request.corpus) {
    docs = load_corpus(*request.corpus);
    if (docs->empty()) throw CorpusError("corpus is empty: " + request.corpus->string());
  }
  Session session = parse_log_file(request.logs, request.format, request.parse);

  fs::create_directories(dir);
  json manifest = load_manifest(dir);
  if (docs) store_corpus(dir, manifest, *docs);
  if (manifest["corpus"].is_string()) {
    session.corpus_ref = manifest["corpus"].get<std::string>();
  }
  store_session(dir, manifest, session, to_string(request.format));
  write_text_file(dir / kManifest, manifest.dump(2) + "\n");
  return session.id;
}

void write_workspace(const fs::path& dir, const SyntheticWorkspace& synthetic) {
  fs::create_directories(dir);
  json manifest = empty_manifest();
  store_corpus(dir, manifest, synthetic.documents);
  Session session = synthetic.session;
  session.corpus_ref = kCorpusFile;
  store_session(dir, manifest, session, "synthetic");
  write_text_file(dir / kManifest, manifest.dump(2) + "\n");
}

}  // namespace provsum
