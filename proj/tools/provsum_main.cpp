#include <csignal>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <pthread.h>

#include <CLI11.hpp>

#include "provsum/error.hpp"
#include "provsum/export.hpp"
#include "provsum/http_api.hpp"
#include "provsum/synthetic.hpp"
#include "provsum/workspace.hpp"

namespace {

using namespace provsum;

struct IngestArgs {
  std::string format;
  std::string logs;
  std::optional<std::string> corpus;
  std::string workspace;
  std::optional<std::string> session_id;
  long long tolerance_ms = 0;
  long long base_time_ms = 0;
};

struct SummarizeArgs {
  std::string workspace;
  std::string session;
  std::string segments = "11";
  double min_gain_ratio = SegmentationParams{}.min_gain_ratio;
  int min_segment_len = SegmentationParams{}.min_segment_len;
  std::optional<std::string> out;
  std::string export_format = "json";
};

struct ServeArgs {
  std::string workspace;
  int port = 8080;
  std::string host = "127.0.0.1";
  std::optional<std::string> static_dir;
};

struct GenArgs {
  std::uint64_t seed = 1;
  int docs = 120;
  int events = 600;
  int phases = 5;
  std::string workspace;
};

int run_ingest(const IngestArgs& a) {
  auto format = parse_log_format(a.format);
  if (!format) throw InvalidArgument("unknown log format '" + a.format + "'");
  IngestRequest request;
  request.format = *format;
  request.logs = a.logs;
  if (a.corpus) request.corpus = *a.corpus;
  std::filesystem::path logs(a.logs);
  request.parse.session_id = a.session_id ? *a.session_id : logs.stem().string();
  request.parse.regression_tolerance_ms = a.tolerance_ms;
  request.parse.base_time_ms = a.base_time_ms;
  auto id = ingest_into_workspace(a.workspace, request);
  std::cout << "ingested session " << id << " into " << a.workspace << "\n";
  return 0;
}

int run_summarize(const SummarizeArgs& a) {
  auto format = parse_export_format(a.export_format);
  if (!format) throw InvalidArgument("unknown export format '" + a.export_format + "'");
  auto k = parse_segments_param(a.segments);
  if (!k) throw InvalidArgument("invalid --segments value '" + a.segments + "'");
  SegmentationParams params;
  params.max_segments = *k;
  params.min_gain_ratio = a.min_gain_ratio;
  params.min_segment_len = a.min_segment_len;

  auto workspace = Workspace::open(a.workspace);
  auto result = workspace.summarize(a.session, params);
  for (const auto& w : result->response.warnings) std::cerr << "warning: " << w << "\n";
  if (a.out) {
    export_summary(result->response, *format, *a.out);
  } else {
    std::cout << render_export(result->response, *format);
  }
  return 0;
}

int run_serve(const ServeArgs& a) {
  // Block the stop signals before any server thread starts so only the waiter sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  auto workspace = Workspace::open(a.workspace);
  std::optional<std::filesystem::path> static_dir;
  if (a.static_dir) static_dir = *a.static_dir;
  ApiServer server(workspace, static_dir);
  int port = server.bind(a.host, a.port);
  std::cout << "listening on http://" << a.host << ":" << port << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.run();
  // run() also returns on a listener failure; wake the waiter in that case.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

int run_gen(const GenArgs& a) {
  auto synthetic = generate_synthetic(a.seed, a.docs, a.events, a.phases);
  write_workspace(a.workspace, synthetic);
  std::cout << "wrote session " << synthetic.session.id << " (" << synthetic.documents.size()
            << " documents, " << synthetic.session.events.size() << " events) to "
            << a.workspace << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Summarize analyst provenance logs into segment cards"};
  app.set_config("--config", "", "TOML or INI file with option values; command-line flags win");
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse a log (and corpus) into a workspace");
  ingest_cmd->add_option("--format", ingest.format,
                         "canonical_jsonl | vast_tool | conversation_tool | query_metadata")
      ->required();
  ingest_cmd->add_option("--logs", ingest.logs, "Log file")->required();
  ingest_cmd->add_option("--corpus", ingest.corpus, "Corpus JSONL file or directory of .txt files");
  ingest_cmd->add_option("--workspace", ingest.workspace, "Workspace directory")->required();
  ingest_cmd->add_option("--session-id", ingest.session_id,
                         "Session id (default: log file name without extension)");
  ingest_cmd->add_option("--tolerance-ms", ingest.tolerance_ms,
                         "Allowed timestamp regression before the log is rejected");
  ingest_cmd->add_option("--base-time-ms", ingest.base_time_ms,
                         "Epoch offset for formats with relative times");

  SummarizeArgs summarize;
  auto* summarize_cmd = app.add_subcommand("summarize", "Segment and summarize a session");
  summarize_cmd->add_option("--workspace", summarize.workspace, "Workspace directory")->required();
  summarize_cmd->add_option("--session", summarize.session, "Session id")->required();
  summarize_cmd->add_option("--segments", summarize.segments,
                            "Maximum number of segments, clamped to [1, 50]")->capture_default_str();
  summarize_cmd->add_option("--min-gain-ratio", summarize.min_gain_ratio,
                            "Stop splitting below this fraction of the total cost")->capture_default_str();
  summarize_cmd->add_option("--min-segment-len", summarize.min_segment_len,
                            "Minimum vectors per segment")->capture_default_str();
  summarize_cmd->add_option("--out", summarize.out, "Write to a file instead of stdout");
  summarize_cmd->add_option("--export-format", summarize.export_format, "json | html | text")->capture_default_str();

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
  serve_cmd->add_option("--workspace", serve.workspace, "Workspace directory")->required();
  serve_cmd->add_option("--port", serve.port, "Port (0 picks a free one)")->capture_default_str();
  serve_cmd->add_option("--host", serve.host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--static", serve.static_dir, "Directory with UI assets served at /");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a synthetic workspace with known phases");
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--docs", gen.docs, "Number of documents")->capture_default_str();
  gen_cmd->add_option("--events", gen.events, "Number of events")->capture_default_str();
  gen_cmd->add_option("--phases", gen.phases, "Number of topical phases")->capture_default_str();
  gen_cmd->add_option("--workspace", gen.workspace, "Workspace directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest_cmd) return run_ingest(ingest);
    if (*summarize_cmd) return run_summarize(summarize);
    if (*serve_cmd) return run_serve(serve);
    if (*gen_cmd) return run_gen(gen);
  } catch (const InvalidArgument& e) {
    std::cerr << "provsum: " << e.what() << "\n";
    return 2;
  } catch (const NotFoundError& e) {
    std::cerr << "provsum: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "provsum: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
