#include "provsum/http_api.hpp"

#include <charconv>
#include <limits>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "provsum/error.hpp"
#include "provsum/export.hpp"
#include "provsum/json_io.hpp"

namespace provsum {

using nlohmann::json;

namespace {

ApiResponse json_response(int status, const json& body) {
  return {status, "application/json", body.dump(2) + "\n"};
}

ApiResponse error_response(int status, const std::string& message) {
  return json_response(status, {{"error", message}, {"status", status}});
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    auto slash = path.find('/');
    auto part = path.substr(0, slash);
    if (!part.empty()) parts.push_back(part);
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash + 1);
  }
  return parts;
}

/// Default params with max_segments taken from ?segments=. Sets `error` on a
/// value that does not parse.
std::optional<SegmentationParams> params_from_query(const QueryParams& query, ApiResponse& error) {
  SegmentationParams params;
  auto it = query.find("segments");
  if (it == query.end()) return params;
  auto k = parse_segments_param(it->second);
  if (!k) {
    error = error_response(400, "invalid segments value '" + it->second + "'");
    return std::nullopt;
  }
  params.max_segments = *k;
  return params;
}

}  // namespace

std::optional<int> parse_segments_param(std::string_view value) {
  while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
  while (!value.empty() && value.back() == ' ') value.remove_suffix(1);
  if (!value.empty() && value.front() == '+') value.remove_prefix(1);
  if (value.empty()) return std::nullopt;

  long long k = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), k);
  if (ptr != value.data() + value.size()) return std::nullopt;
  if (ec == std::errc::result_out_of_range) {
    return value.front() == '-' ? kMinSegmentsParam : kMaxSegmentsParam;
  }
  if (ec != std::errc()) return std::nullopt;
  if (k < kMinSegmentsParam) return kMinSegmentsParam;
  if (k > kMaxSegmentsParam) return kMaxSegmentsParam;
  return static_cast<int>(k);
}

ApiResponse ApiRouter::handle(std::string_view method, std::string_view path,
                              const QueryParams& query) const {
  if (method != "GET" && method != "HEAD") return error_response(405, "method not allowed");
  auto parts = split_path(path);
  try {
    if (parts.empty()) return index_page();
    if (parts.size() == 2 && parts[0] == "view") return session_page(parts[1], query);
    if (parts[0] != "api") return error_response(404, "not found");
    if (parts.size() == 2 && parts[1] == "health") {
      return json_response(200, {{"status", "ok"}, {"sessions", workspace_.session_ids().size()}});
    }
    if (parts.size() == 2 && parts[1] == "sessions") return sessions();
    if (parts.size() == 4 && parts[1] == "sessions" && parts[3] == "summary") {
      return summary(parts[2], query);
    }
    if (parts.size() == 6 && parts[1] == "sessions" && parts[3] == "segments" &&
        parts[5] == "events") {
      return segment_events(parts[2], parts[4], query);
    }
    return error_response(404, "not found");
  } catch (const NotFoundError& e) {
    return error_response(404, e.what());
  } catch (const InvalidArgument& e) {
    return error_response(400, e.what());
  } catch (const std::exception& e) {
    return error_response(500, e.what());
  }
}

ApiResponse ApiRouter::sessions() const {
  json list = json::array();
  for (const auto& id : workspace_.session_ids()) {
    const auto& s = workspace_.session(id);
    list.push_back({{"id", id},
                    {"n_events", s.events.size()},
                    {"analyst", s.analyst ? json(*s.analyst) : json(nullptr)}});
  }
  return json_response(200, {{"sessions", list}});
}

ApiResponse ApiRouter::summary(std::string_view id, const QueryParams& query) const {
  ApiResponse error;
  auto params = params_from_query(query, error);
  if (!params) return error;
  auto result = workspace_.summarize(id, *params);
  return {200, "application/json", serialize(result->response)};
}

ApiResponse ApiRouter::segment_events(std::string_view id, std::string_view index,
                                      const QueryParams& query) const {
  ApiResponse error;
  auto params = params_from_query(query, error);
  if (!params) return error;
  const Session& session = workspace_.session(id);
  auto result = workspace_.summarize(id, *params);

  std::size_t i = 0;
  auto [ptr, ec] = std::from_chars(index.data(), index.data() + index.size(), i);
  if (ec != std::errc() || ptr != index.data() + index.size() || i >= result->segments.size()) {
    return error_response(404, "unknown segment '" + std::string(index) + "' in session '" +
                                   std::string(id) + "'");
  }

  std::map<std::int64_t, const InteractionEvent*> by_seq;
  for (const auto& ev : session.events) by_seq.emplace(ev.seq, &ev);
  json events = json::array();
  for (auto seq : result->segments[i].member_event_seqs) events.push_back(to_json(*by_seq.at(seq)));
  return json_response(200, {{"session_id", session.id},
                             {"segment_index", i},
                             {"params", to_json(*params)},
                             {"events", events}});
}

ApiResponse ApiRouter::index_page() const {
  std::string body =
      "<!DOCTYPE html>\n<html lang=\"en\">\n<head><meta charset=\"utf-8\">"
      "<title>Sessions</title></head>\n<body>\n<h1>Sessions</h1>\n<ul>\n";
  for (const auto& id : workspace_.session_ids()) {
    auto esc = html_escape(id);
    body += "<li><a href=\"/view/" + esc + "\">" + esc + "</a> (<a href=\"/api/sessions/" + esc +
            "/summary\">json</a>)</li>\n";
  }
  body += "</ul>\n</body>\n</html>\n";
  return {200, "text/html; charset=utf-8", body};
}

ApiResponse ApiRouter::session_page(std::string_view id, const QueryParams& query) const {
  ApiResponse error;
  auto params = params_from_query(query, error);
  if (!params) return error;
  auto result = workspace_.summarize(id, *params);
  return {200, "text/html; charset=utf-8", render_export(result->response, ExportFormat::Html)};
}

struct ApiServer::Impl {
  ApiRouter router;
  httplib::Server server;

  explicit Impl(const Workspace& ws) : router(ws) {}

  void dispatch(const httplib::Request& req, httplib::Response& res) const {
    QueryParams query(req.params.begin(), req.params.end());
    auto out = router.handle(req.method, req.path, query);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  }
};

ApiServer::ApiServer(const Workspace& workspace, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(workspace)) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    impl_->dispatch(req, res);
  };
  impl_->server.Get(R"(/api(/.*)?)", handler);
  impl_->server.Get(R"(/view/.*)", handler);
  if (static_dir) {
    if (!impl_->server.set_mount_point("/", static_dir->string())) {
      throw NotFoundError("static directory not found: " + static_dir->string());
    }
  } else {
    impl_->server.Get("/", handler);
  }
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                        : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void ApiServer::run() { impl_->server.listen_after_bind(); }

void ApiServer::stop() {
  if (impl_) impl_->server.stop();
}

void ApiServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace provsum
