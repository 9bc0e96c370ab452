#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "provsum/workspace.hpp"

namespace provsum {

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

using QueryParams = std::multimap<std::string, std::string>;

inline constexpr int kMinSegmentsParam = 1;
inline constexpr int kMaxSegmentsParam = 50;

/// Parses the `segments` query value and clamps it to [1, 50]. Returns
/// nullopt when the value is not an integer.
std::optional<int> parse_segments_param(std::string_view value);

/// Transport-independent request handling for the /api routes.
class ApiRouter {
 public:
  explicit ApiRouter(const Workspace& workspace) : workspace_(workspace) {}

  ApiResponse handle(std::string_view method, std::string_view path,
                     const QueryParams& query = {}) const;

 private:
  ApiResponse sessions() const;
  ApiResponse summary(std::string_view id, const QueryParams& query) const;
  ApiResponse segment_events(std::string_view id, std::string_view index,
                             const QueryParams& query) const;
  ApiResponse index_page() const;
  ApiResponse session_page(std::string_view id, const QueryParams& query) const;

  const Workspace& workspace_;
};

/// HTTP front end. Serves ApiRouter on /api and, when `static_dir` is given,
/// the UI build from that directory at /; otherwise a plain HTML index.
class ApiServer {
 public:
  explicit ApiServer(const Workspace& workspace,
                     std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds without serving; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  /// Blocks until stop() is called.
  void run();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace provsum
