#include "provsum/resources.hpp"

#include <fstream>
#include <iterator>
#include <map>
#include <optional>

#include "provsum/error.hpp"

namespace provsum {

namespace detail {
const std::map<std::string, std::string_view>& embedded_resources();
}

namespace {

std::string_view embedded(const std::string& name) {
  const auto& files = detail::embedded_resources();
  auto it = files.find(name);
  if (it == files.end()) throw Error("missing bundled resource " + name);
  return it->second;
}

std::optional<std::string> read_if_present(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

std::vector<std::string> parse_word_list(std::string_view text) {
  std::vector<std::string> words;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (!line.empty() && line.front() != '#') words.emplace_back(line);
    pos = end + 1;
  }
  return words;
}

const Resources& Resources::bundled() {
  static const Resources res = [] {
    Resources r;
    r.stopwords = parse_word_list(embedded("stopwords_en.txt"));
    r.given_names = parse_word_list(embedded("given_names.txt"));
    r.locations = parse_word_list(embedded("locations.txt"));
    r.honorifics = parse_word_list(embedded("honorifics.txt"));
    r.segment_template = std::string(embedded("templates/segment.tmpl"));
    r.overview_template = std::string(embedded("templates/overview.tmpl"));
    return r;
  }();
  return res;
}

Resources Resources::load(const std::filesystem::path& dir) {
  Resources r = bundled();
  if (auto s = read_if_present(dir / "stopwords_en.txt")) r.stopwords = parse_word_list(*s);
  if (auto s = read_if_present(dir / "given_names.txt")) r.given_names = parse_word_list(*s);
  if (auto s = read_if_present(dir / "locations.txt")) r.locations = parse_word_list(*s);
  if (auto s = read_if_present(dir / "honorifics.txt")) r.honorifics = parse_word_list(*s);
  if (auto s = read_if_present(dir / "templates" / "segment.tmpl")) r.segment_template = *s;
  if (auto s = read_if_present(dir / "templates" / "overview.tmpl")) r.overview_template = *s;
  return r;
}

}  // namespace provsum
