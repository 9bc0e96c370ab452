#include <algorithm>
#include <fstream>
#include <iterator>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "detail/log_common.hpp"
#include "provsum/model.hpp"

namespace provsum {

namespace {

void check_unique(const std::vector<Document>& docs) {
  std::unordered_set<std::string_view> seen;
  for (const auto& doc : docs) {
    if (doc.id.empty()) throw CorpusError("document with empty id");
    if (!seen.insert(doc.id).second) throw CorpusError("duplicate document id '" + doc.id + "'");
  }
}

std::vector<Document> load_text_directory(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<Document> docs;
  docs.reserve(files.size());
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw CorpusError("cannot read " + file.string());
    Document doc;
    doc.id = file.stem().string();
    std::getline(in, doc.title);
    if (!doc.title.empty() && doc.title.back() == '\r') doc.title.pop_back();
    doc.body.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace

std::vector<Document> parse_corpus_jsonl(std::istream& in) {
  std::vector<Document> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_blank(line)) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!record.is_object()) throw ParseError(line_no, "record is not a JSON object");
    auto id = record.find("id");
    auto body = record.find("body");
    if (id == record.end() || !id->is_string()) throw ParseError(line_no, "missing string 'id'");
    if (body == record.end() || !body->is_string()) {
      throw ParseError(line_no, "missing string 'body'");
    }
    Document doc;
    doc.id = id->get<std::string>();
    doc.body = body->get<std::string>();
    if (auto title = record.find("title"); title != record.end() && title->is_string()) {
      doc.title = title->get<std::string>();
    }
    docs.push_back(std::move(doc));
  }
  check_unique(docs);
  return docs;
}

std::vector<Document> load_corpus(const std::filesystem::path& path) {
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) {
    auto docs = load_text_directory(path);
    check_unique(docs);
    return docs;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot read corpus " + path.string());
  return parse_corpus_jsonl(in);
}

void write_corpus_jsonl(std::ostream& out, std::span<const Document> docs) {
  for (const auto& doc : docs) {
    nlohmann::ordered_json record;
    record["id"] = doc.id;
    record["title"] = doc.title;
    record["body"] = doc.body;
    out << record.dump() << '\n';
  }
}

}  // namespace provsum
