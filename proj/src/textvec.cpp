#include "provsum/textvec.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "provsum/resources.hpp"

namespace provsum {

namespace {

bool is_word_char(UChar32 c) {
  return u_isalnum(c) != 0;
}

bool is_combining_mark(UChar32 c) {
  const auto type = u_charType(c);
  return type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK ||
         type == U_ENCLOSING_MARK;
}

void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  U8_APPEND_UNSAFE(buf, len, c);
  out.append(buf, static_cast<std::size_t>(len));
}

}  // namespace

Tokenizer::Tokenizer(std::span<const std::string> stopwords)
    : stopwords_(stopwords.begin(), stopwords.end()) {}

const Tokenizer& Tokenizer::standard() {
  static const Tokenizer tokenizer(Resources::bundled().stopwords);
  return tokenizer;
}

bool Tokenizer::is_stopword(std::string_view lowercase_word) const {
  return stopwords_.count(std::string(lowercase_word)) != 0;
}

std::vector<std::string> Tokenizer::tokenize(std::string_view text) const {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t code_points = 0;

  auto flush = [&] {
    if (code_points >= 2 && !is_stopword(current)) tokens.push_back(current);
    current.clear();
    code_points = 0;
  };

  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c = 0;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) {
      flush();  // invalid UTF-8 sequence acts as a separator
    } else if (is_word_char(c)) {
      append_utf8(current, u_tolower(c));
      ++code_points;
    } else if (code_points > 0 && is_combining_mark(c)) {
      append_utf8(current, c);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> tokenize(std::string_view text) {
  return Tokenizer::standard().tokenize(text);
}

TermVector::TermVector(std::vector<TermWeight> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const TermWeight& a, const TermWeight& b) { return a.term < b.term; });
  for (const auto& e : entries) {
    if (!entries_.empty() && entries_.back().term == e.term) {
      entries_.back().weight += e.weight;
    } else {
      entries_.push_back(e);
    }
  }
  std::erase_if(entries_, [](const TermWeight& e) { return e.weight == 0.0; });
}

double TermVector::weight(TermId term) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), term,
                             [](const TermWeight& e, TermId t) { return e.term < t; });
  return (it != entries_.end() && it->term == term) ? it->weight : 0.0;
}

double TermVector::squared_norm() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += e.weight * e.weight;
  return sum;
}

double TermVector::norm() const { return std::sqrt(squared_norm()); }

TermVector mean_vector(std::span<const TermVector* const> vectors) {
  if (vectors.empty()) return {};
  std::map<TermId, double> sums;
  for (const auto* v : vectors) {
    for (const auto& e : v->entries()) sums[e.term] += e.weight;
  }
  const double n = static_cast<double>(vectors.size());
  std::vector<TermWeight> entries;
  entries.reserve(sums.size());
  for (const auto& [term, sum] : sums) entries.push_back({term, sum / n});
  return TermVector(std::move(entries));
}

Vocabulary Vocabulary::from_token_sets(const std::vector<std::vector<std::string>>& docs) {
  std::map<std::string, std::size_t> df;
  for (const auto& tokens : docs) {
    std::set<std::string_view> unique(tokens.begin(), tokens.end());
    for (auto t : unique) ++df[std::string(t)];
  }
  Vocabulary vocab;
  vocab.n_docs_ = docs.size();
  vocab.terms_.reserve(df.size());
  vocab.df_.reserve(df.size());
  for (auto& [term, count] : df) {
    vocab.index_.emplace(term, static_cast<TermId>(vocab.terms_.size()));
    vocab.terms_.push_back(term);
    vocab.df_.push_back(count);
  }
  return vocab;
}

Vocabulary Vocabulary::build(std::span<const Document> docs, const Tokenizer& tokenizer) {
  if (docs.empty()) throw InvalidArgument("cannot build a vocabulary from an empty corpus");
  std::vector<std::vector<std::string>> token_sets;
  token_sets.reserve(docs.size());
  for (const auto& doc : docs) token_sets.push_back(tokenizer.tokenize(document_text(doc)));
  return from_token_sets(token_sets);
}

Vocabulary Vocabulary::from_texts(std::span<const std::string> texts, const Tokenizer& tokenizer) {
  std::vector<std::vector<std::string>> token_sets;
  token_sets.reserve(texts.size());
  for (const auto& text : texts) token_sets.push_back(tokenizer.tokenize(text));
  return from_token_sets(token_sets);
}

std::optional<TermId> Vocabulary::find(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double Vocabulary::idf(TermId id) const {
  const double n = static_cast<double>(n_docs_);
  const double d = static_cast<double>(df_.at(id));
  return std::log((1.0 + n) / (1.0 + d)) + 1.0;
}

TermVector tfidf(const Vocabulary& vocab, std::string_view text, const Tokenizer& tokenizer) {
  std::map<TermId, std::size_t> counts;
  for (const auto& token : tokenizer.tokenize(text)) {
    if (auto id = vocab.find(token)) ++counts[*id];
  }
  std::vector<TermWeight> entries;
  entries.reserve(counts.size());
  double sq = 0.0;
  for (const auto& [term, count] : counts) {
    const double w = static_cast<double>(count) * vocab.idf(term);
    entries.push_back({term, w});
    sq += w * w;
  }
  if (sq == 0.0) return {};
  const double norm = std::sqrt(sq);
  for (auto& e : entries) e.weight /= norm;
  return TermVector(std::move(entries));
}

std::string document_text(const Document& doc) {
  if (doc.title.empty()) return doc.body;
  return doc.title + "\n" + doc.body;
}

IndexedCorpus::IndexedCorpus(std::vector<Document> docs, const Tokenizer& tokenizer)
    : docs_(std::move(docs)), tokenizer_(tokenizer), vocab_(Vocabulary::build(docs_, tokenizer_)) {
  vectors_.reserve(docs_.size());
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    if (!by_id_.emplace(docs_[i].id, i).second) {
      throw CorpusError("duplicate document id '" + docs_[i].id + "'");
    }
    vectors_.push_back(tfidf(vocab_, document_text(docs_[i]), tokenizer_));
  }
}

const Document* IndexedCorpus::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &docs_[it->second];
}

const TermVector* IndexedCorpus::vector_of(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &vectors_[it->second];
}

}  // namespace provsum
