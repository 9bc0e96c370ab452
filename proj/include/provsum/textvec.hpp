#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "provsum/model.hpp"

namespace provsum {

/// Splits UTF-8 text on non-alphanumeric code points, lowercases, and drops
/// tokens shorter than two code points and stopwords. Numerals are kept.
class Tokenizer {
 public:
  explicit Tokenizer(std::span<const std::string> stopwords);

  /// Uses the bundled English stopword list.
  static const Tokenizer& standard();

  std::vector<std::string> tokenize(std::string_view text) const;
  bool is_stopword(std::string_view lowercase_word) const;

 private:
  std::unordered_set<std::string> stopwords_;
};

std::vector<std::string> tokenize(std::string_view text);

using TermId = std::uint32_t;

struct TermWeight {
  TermId term = 0;
  double weight = 0.0;

  bool operator==(const TermWeight&) const = default;
};

/// Sparse non-negative weights ordered by term id.
class TermVector {
 public:
  TermVector() = default;
  /// Entries may arrive unordered; duplicates are summed and zeros dropped.
  explicit TermVector(std::vector<TermWeight> entries);

  std::span<const TermWeight> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  double weight(TermId term) const;
  double squared_norm() const;
  double norm() const;

  bool operator==(const TermVector&) const = default;

 private:
  std::vector<TermWeight> entries_;
};

/// Arithmetic mean of the given vectors (not re-normalized).
TermVector mean_vector(std::span<const TermVector* const> vectors);

class Vocabulary {
 public:
  Vocabulary() = default;

  /// Document frequencies over title + body of every document.
  /// Throws InvalidArgument for an empty corpus.
  static Vocabulary build(std::span<const Document> docs,
                          const Tokenizer& tokenizer = Tokenizer::standard());

  /// Each text counts as one document. Used when no corpus is available.
  static Vocabulary from_texts(std::span<const std::string> texts,
                               const Tokenizer& tokenizer = Tokenizer::standard());

  std::size_t size() const { return terms_.size(); }
  std::size_t n_docs() const { return n_docs_; }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::string& term(TermId id) const { return terms_.at(id); }
  std::optional<TermId> find(std::string_view term) const;
  std::size_t df(TermId id) const { return df_.at(id); }

  /// Smoothed inverse document frequency: ln((1 + N) / (1 + df)) + 1.
  double idf(TermId id) const;

 private:
  static Vocabulary from_token_sets(const std::vector<std::vector<std::string>>& docs);

  std::vector<std::string> terms_;  // lexicographic; TermId is the position
  std::vector<std::size_t> df_;
  std::unordered_map<std::string, TermId> index_;
  std::size_t n_docs_ = 0;
};

/// Raw term counts times idf, L2-normalized. Tokens outside the vocabulary
/// are ignored; text with no known tokens yields an empty vector.
TermVector tfidf(const Vocabulary& vocab, std::string_view text,
                 const Tokenizer& tokenizer = Tokenizer::standard());

/// Text that represents a document for vectorization: title, newline, body.
std::string document_text(const Document& doc);

/// A corpus with its vocabulary and per-document TF-IDF vectors.
class IndexedCorpus {
 public:
  explicit IndexedCorpus(std::vector<Document> docs,
                         const Tokenizer& tokenizer = Tokenizer::standard());

  const std::vector<Document>& documents() const { return docs_; }
  std::size_t size() const { return docs_.size(); }
  const Vocabulary& vocabulary() const { return vocab_; }
  const Tokenizer& tokenizer() const { return tokenizer_; }

  const Document* find(std::string_view id) const;
  const TermVector* vector_of(std::string_view id) const;

 private:
  std::vector<Document> docs_;
  Tokenizer tokenizer_;
  Vocabulary vocab_;
  std::vector<TermVector> vectors_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

}  // namespace provsum
