#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "provsum/textvec.hpp"

using namespace provsum;

namespace {

std::vector<Document> docs_of(std::initializer_list<const char*> bodies) {
  std::vector<Document> out;
  int i = 0;
  for (const char* b : bodies) out.push_back({"d" + std::to_string(++i), "", b});
  return out;
}

double weight_of(const Vocabulary& vocab, const TermVector& v, const std::string& term) {
  auto id = vocab.find(term);
  return id ? v.weight(*id) : 0.0;
}

}  // namespace

TEST_SUITE("textvec") {
  TEST_CASE("tokenize") {
    using V = std::vector<std::string>;
    CHECK(tokenize("The Arms-Dealer met at 10") == V{"arms", "dealer", "met", "10"});
    CHECK(tokenize("").empty());
    CHECK(tokenize("the a an").empty());
    CHECK(tokenize("x y z 7") == V{});
    CHECK(tokenize("Café ÜBER naïve") == V{"café", "über", "naïve"});
    CHECK(tokenize("e\xCC\x81t\xC3\xA9") == V{"e\xCC\x81t\xC3\xA9"});  // combining acute
    CHECK(tokenize("2023-11-14 $4,500") == V{"2023", "11", "14", "500"});
    CHECK(tokenize("O'Brien's") == V{"brien"});
    CHECK(tokenize("Москва и Киев") == V{"москва", "киев"});
  }

  TEST_CASE("tokenizer with a custom stopword list") {
    std::vector<std::string> stop{"alpha"};
    Tokenizer t(stop);
    CHECK(t.tokenize("alpha beta the") == std::vector<std::string>{"beta", "the"});
    CHECK(t.is_stopword("alpha"));
    CHECK_FALSE(t.is_stopword("the"));
  }

  TEST_CASE("vocabulary document frequencies") {
    auto vocab = Vocabulary::build(docs_of({"apple banana apple", "banana cherry"}));
    CHECK(vocab.n_docs() == 2);
    CHECK(vocab.terms() == std::vector<std::string>{"apple", "banana", "cherry"});
    CHECK(vocab.df(*vocab.find("apple")) == 1);
    CHECK(vocab.df(*vocab.find("banana")) == 2);
    CHECK(vocab.df(*vocab.find("cherry")) == 1);
    CHECK_FALSE(vocab.find("durian").has_value());
  }

  TEST_CASE("single empty document") {
    auto vocab = Vocabulary::build(docs_of({""}));
    CHECK(vocab.size() == 0);
    CHECK(vocab.n_docs() == 1);
  }

  TEST_CASE("empty corpus is an error") {
    CHECK_THROWS_AS(Vocabulary::build(std::vector<Document>{}), InvalidArgument);
  }

  TEST_CASE("titles count toward the vocabulary") {
    std::vector<Document> docs{{"a", "Harbor report", "nothing else"}};
    auto vocab = Vocabulary::build(docs);
    CHECK(vocab.find("harbor").has_value());
    CHECK(document_text(docs[0]) == "Harbor report\nnothing else");
  }

  TEST_CASE("tfidf: single term") {
    auto vocab = Vocabulary::build(docs_of({"xx"}));
    auto v = tfidf(vocab, "xx");
    REQUIRE(v.size() == 1);
    CHECK(v.entries()[0].weight == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("tfidf: two-document example against the oracle") {
    auto docs = docs_of({"apple banana apple", "banana cherry"});
    auto vocab = Vocabulary::build(docs);
    auto v = tfidf(vocab, "apple banana");
    // Frozen from oracle::tfidf; apple raw = ln(3/2) + 1, banana raw = 1.
    const double apple = 0.8148024746671689;
    const double banana = 0.5797386715376657;
    CHECK(std::abs(weight_of(vocab, v, "apple") - apple) < 1e-12);
    CHECK(std::abs(weight_of(vocab, v, "banana") - banana) < 1e-12);
    auto expected = oracle::tfidf({"apple banana apple", "banana cherry"}, "apple banana");
    CHECK(std::abs(expected.at("apple") - apple) < 1e-12);
    CHECK(std::abs(expected.at("banana") - banana) < 1e-12);
    CHECK(weight_of(vocab, v, "cherry") == 0.0);
  }

  TEST_CASE("tfidf: unknown terms give an empty vector") {
    auto vocab = Vocabulary::build(docs_of({"apple banana"}));
    CHECK(tfidf(vocab, "zzz").empty());
    CHECK(tfidf(vocab, "").empty());
    CHECK(tfidf(vocab, "zzz apple").size() == 1);
  }

  TEST_CASE("tfidf: normalization and monotonicity") {
    auto vocab = Vocabulary::build(docs_of({"red green blue", "green blue", "blue"}));
    const std::string texts[] = {"red", "red green", "red red green blue", "blue blue blue green"};
    for (const auto& t : texts) {
      auto v = tfidf(vocab, t);
      CHECK(std::abs(v.norm() - 1.0) < 1e-9);
    }
    // Pre-normalization weight of "red" grows with each occurrence; after
    // normalization its share of the vector cannot shrink.
    double prev = 0.0;
    std::string text = "green blue";
    for (int i = 0; i < 5; ++i) {
      text += " red";
      auto v = tfidf(vocab, text);
      double w = weight_of(vocab, v, "red");
      CHECK(w >= prev);
      prev = w;
    }
  }

  TEST_CASE("term vector construction") {
    TermVector v({{3, 0.5}, {1, 0.25}, {3, 0.5}, {2, 0.0}});
    REQUIRE(v.size() == 2);
    CHECK(v.entries()[0].term == 1);
    CHECK(v.entries()[1].term == 3);
    CHECK(v.weight(3) == 1.0);
    CHECK(v.weight(2) == 0.0);
    CHECK(v.squared_norm() == doctest::Approx(1.0625));
  }

  TEST_CASE("mean vector") {
    TermVector a({{0, 1.0}});
    TermVector b({{1, 1.0}});
    const TermVector* both[] = {&a, &b};
    auto m = mean_vector(both);
    CHECK(m.weight(0) == 0.5);
    CHECK(m.weight(1) == 0.5);
    CHECK(mean_vector(std::span<const TermVector* const>{}).empty());
  }

  TEST_CASE("indexed corpus") {
    IndexedCorpus corpus(docs_of({"apple banana apple", "banana cherry"}));
    CHECK(corpus.size() == 2);
    REQUIRE(corpus.find("d1") != nullptr);
    CHECK(corpus.find("zz") == nullptr);
    CHECK(corpus.vector_of("zz") == nullptr);
    auto direct = tfidf(corpus.vocabulary(), document_text(*corpus.find("d2")));
    CHECK(*corpus.vector_of("d2") == direct);
  }

  TEST_CASE("interaction text does not change document frequencies") {
    IndexedCorpus corpus(docs_of({"apple banana", "banana"}));
    const auto before = corpus.vocabulary().df(*corpus.vocabulary().find("apple"));
    for (int i = 0; i < 10; ++i) (void)tfidf(corpus.vocabulary(), "apple apple apple");
    CHECK(corpus.vocabulary().df(*corpus.vocabulary().find("apple")) == before);
  }

  TEST_CASE("vocabulary from texts") {
    std::vector<std::string> texts{"bridge explosives", "bridge van", ""};
    auto vocab = Vocabulary::from_texts(texts);
    CHECK(vocab.n_docs() == 3);
    CHECK(vocab.df(*vocab.find("bridge")) == 2);
  }
}
