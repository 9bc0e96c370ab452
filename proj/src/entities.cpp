#include "provsum/entities.hpp"

#include <algorithm>
#include <map>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

namespace provsum {

namespace {

struct Word {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool capitalized = false;
  // Whether only spaces/tabs separate this word from the previous one.
  bool joined_to_previous = false;
};

UChar32 decode_at(std::string_view text, std::size_t pos, std::size_t* next) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  auto i = static_cast<int32_t>(pos);
  UChar32 c = 0;
  U8_NEXT(bytes, i, static_cast<int32_t>(text.size()), c);
  *next = static_cast<std::size_t>(i);
  return c;
}

bool is_letter_or_digit(UChar32 c) { return c >= 0 && u_isalnum(c); }

bool is_mark(UChar32 c) {
  if (c < 0) return false;
  const auto t = u_charType(c);
  return t == U_NON_SPACING_MARK || t == U_COMBINING_SPACING_MARK;
}

std::vector<Word> split_words(std::string_view text) {
  std::vector<Word> words;
  std::size_t pos = 0;
  bool only_blank_since_word = false;
  while (pos < text.size()) {
    std::size_t next = 0;
    const UChar32 c = decode_at(text, pos, &next);
    if (!is_letter_or_digit(c)) {
      only_blank_since_word = only_blank_since_word && (c == ' ' || c == '\t');
      pos = next;
      continue;
    }
    Word w;
    w.begin = pos;
    w.capitalized = u_isupper(c) || u_istitle(c);
    w.joined_to_previous = only_blank_since_word && !words.empty() &&
                           words.back().end < pos;
    pos = next;
    while (pos < text.size()) {
      const UChar32 d = decode_at(text, pos, &next);
      if (is_letter_or_digit(d) || is_mark(d)) {
        pos = next;
        continue;
      }
      // Apostrophes and hyphens stay inside a word when a letter follows.
      if (d == '\'' || d == '-' || d == 0x2019) {
        std::size_t after = 0;
        if (next < text.size() && is_letter_or_digit(decode_at(text, next, &after))) {
          pos = next;
          continue;
        }
      }
      break;
    }
    w.end = pos;
    words.push_back(w);
    only_blank_since_word = true;
  }
  return words;
}

}  // namespace

std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::Person:
      return "Person";
    case EntityKind::Location:
      return "Location";
    case EntityKind::Other:
      return "Other";
  }
  return "Other";
}

HeuristicEntityExtractor::HeuristicEntityExtractor(const Resources& resources)
    : given_names_(resources.given_names.begin(), resources.given_names.end()),
      locations_(resources.locations.begin(), resources.locations.end()),
      honorifics_(resources.honorifics.begin(), resources.honorifics.end()),
      tokenizer_(resources.stopwords) {
  for (const auto& loc : resources.locations) {
    const auto words = static_cast<std::size_t>(std::count(loc.begin(), loc.end(), ' ')) + 1;
    max_location_words_ = std::max(max_location_words_, words);
  }
}

const HeuristicEntityExtractor& HeuristicEntityExtractor::standard() {
  static const HeuristicEntityExtractor extractor(Resources::bundled());
  return extractor;
}

std::vector<Entity> HeuristicEntityExtractor::extract(std::string_view text) const {
  const auto words = split_words(text);
  auto word_text = [&](const Word& w) { return text.substr(w.begin, w.end - w.begin); };

  std::vector<Entity> out;
  auto emit = [&](std::size_t first, std::size_t last, EntityKind kind) {
    out.push_back({std::string(text.substr(words[first].begin, words[last].end - words[first].begin)),
                   kind});
  };

  // Emits a non-location chunk [first, last] after dropping leading filler.
  auto emit_chunk = [&](std::size_t first, std::size_t last, bool after_honorific) {
    while (first <= last && tokenizer_.tokenize(word_text(words[first])).empty()) ++first;
    if (first > last) return;
    bool person = after_honorific;
    for (std::size_t i = first; i <= last && !person; ++i) {
      person = given_names_.count(std::string(word_text(words[i]))) != 0;
    }
    emit(first, last, person ? EntityKind::Person : EntityKind::Other);
  };

  auto location_match = [&](std::size_t i, std::size_t run_end) -> std::size_t {
    const auto max_len = std::min(max_location_words_, run_end - i);
    for (std::size_t len = max_len; len >= 1; --len) {
      std::string joined;
      for (std::size_t k = i; k < i + len; ++k) {
        if (k > i) joined += ' ';
        joined += word_text(words[k]);
      }
      if (!locations_.count(joined)) continue;
      // A lone given name that starts a longer run is a first name.
      if (len == 1 && i + 1 < run_end && given_names_.count(joined)) continue;
      return len;
    }
    return 0;
  };

  bool honorific_pending = false;
  std::size_t i = 0;
  while (i < words.size()) {
    const auto& w = words[i];
    if (!w.capitalized) {
      honorific_pending = false;
      ++i;
      continue;
    }
    if (honorifics_.count(std::string(word_text(w)))) {
      // "Dr" or "Dr." directly followed by the name.
      honorific_pending = i + 1 < words.size() && words[i + 1].capitalized;
      if (honorific_pending) {
        const auto gap = text.substr(w.end, words[i + 1].begin - w.end);
        honorific_pending = gap.find_first_not_of(". \t") == std::string_view::npos;
      }
      ++i;
      continue;
    }

    auto run_end = i + 1;
    while (run_end < words.size() && words[run_end].capitalized &&
           words[run_end].joined_to_previous &&
           !honorifics_.count(std::string(word_text(words[run_end])))) {
      ++run_end;
    }

    if (honorific_pending) {
      emit_chunk(i, run_end - 1, true);
    } else {
      std::size_t chunk_start = i;
      std::size_t k = i;
      while (k < run_end) {
        if (const auto len = location_match(k, run_end)) {
          if (chunk_start < k) emit_chunk(chunk_start, k - 1, false);
          emit(k, k + len - 1, EntityKind::Location);
          k += len;
          chunk_start = k;
        } else {
          ++k;
        }
      }
      if (chunk_start < run_end) emit_chunk(chunk_start, run_end - 1, false);
    }
    honorific_pending = false;
    i = run_end;
  }
  return out;
}

std::vector<EntityCount> count_entities(std::span<const Entity> mentions, EntityKind kind,
                                        std::size_t limit) {
  std::map<std::string, int> counts;
  for (const auto& m : mentions) {
    if (m.kind == kind) ++counts[m.surface];
  }
  std::vector<EntityCount> out;
  out.reserve(counts.size());
  for (auto& [name, count] : counts) out.push_back({name, count});
  std::stable_sort(out.begin(), out.end(),
                   [](const EntityCount& a, const EntityCount& b) { return a.count > b.count; });
  if (out.size() > limit) out.resize(limit);
  return out;
}

}  // namespace provsum
