#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "provsum/resources.hpp"
#include "provsum/textvec.hpp"

namespace provsum {

enum class EntityKind { Person, Location, Other };

std::string_view to_string(EntityKind kind);

struct Entity {
  std::string surface;  // exact substring of the input
  EntityKind kind = EntityKind::Other;

  bool operator==(const Entity&) const = default;
};

/// Named-entity extraction behind a replaceable interface. Implementations
/// must be deterministic and return one Entity per mention.
class EntityExtractor {
 public:
  virtual ~EntityExtractor() = default;
  virtual std::vector<Entity> extract(std::string_view text) const = 0;
};

/// Capitalization and gazetteer rules:
///  - a candidate is a maximal run of capitalized words separated only by
///    spaces or tabs; punctuation and line breaks end a run;
///  - location gazetteer entries (longest match first) are split out of a run
///    as Location mentions;
///  - the remaining words form a Person when one of them is a known given
///    name or the run follows an honorific (Mr, Dr, Gen, ...), else Other;
///  - leading stopwords and single letters are dropped from each candidate.
class HeuristicEntityExtractor final : public EntityExtractor {
 public:
  explicit HeuristicEntityExtractor(const Resources& resources);

  static const HeuristicEntityExtractor& standard();

  std::vector<Entity> extract(std::string_view text) const override;

 private:
  std::unordered_set<std::string> given_names_;
  std::unordered_set<std::string> locations_;
  std::unordered_set<std::string> honorifics_;
  std::size_t max_location_words_ = 1;
  Tokenizer tokenizer_;
};

struct EntityCount {
  std::string name;
  int count = 0;

  bool operator==(const EntityCount&) const = default;
};

/// Mentions of `kind` aggregated by exact surface, most frequent first, ties
/// in lexicographic order.
std::vector<EntityCount> count_entities(std::span<const Entity> mentions, EntityKind kind,
                                        std::size_t limit = std::numeric_limits<std::size_t>::max());

}  // namespace provsum
