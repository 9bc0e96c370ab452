#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "provsum/error.hpp"

namespace provsum {

/// A value bound to a template placeholder. `link_key` travels with every
/// span the slot produces so a UI can link the text back to what it names.
struct SlotValue {
  using Value = std::variant<std::string, std::int64_t, double, bool, std::vector<std::string>>;

  Value value;
  std::string link_key;

  SlotValue() = default;
  SlotValue(std::string v, std::string link = {}) : value(std::move(v)), link_key(std::move(link)) {}
  SlotValue(const char* v, std::string link = {}) : value(std::string(v)), link_key(std::move(link)) {}
  SlotValue(std::int64_t v, std::string link = {}) : value(v), link_key(std::move(link)) {}
  SlotValue(int v, std::string link = {}) : value(std::int64_t{v}), link_key(std::move(link)) {}
  SlotValue(std::size_t v, std::string link = {})
      : value(static_cast<std::int64_t>(v)), link_key(std::move(link)) {}
  SlotValue(double v, std::string link = {}) : value(v), link_key(std::move(link)) {}
  SlotValue(bool v, std::string link = {}) : value(v), link_key(std::move(link)) {}
  SlotValue(std::vector<std::string> v, std::string link = {})
      : value(std::move(v)), link_key(std::move(link)) {}

  bool truthy() const;
};

using SlotMap = std::map<std::string, SlotValue, std::less<>>;

/// Byte range [start, end) of rendered text produced by one substitution.
struct TextSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string slot;
  std::string link_key;

  bool operator==(const TextSpan&) const = default;
};

struct RenderedText {
  std::string text;
  std::vector<TextSpan> spans;

  bool operator==(const RenderedText&) const = default;
};

/// Placeholder grammar:
///   {name}                  scalar substitution (lists join with ", " and " and ")
///   {name|list:N}           first N list items joined the same way
///   {name|plural:one:many}  `one` when the numeric value is 1, else `many`
///   {?flag text}            `text` (which may nest placeholders) only when
///                           flag is truthy
/// A backslash escapes the next character, so \{ and \} are literal braces.
class Template {
 public:
  Template();
  ~Template();
  Template(const Template&);
  Template(Template&&) noexcept;
  Template& operator=(const Template&);
  Template& operator=(Template&&) noexcept;

  /// Throws TemplateError carrying the byte offset of malformed syntax.
  static Template parse(std::string_view source);

  /// Throws TemplateError naming any placeholder that is not in `slots`.
  RenderedText render(const SlotMap& slots) const;

  struct Node;

 private:
  std::vector<Node> nodes_;
};

RenderedText render_template(std::string_view source, const SlotMap& slots);

/// The text a placeholder renders to, without any surrounding template.
std::string render_slot_value(const SlotValue& value);
std::string join_list(const std::vector<std::string>& items, std::size_t limit);

/// A file of sentence templates, one per line. Blank lines and '#' comments
/// are skipped.
class SentenceTemplates {
 public:
  static SentenceTemplates parse(std::string_view source);

  /// Renders every line, dropping sentences that come out empty.
  std::vector<RenderedText> render_each(const SlotMap& slots) const;
  /// Non-empty sentences joined by single spaces, spans shifted to match.
  RenderedText render_joined(const SlotMap& slots) const;

 private:
  std::vector<Template> lines_;
};

}  // namespace provsum
