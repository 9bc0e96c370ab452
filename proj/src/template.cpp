#include "provsum/template.hpp"

#include <charconv>
#include <cmath>

namespace provsum {

struct Template::Node {
  enum class Kind { Text, Slot, Conditional };
  enum class Filter { None, List, Plural };

  Kind kind = Kind::Text;
  std::string text;  // literal text, or slot/flag name
  Filter filter = Filter::None;
  std::size_t list_limit = 0;
  std::string singular;
  std::string plural;
  std::size_t position = 0;
  std::vector<Node> children;
};

namespace {

using Node = Template::Node;

bool is_name_char(char c, bool first) {
  if (c == '_' || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return true;
  return !first && c >= '0' && c <= '9';
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  std::vector<Node> parse_all() {
    auto nodes = parse_sequence(false);
    return nodes;
  }

 private:
  std::vector<Node> parse_sequence(bool in_conditional) {
    std::vector<Node> nodes;
    std::string literal;
    auto flush = [&] {
      if (!literal.empty()) {
        Node n;
        n.kind = Node::Kind::Text;
        n.text = std::move(literal);
        nodes.push_back(std::move(n));
        literal.clear();
      }
    };
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\\') {
        if (pos_ + 1 >= src_.size()) throw TemplateError("dangling escape at end of template", pos_);
        literal.push_back(src_[pos_ + 1]);
        pos_ += 2;
      } else if (c == '{') {
        flush();
        nodes.push_back(parse_placeholder());
      } else if (c == '}') {
        if (in_conditional) {
          flush();
          return nodes;
        }
        throw TemplateError("unmatched '}' at position " + std::to_string(pos_), pos_);
      } else {
        literal.push_back(c);
        ++pos_;
      }
    }
    if (in_conditional) throw TemplateError("unterminated conditional block", src_.size());
    flush();
    return nodes;
  }

  std::string parse_name() {
    const auto start = pos_;
    while (pos_ < src_.size() && is_name_char(src_[pos_], pos_ == start)) ++pos_;
    if (pos_ == start) {
      throw TemplateError("expected a placeholder name at position " + std::to_string(start),
                          start);
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  Node parse_placeholder() {
    const auto open = pos_;
    ++pos_;  // '{'
    Node node;
    node.position = open;
    if (pos_ < src_.size() && src_[pos_] == '?') {
      ++pos_;
      node.kind = Node::Kind::Conditional;
      node.text = parse_name();
      if (pos_ < src_.size() && src_[pos_] == ' ') {
        ++pos_;
      } else if (pos_ >= src_.size() || src_[pos_] != '}') {
        throw TemplateError("expected a space after conditional flag at position " +
                                std::to_string(pos_),
                            pos_);
      }
      node.children = parse_sequence(true);
      ++pos_;  // '}'
      return node;
    }

    node.kind = Node::Kind::Slot;
    node.text = parse_name();
    if (pos_ < src_.size() && src_[pos_] == '|') {
      ++pos_;
      const auto close = src_.find('}', pos_);
      if (close == std::string_view::npos) {
        throw TemplateError("unterminated placeholder starting at position " + std::to_string(open),
                            open);
      }
      parse_filter(node, src_.substr(pos_, close - pos_));
      pos_ = close;
    }
    if (pos_ >= src_.size() || src_[pos_] != '}') {
      throw TemplateError("expected '}' at position " + std::to_string(pos_), pos_);
    }
    ++pos_;
    return node;
  }

  void parse_filter(Node& node, std::string_view spec) {
    const auto filter_pos = pos_;
    if (spec.starts_with("list:")) {
      auto digits = spec.substr(5);
      std::size_t n = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
      if (ec != std::errc() || ptr != digits.data() + digits.size() || n == 0) {
        throw TemplateError("list filter needs a positive count at position " +
                                std::to_string(filter_pos),
                            filter_pos);
      }
      node.filter = Node::Filter::List;
      node.list_limit = n;
    } else if (spec.starts_with("plural:")) {
      auto forms = spec.substr(7);
      const auto colon = forms.find(':');
      if (colon == std::string_view::npos) {
        throw TemplateError("plural filter needs singular and plural forms at position " +
                                std::to_string(filter_pos),
                            filter_pos);
      }
      node.filter = Node::Filter::Plural;
      node.singular = std::string(forms.substr(0, colon));
      node.plural = std::string(forms.substr(colon + 1));
    } else {
      throw TemplateError("unknown filter '" + std::string(spec) + "' at position " +
                              std::to_string(filter_pos),
                          filter_pos);
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

const SlotValue& lookup(const SlotMap& slots, const Node& node) {
  auto it = slots.find(node.text);
  if (it == slots.end()) {
    throw TemplateError("unresolved placeholder '" + node.text + "'", node.position);
  }
  return it->second;
}

std::string render_filtered(const SlotValue& slot, const Node& node) {
  switch (node.filter) {
    case Node::Filter::None:
      return render_slot_value(slot);
    case Node::Filter::List:
      if (const auto* items = std::get_if<std::vector<std::string>>(&slot.value)) {
        return join_list(*items, node.list_limit);
      }
      return render_slot_value(slot);
    case Node::Filter::Plural: {
      double n = 0.0;
      if (const auto* i = std::get_if<std::int64_t>(&slot.value)) n = static_cast<double>(*i);
      else if (const auto* d = std::get_if<double>(&slot.value)) n = *d;
      else throw TemplateError("placeholder '" + node.text + "' is not numeric", node.position);
      return n == 1.0 ? node.singular : node.plural;
    }
  }
  return {};
}

void render_nodes(const std::vector<Node>& nodes, const SlotMap& slots, RenderedText& out) {
  for (const auto& node : nodes) {
    switch (node.kind) {
      case Node::Kind::Text:
        out.text += node.text;
        break;
      case Node::Kind::Slot: {
        const auto& slot = lookup(slots, node);
        const auto start = out.text.size();
        out.text += render_filtered(slot, node);
        out.spans.push_back({start, out.text.size(), node.text, slot.link_key});
        break;
      }
      case Node::Kind::Conditional:
        if (lookup(slots, node).truthy()) render_nodes(node.children, slots, out);
        break;
    }
  }
}

}  // namespace

bool SlotValue::truthy() const {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) return v;
        else if constexpr (std::is_same_v<T, std::int64_t>) return v != 0;
        else if constexpr (std::is_same_v<T, double>) return v != 0.0 && !std::isnan(v);
        else return !v.empty();
      },
      value);
}

std::string join_list(const std::vector<std::string>& items, std::size_t limit) {
  const auto n = std::min(items.size(), limit);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out += (i + 1 == n) ? " and " : ", ";
    out += items[i];
  }
  return out;
}

std::string render_slot_value(const SlotValue& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) return v;
        else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, double>) return format_number(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else return join_list(v, v.size());
      },
      value.value);
}

Template::Template() = default;
Template::~Template() = default;
Template::Template(const Template&) = default;
Template::Template(Template&&) noexcept = default;
Template& Template::operator=(const Template&) = default;
Template& Template::operator=(Template&&) noexcept = default;

Template Template::parse(std::string_view source) {
  Template t;
  t.nodes_ = Parser(source).parse_all();
  return t;
}

RenderedText Template::render(const SlotMap& slots) const {
  RenderedText out;
  render_nodes(nodes_, slots, out);
  return out;
}

RenderedText render_template(std::string_view source, const SlotMap& slots) {
  return Template::parse(source).render(slots);
}

SentenceTemplates SentenceTemplates::parse(std::string_view source) {
  SentenceTemplates set;
  std::size_t pos = 0;
  while (pos < source.size()) {
    auto end = source.find('\n', pos);
    if (end == std::string_view::npos) end = source.size();
    auto line = source.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos && line[first] != '#') {
      try {
        set.lines_.push_back(Template::parse(line));
      } catch (const TemplateError& e) {
        throw TemplateError(e.what(), pos + e.position());
      }
    }
    pos = end + 1;
  }
  return set;
}

std::vector<RenderedText> SentenceTemplates::render_each(const SlotMap& slots) const {
  std::vector<RenderedText> out;
  for (const auto& line : lines_) {
    auto r = line.render(slots);
    const auto first = r.text.find_first_not_of(" \t");
    if (first != std::string::npos) out.push_back(std::move(r));
  }
  return out;
}

RenderedText SentenceTemplates::render_joined(const SlotMap& slots) const {
  RenderedText out;
  for (auto& sentence : render_each(slots)) {
    if (!out.text.empty()) out.text += ' ';
    const auto offset = out.text.size();
    out.text += sentence.text;
    for (auto& span : sentence.spans) {
      span.start += offset;
      span.end += offset;
      out.spans.push_back(std::move(span));
    }
  }
  return out;
}

}  // namespace provsum
