#include "provsum/export.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "provsum/error.hpp"
#include "provsum/json_io.hpp"

namespace provsum {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string entity_list(const std::vector<EntityCount>& counts) {
  std::vector<std::string> items;
  for (const auto& c : counts) items.push_back(c.name + " (" + std::to_string(c.count) + ")");
  return join(items, ", ");
}

std::string keyword_list(const std::vector<Keyword>& keywords) {
  std::vector<std::string> items;
  for (const auto& k : keywords) items.push_back(k.term);
  return join(items, ", ");
}

std::string render_text(const SummaryResponse& r) {
  std::ostringstream out;
  out << "Session " << r.session_id << "\n";
  if (r.degraded) out << "(degraded mode)\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  out << "\n";
  for (const auto& s : r.overview.sentences) out << s.text << "\n";

  for (const auto& card : r.cards) {
    out << "\n== Segment " << card.segment_index + 1 << " ==\n";
    out << "Duration: " << format_duration(card.duration_ms) << ", " << card.n_events
        << (card.n_events == 1 ? " event\n" : " events\n");
    if (!card.keywords.empty()) out << "Keywords: " << keyword_list(card.keywords) << "\n";
    if (!card.people.empty()) out << "People: " << entity_list(card.people) << "\n";
    if (!card.places.empty()) out << "Places: " << entity_list(card.places) << "\n";
    if (!card.searches.empty()) out << "Searches: " << join(card.searches, "; ") << "\n";
    if (!card.docs_opened.empty()) {
      std::vector<std::string> docs;
      for (const auto& d : card.docs_opened) {
        docs.push_back(d.title.empty() ? d.doc_id : d.doc_id + " (" + d.title + ")");
      }
      out << "Documents: " << join(docs, "; ") << "\n";
    }
    if (card.avg_doc_dwell_ms) {
      out << "Average dwell: " << fixed(*card.avg_doc_dwell_ms / 1000.0, 1) << " s\n";
    }
    if (!card.prose.empty()) out << card.prose << "\n";
  }
  return out.str();
}

/// Wraps each span of `text` in a <span> carrying its slot and link key.
std::string html_with_spans(const std::string& text, const std::vector<TextSpan>& spans) {
  std::string out;
  std::size_t pos = 0;
  for (const auto& span : spans) {
    if (span.start < pos || span.end > text.size() || span.start > span.end) continue;
    out += html_escape(std::string_view(text).substr(pos, span.start - pos));
    out += "<span class=\"slot\" data-slot=\"" + html_escape(span.slot) + "\"";
    if (!span.link_key.empty()) out += " data-link=\"" + html_escape(span.link_key) + "\"";
    out += ">" + html_escape(std::string_view(text).substr(span.start, span.end - span.start)) +
           "</span>";
    pos = span.end;
  }
  out += html_escape(std::string_view(text).substr(pos));
  return out;
}

constexpr const char* kStyle = R"(
body{font-family:sans-serif;max-width:60rem;margin:2rem auto;color:#222}
.overview{background:#f4f4f4;padding:1rem;border-radius:4px}
.card{border:1px solid #ccc;border-radius:4px;padding:1rem;margin:1rem 0}
.card h2{margin:0 0 .5rem;font-size:1.1rem}
.meta{color:#666;font-size:.9rem}
.kw{display:inline-block;background:#e8eef8;border-radius:3px;padding:0 .3rem;margin:0 .2rem .2rem 0}
.warn{color:#a40}
span.slot[data-link]{text-decoration:underline dotted}
)";

std::string render_html(const SummaryResponse& r) {
  std::ostringstream out;
  out << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n"
      << "<title>Session " << html_escape(r.session_id) << "</title>\n<style>" << kStyle
      << "</style>\n</head>\n<body>\n";
  out << "<h1>Session " << html_escape(r.session_id) << "</h1>\n";
  for (const auto& w : r.warnings) out << "<p class=\"warn\">" << html_escape(w) << "</p>\n";

  out << "<section class=\"overview\">\n";
  for (const auto& s : r.overview.sentences) {
    out << "<p>" << html_with_spans(s.text, s.spans) << "</p>\n";
  }
  out << "</section>\n";

  for (const auto& card : r.cards) {
    out << "<section class=\"card\" id=\"segment-" << card.segment_index << "\">\n";
    out << "<h2>Segment " << card.segment_index + 1 << "</h2>\n";
    out << "<p class=\"meta\">" << html_escape(format_duration(card.duration_ms)) << ", "
        << card.n_events << (card.n_events == 1 ? " event" : " events") << "</p>\n";
    if (!card.keywords.empty()) {
      out << "<p>";
      for (const auto& k : card.keywords) {
        out << "<span class=\"kw\" data-link=\"keyword:" << html_escape(k.term) << "\">"
            << html_escape(k.term) << "</span>";
      }
      out << "</p>\n";
    }
    if (!card.people.empty()) out << "<p>People: " << html_escape(entity_list(card.people)) << "</p>\n";
    if (!card.places.empty()) out << "<p>Places: " << html_escape(entity_list(card.places)) << "</p>\n";
    if (!card.searches.empty()) {
      out << "<p>Searches:</p>\n<ul>\n";
      for (const auto& s : card.searches) out << "<li>" << html_escape(s) << "</li>\n";
      out << "</ul>\n";
    }
    if (!card.docs_opened.empty()) {
      out << "<p>Documents:</p>\n<ul>\n";
      for (const auto& d : card.docs_opened) {
        out << "<li><code>" << html_escape(d.doc_id) << "</code>";
        if (!d.title.empty()) out << " " << html_escape(d.title);
        out << "</li>\n";
      }
      out << "</ul>\n";
    }
    if (!card.prose.empty()) out << "<p>" << html_with_spans(card.prose, card.prose_spans) << "</p>\n";
    out << "</section>\n";
  }
  out << "</body>\n</html>\n";
  return out.str();
}

}  // namespace

std::string_view to_string(ExportFormat format) {
  switch (format) {
    case ExportFormat::Json: return "json";
    case ExportFormat::Html: return "html";
    case ExportFormat::Text: return "text";
  }
  return "json";
}

std::optional<ExportFormat> parse_export_format(std::string_view name) {
  if (name == "json") return ExportFormat::Json;
  if (name == "html") return ExportFormat::Html;
  if (name == "text" || name == "txt") return ExportFormat::Text;
  return std::nullopt;
}

std::string html_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_export(const SummaryResponse& response, ExportFormat format) {
  switch (format) {
    case ExportFormat::Json: return serialize(response);
    case ExportFormat::Html: return render_html(response);
    case ExportFormat::Text: return render_text(response);
  }
  return serialize(response);
}

void export_summary(const SummaryResponse& response, ExportFormat format,
                    const std::filesystem::path& out) {
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot write " + out.string());
  file << render_export(response, format);
  if (!file.flush()) throw Error("cannot write " + out.string());
}

}  // namespace provsum
