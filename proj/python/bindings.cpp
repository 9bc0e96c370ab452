#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "provsum/error.hpp"
#include "provsum/json_io.hpp"
#include "provsum/segmenter.hpp"
#include "provsum/synthetic.hpp"
#include "provsum/template.hpp"
#include "provsum/textvec.hpp"
#include "provsum/workspace.hpp"

namespace py = pybind11;
using namespace provsum;

namespace {

using SparseRow = std::map<TermId, double>;

VectorSequence sequence_from_rows(const std::vector<SparseRow>& rows) {
  VectorSequence seq;
  std::int64_t i = 0;
  for (const auto& row : rows) {
    std::vector<TermWeight> entries;
    for (const auto& [term, weight] : row) entries.push_back({term, weight});
    seq.push_back({i, i, TermVector(std::move(entries))});
    ++i;
  }
  return seq;
}

std::map<std::string, double> named_weights(const Vocabulary& vocab, const TermVector& v) {
  std::map<std::string, double> out;
  for (const auto& tw : v.entries()) out.emplace(vocab.terms()[tw.term], tw.weight);
  return out;
}

TermId term_id(const Vocabulary& vocab, const std::string& term) {
  auto id = vocab.find(term);
  if (!id) throw py::key_error(term);
  return *id;
}

SlotValue slot_from_py(const py::handle& obj) {
  if (py::isinstance<py::bool_>(obj)) return SlotValue(obj.cast<bool>());
  if (py::isinstance<py::int_>(obj)) return SlotValue(obj.cast<std::int64_t>());
  if (py::isinstance<py::float_>(obj)) return SlotValue(obj.cast<double>());
  if (py::isinstance<py::str>(obj)) return SlotValue(obj.cast<std::string>());
  return SlotValue(obj.cast<std::vector<std::string>>());
}

}  // namespace

PYBIND11_MODULE(_provsum, m) {
  m.doc() = "Provenance log segmentation and summarization";

  py::register_exception<Error>(m, "Error");
  py::register_exception<TemplateError>(m, "TemplateError", m.attr("Error"));
  py::register_exception<ParseError>(m, "ParseError", m.attr("Error"));
  py::register_exception<NotFoundError>(m, "NotFoundError", m.attr("Error"));
  py::register_exception<InvalidArgument>(m, "InvalidArgument", m.attr("Error"));

  m.def("tokenize", [](const std::string& text) { return tokenize(text); }, py::arg("text"));

  py::class_<Vocabulary>(m, "Vocabulary")
      .def_static(
          "build",
          [](const std::vector<std::pair<std::string, std::string>>& docs) {
            std::vector<Document> corpus;
            for (const auto& [id, body] : docs) corpus.push_back({id, "", body});
            return Vocabulary::build(corpus);
          },
          py::arg("docs"), "Build from (id, text) pairs.")
      .def_property_readonly("terms", &Vocabulary::terms)
      .def("__len__", &Vocabulary::size)
      .def("df", [](const Vocabulary& v, const std::string& t) { return v.df(term_id(v, t)); })
      .def("idf", [](const Vocabulary& v, const std::string& t) { return v.idf(term_id(v, t)); })
      .def("tfidf", [](const Vocabulary& v, const std::string& text) {
        return named_weights(v, tfidf(v, text));
      });

  m.def(
      "segment",
      [](const std::vector<SparseRow>& rows, int max_segments, double min_gain_ratio,
         int min_segment_len) {
        SegmentationParams params{max_segments, min_gain_ratio, min_segment_len};
        auto seq = sequence_from_rows(rows);
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (const auto& s : binary_segmentation(seq, params)) out.emplace_back(s.start, s.end);
        return out;
      },
      py::arg("vectors"), py::arg("max_segments") = 11, py::arg("min_gain_ratio") = 1e-3,
      py::arg("min_segment_len") = 3,
      "Segment a sequence of sparse {term_id: weight} vectors; returns (start, end) ranges.");

  m.def(
      "render_template",
      [](const std::string& source, const py::dict& slots) {
        SlotMap map;
        for (const auto& [key, value] : slots) map.emplace(key.cast<std::string>(), slot_from_py(value));
        auto r = render_template(source, map);
        py::list spans;
        for (const auto& s : r.spans) spans.append(py::make_tuple(s.start, s.end, s.slot));
        return py::make_tuple(r.text, spans);
      },
      py::arg("source"), py::arg("slots"));

  m.def(
      "generate_synthetic",
      [](std::uint64_t seed, int n_docs, int n_events, int n_phases) {
        auto ws = generate_synthetic(seed, n_docs, n_events, n_phases);
        py::dict out;
        out["session_id"] = ws.session.id;
        out["n_documents"] = ws.documents.size();
        out["events_jsonl"] = to_canonical(ws.session);
        out["boundary_event_seqs"] = ws.boundary_event_seqs;
        out["phase_terms"] = ws.phase_terms;
        return out;
      },
      py::arg("seed"), py::arg("n_docs") = 120, py::arg("n_events") = 600,
      py::arg("n_phases") = 5);

  m.def(
      "parse_log",
      [](const std::string& text, const std::string& format, const std::string& session_id) {
        auto f = parse_log_format(format);
        if (!f) throw InvalidArgument("unknown log format '" + format + "'");
        std::istringstream in(text);
        ParseOptions options;
        options.session_id = session_id;
        return to_canonical(parse_log(in, *f, options));
      },
      py::arg("text"), py::arg("format"), py::arg("session_id") = "session",
      "Parse a log and return it as canonical JSONL.");

  py::class_<Workspace>(m, "Workspace")
      .def_static("open", &Workspace::open, py::arg("path"))
      .def_property_readonly("has_corpus", &Workspace::has_corpus)
      .def("session_ids", &Workspace::session_ids)
      .def(
          "summary_json",
          [](const Workspace& ws, const std::string& id, int segments) {
            SegmentationParams params;
            params.max_segments = segments;
            std::shared_ptr<const PipelineResult> result;
            {
              py::gil_scoped_release release;
              result = ws.summarize(id, params);
            }
            return serialize(result->response);
          },
          py::arg("session_id"), py::arg("segments") = 11);

  m.def("write_synthetic_workspace",
        [](const std::filesystem::path& dir, std::uint64_t seed, int n_docs, int n_events,
           int n_phases) { write_workspace(dir, generate_synthetic(seed, n_docs, n_events, n_phases)); },
        py::arg("path"), py::arg("seed"), py::arg("n_docs") = 120, py::arg("n_events") = 600,
        py::arg("n_phases") = 5);
}
