#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace provsum {

/// Word lists and templates that drive tokenization, entity extraction and
/// prose rendering. Bundled copies are compiled in; `load` overlays any file
/// present in a directory with the same layout as `resources/`.
struct Resources {
  std::vector<std::string> stopwords;
  std::vector<std::string> given_names;
  std::vector<std::string> locations;
  std::vector<std::string> honorifics;
  std::string segment_template;
  std::string overview_template;

  static const Resources& bundled();
  static Resources load(const std::filesystem::path& dir);
};

/// One entry per line; blank lines and lines starting with '#' are skipped.
std::vector<std::string> parse_word_list(std::string_view text);

}  // namespace provsum
