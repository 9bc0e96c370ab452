#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "provsum/pipeline.hpp"

namespace provsum {

enum class ExportFormat { Json, Html, Text };

std::string_view to_string(ExportFormat format);
std::optional<ExportFormat> parse_export_format(std::string_view name);

/// Json is byte-identical to the API summary body; Html is one self-contained
/// page with no external assets.
std::string render_export(const SummaryResponse& response, ExportFormat format);

/// Throws Error when `out` cannot be written.
void export_summary(const SummaryResponse& response, ExportFormat format,
                    const std::filesystem::path& out);

std::string html_escape(std::string_view text);

}  // namespace provsum
