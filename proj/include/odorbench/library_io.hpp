#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "odorbench/signature.hpp"

namespace odorbench {

using Json = nlohmann::ordered_json;

// {n, vmax, templates: [{label, values: [int]}]}, keys in that order.
[[nodiscard]] Json LibraryToJson(const TemplateLibrary& library);
// Throws DataError on a malformed document; shape errors propagate from
// the TemplateLibrary constructor.
[[nodiscard]] TemplateLibrary LibraryFromJson(const Json& doc);

// Canonical serialized text (2-space indent, trailing newline).
[[nodiscard]] std::string SerializeLibrary(const TemplateLibrary& library);

void SaveLibrary(const TemplateLibrary& library, const std::filesystem::path& path);
// Throws IoError if the file cannot be read, DataError if it is not JSON.
[[nodiscard]] TemplateLibrary LoadLibrary(const std::filesystem::path& path);

// FNV-1a 64 of the text; printed as 16 hex digits by HexDigest.
[[nodiscard]] std::uint64_t Fnv1a64(std::string_view text) noexcept;
[[nodiscard]] std::string HexDigest(std::uint64_t value);

// Whole-file helpers used by every writer in the project.
void WriteTextFile(const std::filesystem::path& path, std::string_view text);
[[nodiscard]] std::string ReadTextFile(const std::filesystem::path& path);

}  // namespace odorbench
