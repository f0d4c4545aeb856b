#include "odorbench/library_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "odorbench/errors.hpp"

namespace odorbench {

Json LibraryToJson(const TemplateLibrary& library) {
  Json doc;
  doc["n"] = library.length();
  doc["vmax"] = library.vmax();
  Json templates = Json::array();
  for (const auto& t : library.templates()) {
    Json entry;
    entry["label"] = t.label;
    entry["values"] = Json(std::vector<Level>(t.signature.values().begin(), t.signature.values().end()));
    templates.push_back(std::move(entry));
  }
  doc["templates"] = std::move(templates);
  return doc;
}

TemplateLibrary LibraryFromJson(const Json& doc) {
  try {
    const auto n = doc.at("n").get<std::size_t>();
    const auto vmax = doc.at("vmax").get<Level>();
    std::vector<Template> templates;
    for (const auto& entry : doc.at("templates")) {
      auto values = entry.at("values").get<std::vector<Level>>();
      auto label = entry.at("label").get<std::string>();
      if (values.size() != n) {
        throw InputShapeError("template '" + label + "' has " + std::to_string(values.size()) +
                              " values, library declares n=" + std::to_string(n));
      }
      templates.push_back({std::move(label), Signature(std::move(values), vmax)});
    }
    return TemplateLibrary(std::move(templates));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed template library: ") + e.what());
  }
}

std::string SerializeLibrary(const TemplateLibrary& library) {
  return LibraryToJson(library).dump(2) + "\n";
}

void SaveLibrary(const TemplateLibrary& library, const std::filesystem::path& path) {
  WriteTextFile(path, SerializeLibrary(library));
}

TemplateLibrary LoadLibrary(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return LibraryFromJson(doc);
}

std::uint64_t Fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string HexDigest(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace odorbench
