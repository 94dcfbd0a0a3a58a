#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gesture/classify.hpp"
#include "gesture/normalize.hpp"
#include "json.hpp"

namespace gesture {

// Sequence file:
//   {"source_id": str, "label": str|null, "fps": num|null,
//    "frames": [[x0, y0, ..., x17, y17], ...]}
nlohmann::json sequence_to_json(const NormalizedSequence& sequence);
NormalizedSequence sequence_from_json(const nlohmann::json& doc);

void write_sequence_file(const NormalizedSequence& sequence, const std::filesystem::path& path);
NormalizedSequence read_sequence_file(const std::filesystem::path& path);

// Missing keys keep their defaults, so the same reader serves config files.
nlohmann::json params_to_json(const PipelineParams& params);
PipelineParams params_from_json(const nlohmann::json& doc, PipelineParams base = {});

// Template set file:
//   {"format_version": 1, "params": {...}, "templates": {id: sequence, ...}}
inline constexpr int kTemplateFormatVersion = 1;
nlohmann::json template_set_to_json(const TemplateSet& set);
TemplateSet template_set_from_json(const nlohmann::json& doc);
void write_template_set(const TemplateSet& set, const std::filesystem::path& path);
TemplateSet read_template_set(const std::filesystem::path& path);

// Corpus manifest: [{"path": str, "label": str, "subject": str, "trial": int}, ...]
// Relative paths resolve against the manifest's directory.
struct ManifestEntry {
  std::filesystem::path path;
  std::string label;
  std::string subject;
  int trial = 0;
};

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::vector<ManifestEntry>& entries, const std::filesystem::path& path);

/// Reads and parses a JSON file; IoError or MalformedJson on failure.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace gesture
