#include "gesture/sequence_io.hpp"

#include <fstream>
#include <sstream>

#include "gesture/error.hpp"

namespace gesture {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorCode::SchemaViolation, what);
}

template <typename T>
T get_or(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key) || doc[key].is_null()) return fallback;
  try {
    return doc[key].get<T>();
  } catch (const json::exception&) {
    schema_error(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

json sequence_to_json(const NormalizedSequence& sequence) {
  json frames = json::array();
  for (const NormalizedFrame& f : sequence.frames) {
    json row = json::array();
    for (const Point2& p : f.coords) {
      row.push_back(p.x);
      row.push_back(p.y);
    }
    frames.push_back(std::move(row));
  }
  return json{{"source_id", sequence.source_id},
              {"label", sequence.label ? json(*sequence.label) : json(nullptr)},
              {"fps", sequence.fps ? json(*sequence.fps) : json(nullptr)},
              {"frames", std::move(frames)}};
}

NormalizedSequence sequence_from_json(const json& doc) {
  if (!doc.is_object()) schema_error("sequence must be a JSON object");
  if (!doc.contains("frames") || !doc["frames"].is_array()) schema_error("sequence lacks 'frames'");

  NormalizedSequence seq;
  seq.source_id = get_or<std::string>(doc, "source_id", "");
  if (doc.contains("label") && !doc["label"].is_null()) seq.label = get_or<std::string>(doc, "label", "");
  if (doc.contains("fps") && !doc["fps"].is_null()) seq.fps = get_or<double>(doc, "fps", 0.0);

  for (const json& row : doc["frames"]) {
    if (!row.is_array() || row.size() != 2 * kNumKeypoints) {
      schema_error("each frame must hold " + std::to_string(2 * kNumKeypoints) + " numbers");
    }
    NormalizedFrame frame;
    for (std::size_t k = 0; k < kNumKeypoints; ++k) {
      if (!row[2 * k].is_number() || !row[2 * k + 1].is_number()) {
        schema_error("non-numeric coordinate in frame " + std::to_string(seq.frames.size()));
      }
      frame.coords[k] = Point2{row[2 * k].get<double>(), row[2 * k + 1].get<double>()};
    }
    seq.frames.push_back(frame);
  }
  return seq;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedJson, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

void write_sequence_file(const NormalizedSequence& sequence, const std::filesystem::path& path) {
  write_text_file(path, sequence_to_json(sequence).dump() + "\n");
}

NormalizedSequence read_sequence_file(const std::filesystem::path& path) {
  try {
    return sequence_from_json(read_json_file(path));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SchemaViolation) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

json params_to_json(const PipelineParams& params) {
  return json{{"median_radius", params.median_radius},
              {"sigma", params.sigma},
              {"t_var", params.t_var},
              {"dtw_radius", params.dtw_radius},
              {"dtw", std::string(to_string(params.dtw_method))},
              {"reject_threshold",
               params.reject_threshold ? json(*params.reject_threshold) : json(nullptr)},
              {"reduction", std::string(to_string(params.reduction))}};
}

PipelineParams params_from_json(const json& doc, PipelineParams base) {
  if (!doc.is_object()) schema_error("params must be a JSON object");
  base.median_radius = get_or<std::size_t>(doc, "median_radius", base.median_radius);
  base.sigma = get_or<double>(doc, "sigma", base.sigma);
  base.t_var = get_or<double>(doc, "t_var", base.t_var);
  base.dtw_radius = get_or<std::size_t>(doc, "dtw_radius", base.dtw_radius);
  if (doc.contains("dtw")) base.dtw_method = parse_dtw_method(get_or<std::string>(doc, "dtw", "fast"));
  if (doc.contains("reject_threshold")) {
    base.reject_threshold = doc["reject_threshold"].is_null()
                                ? std::nullopt
                                : std::optional<double>(get_or<double>(doc, "reject_threshold", 0.0));
  }
  if (doc.contains("reduction")) {
    base.reduction = parse_reduction(get_or<std::string>(doc, "reduction", "sum"));
  }
  base.validate();
  return base;
}

json template_set_to_json(const TemplateSet& set) {
  json templates = json::object();
  for (const auto& [id, t] : set.templates()) {
    if (!t.prepared.source) {
      throw Error(ErrorCode::InvalidArgument, "template '" + id + "' has no source sequence");
    }
    templates[id] = sequence_to_json(*t.prepared.source);
  }
  return json{{"format_version", kTemplateFormatVersion},
              {"params", params_to_json(set.params())},
              {"templates", std::move(templates)}};
}

TemplateSet template_set_from_json(const json& doc) {
  if (!doc.is_object()) schema_error("template set must be a JSON object");
  if (get_or<int>(doc, "format_version", 0) != kTemplateFormatVersion) {
    schema_error("unsupported template format_version");
  }
  if (!doc.contains("params") || !doc.contains("templates") || !doc["templates"].is_object()) {
    schema_error("template set needs 'params' and a 'templates' object");
  }
  const PipelineParams params = params_from_json(doc["params"]);
  std::vector<GestureTemplate> templates;
  for (const auto& [id, seq_doc] : doc["templates"].items()) {
    NormalizedSequence seq = sequence_from_json(seq_doc);
    if (!seq.label) seq.label = id;
    templates.push_back(GestureTemplate{prepare(seq, params.filter()), id, 0.0});
  }
  return TemplateSet(params, std::move(templates));
}

void write_template_set(const TemplateSet& set, const std::filesystem::path& path) {
  write_text_file(path, template_set_to_json(set).dump(2) + "\n");
}

TemplateSet read_template_set(const std::filesystem::path& path) {
  return template_set_from_json(read_json_file(path));
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  const json doc = read_json_file(path);
  if (!doc.is_array()) schema_error(path.string() + ": manifest must be a JSON array");
  const std::filesystem::path base = path.parent_path();
  std::vector<ManifestEntry> entries;
  for (const json& item : doc) {
    if (!item.is_object() || !item.contains("path") || !item.contains("label") ||
        !item.contains("subject")) {
      schema_error(path.string() + ": manifest entries need path, label and subject");
    }
    ManifestEntry e;
    e.path = get_or<std::string>(item, "path", "");
    if (e.path.is_relative()) e.path = base / e.path;
    e.label = get_or<std::string>(item, "label", "");
    e.subject = item["subject"].is_number() ? std::to_string(item["subject"].get<long long>())
                                            : get_or<std::string>(item, "subject", "");
    e.trial = get_or<int>(item, "trial", 0);
    entries.push_back(std::move(e));
  }
  return entries;
}

void write_manifest(const std::vector<ManifestEntry>& entries, const std::filesystem::path& path) {
  json doc = json::array();
  for (const ManifestEntry& e : entries) {
    doc.push_back(json{{"path", e.path.generic_string()},
                       {"label", e.label},
                       {"subject", e.subject},
                       {"trial", e.trial}});
  }
  write_text_file(path, doc.dump(2) + "\n");
}

}  // namespace gesture
