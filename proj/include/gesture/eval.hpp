#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gesture/classify.hpp"
#include "gesture/normalize.hpp"
#include "gesture/sequence_io.hpp"

namespace gesture {

struct CorpusEntry {
  NormalizedSequence sequence;  // label is required
  std::string subject;
  int trial = 0;
};

struct LabeledCorpus {
  std::vector<CorpusEntry> entries;
  std::vector<std::string> gesture_ids;  // ordered, distinct

  /// Every label is listed in gesture_ids and (label, subject, trial) is unique.
  void validate() const;
};

/// Builds a corpus from manifest entries, gesture ids in first-seen order.
LabeledCorpus load_corpus(const std::vector<ManifestEntry>& manifest);
LabeledCorpus load_corpus(const std::filesystem::path& manifest_path);

inline constexpr std::string_view kFailed = "FAILED";

/// Rows are actual classes, columns predicted classes. Extra trailing
/// columns collect rejections and failed classifications when present.
struct ConfusionMatrix {
  std::vector<std::string> labels;
  bool rejected_column = false;
  bool failed_column = false;
  std::vector<std::vector<std::size_t>> counts;

  ConfusionMatrix() = default;
  ConfusionMatrix(std::vector<std::string> labels, bool rejected_column, bool failed_column);

  std::vector<std::string> column_labels() const;
  void add(std::size_t actual_row, std::size_t predicted_column);
  std::size_t column_of(std::string_view predicted) const;
  std::size_t total() const;
  std::size_t trace() const;
  std::size_t row_sum(std::size_t row) const;
  double accuracy() const;
};

struct ProtocolResult {
  ConfusionMatrix matrix;
  double accuracy = 0.0;
  std::size_t n_correct = 0;
  std::size_t n_total = 0;
  std::size_t n_failed = 0;
  std::size_t n_rejected = 0;
  std::map<std::string, std::string> chosen_templates;  // gesture id -> source id
};

/// Selects one template per gesture from `template_subject`'s trials, then
/// classifies every sequence of the other subjects. The template subject's
/// remaining trials are not evaluated. Throws MissingGesture.
ProtocolResult run_protocol(const LabeledCorpus& corpus, const std::string& template_subject,
                            const PipelineParams& params);

/// Picks the templates for `subject` without evaluating anything.
TemplateSet train_templates(const LabeledCorpus& corpus, const std::string& subject,
                            const PipelineParams& params);

struct SweepRow {
  double t_var = 0.0;
  double accuracy = 0.0;
  std::size_t n_correct = 0;
  std::size_t n_total = 0;
  std::size_t n_failed = 0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
};

/// run_protocol once per threshold, templates reselected each time.
SweepReport sweep_t_var(const LabeledCorpus& corpus, const std::string& template_subject,
                        const PipelineParams& params, const std::vector<double>& thresholds);

std::string confusion_csv(const ConfusionMatrix& matrix);
void write_confusion_csv(const ConfusionMatrix& matrix, const std::filesystem::path& destination);

std::string sweep_csv(const SweepReport& report);
void write_sweep_csv(const SweepReport& report, const std::filesystem::path& destination);

}  // namespace gesture
