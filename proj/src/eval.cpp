#include "gesture/eval.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <tuple>

#include "gesture/error.hpp"
#include "gesture/parallel.hpp"

namespace gesture {

void LabeledCorpus::validate() const {
  const std::set<std::string> known(gesture_ids.begin(), gesture_ids.end());
  if (known.size() != gesture_ids.size()) {
    throw Error(ErrorCode::InvalidArgument, "gesture ids are not distinct");
  }
  std::set<std::tuple<std::string, std::string, int>> seen;
  for (const CorpusEntry& e : entries) {
    if (!e.sequence.label || !known.count(*e.sequence.label)) {
      throw Error(ErrorCode::InvalidArgument,
                  "sequence '" + e.sequence.source_id + "' has an unknown or missing label");
    }
    if (!seen.emplace(*e.sequence.label, e.subject, e.trial).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate (label, subject, trial) for '" +
                                                  *e.sequence.label + "', subject " + e.subject +
                                                  ", trial " + std::to_string(e.trial));
    }
  }
}

LabeledCorpus load_corpus(const std::vector<ManifestEntry>& manifest) {
  LabeledCorpus corpus;
  for (const ManifestEntry& m : manifest) {
    CorpusEntry e;
    e.sequence = read_sequence_file(m.path);
    e.sequence.label = m.label;
    e.subject = m.subject;
    e.trial = m.trial;
    if (std::find(corpus.gesture_ids.begin(), corpus.gesture_ids.end(), m.label) ==
        corpus.gesture_ids.end()) {
      corpus.gesture_ids.push_back(m.label);
    }
    corpus.entries.push_back(std::move(e));
  }
  corpus.validate();
  return corpus;
}

LabeledCorpus load_corpus(const std::filesystem::path& manifest_path) {
  return load_corpus(read_manifest(manifest_path));
}

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> labels_in, bool rejected, bool failed)
    : labels(std::move(labels_in)), rejected_column(rejected), failed_column(failed) {
  counts.assign(labels.size(), std::vector<std::size_t>(column_labels().size(), 0));
}

std::vector<std::string> ConfusionMatrix::column_labels() const {
  std::vector<std::string> cols = labels;
  if (rejected_column) cols.emplace_back(kRejected);
  if (failed_column) cols.emplace_back(kFailed);
  return cols;
}

std::size_t ConfusionMatrix::column_of(std::string_view predicted) const {
  const std::vector<std::string> cols = column_labels();
  const auto it = std::find(cols.begin(), cols.end(), predicted);
  if (it == cols.end()) {
    throw Error(ErrorCode::InvalidArgument, "no confusion column for '" + std::string(predicted) + "'");
  }
  return static_cast<std::size_t>(it - cols.begin());
}

void ConfusionMatrix::add(std::size_t actual_row, std::size_t predicted_column) {
  ++counts.at(actual_row).at(predicted_column);
}

std::size_t ConfusionMatrix::total() const {
  std::size_t n = 0;
  for (std::size_t r = 0; r < counts.size(); ++r) n += row_sum(r);
  return n;
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t n = 0;
  for (std::size_t r = 0; r < counts.size(); ++r) n += counts[r][r];
  return n;
}

std::size_t ConfusionMatrix::row_sum(std::size_t row) const {
  std::size_t n = 0;
  for (std::size_t c : counts.at(row)) n += c;
  return n;
}

double ConfusionMatrix::accuracy() const {
  const std::size_t n = total();
  return n == 0 ? 0.0 : static_cast<double>(trace()) / static_cast<double>(n);
}

namespace {

std::vector<PreparedSequence> prepare_all(const LabeledCorpus& corpus, const FilterParams& filter) {
  std::vector<PreparedSequence> prepared(corpus.entries.size());
  parallel_for(corpus.entries.size(),
               [&](std::size_t i) { prepared[i] = prepare(corpus.entries[i].sequence, filter); });
  return prepared;
}

TemplateSet select_templates(const LabeledCorpus& corpus,
                             const std::vector<PreparedSequence>& prepared,
                             const std::string& subject, const PipelineParams& params) {
  std::vector<GestureTemplate> templates;
  for (const std::string& gesture : corpus.gesture_ids) {
    std::vector<PreparedSequence> candidates;
    for (std::size_t i = 0; i < corpus.entries.size(); ++i) {
      const CorpusEntry& e = corpus.entries[i];
      if (e.subject == subject && e.sequence.label == gesture) candidates.push_back(prepared[i]);
    }
    if (candidates.empty()) {
      throw Error(ErrorCode::MissingGesture,
                  "subject '" + subject + "' has no trial of gesture '" + gesture + "'");
    }
    templates.push_back(select_template(candidates, params));
  }
  return TemplateSet(params, std::move(templates));
}

}  // namespace

TemplateSet train_templates(const LabeledCorpus& corpus, const std::string& subject,
                            const PipelineParams& params) {
  params.validate();
  corpus.validate();
  // Only the subject's own sequences need preparing.
  LabeledCorpus own;
  own.gesture_ids = corpus.gesture_ids;
  for (const CorpusEntry& e : corpus.entries) {
    if (e.subject == subject) own.entries.push_back(e);
  }
  return select_templates(own, prepare_all(own, params.filter()), subject, params);
}

ProtocolResult run_protocol(const LabeledCorpus& corpus, const std::string& template_subject,
                            const PipelineParams& params) {
  params.validate();
  corpus.validate();
  if (corpus.entries.empty()) throw Error(ErrorCode::InvalidArgument, "corpus is empty");

  const std::vector<PreparedSequence> prepared = prepare_all(corpus, params.filter());
  const TemplateSet templates = select_templates(corpus, prepared, template_subject, params);

  std::vector<std::size_t> evaluated;
  for (std::size_t i = 0; i < corpus.entries.size(); ++i) {
    if (corpus.entries[i].subject != template_subject) evaluated.push_back(i);
  }

  // Predicted column per evaluated sequence; failures resolved after the loop.
  std::vector<std::string> predictions(evaluated.size());
  parallel_for(evaluated.size(), [&](std::size_t k) {
    try {
      predictions[k] = classify(prepared[evaluated[k]], templates).predicted;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ClassificationFailed) throw;
      predictions[k] = std::string(kFailed);
    }
  });

  const bool any_failed = std::count(predictions.begin(), predictions.end(), kFailed) > 0;
  ProtocolResult result;
  result.matrix = ConfusionMatrix(corpus.gesture_ids, params.reject_threshold.has_value(), any_failed);
  for (std::size_t k = 0; k < evaluated.size(); ++k) {
    const std::string& actual = *corpus.entries[evaluated[k]].sequence.label;
    const auto row = static_cast<std::size_t>(
        std::find(corpus.gesture_ids.begin(), corpus.gesture_ids.end(), actual) -
        corpus.gesture_ids.begin());
    result.matrix.add(row, result.matrix.column_of(predictions[k]));
    if (predictions[k] == kFailed) ++result.n_failed;
    if (predictions[k] == kRejected) ++result.n_rejected;
  }
  result.n_total = result.matrix.total();
  result.n_correct = result.matrix.trace();
  result.accuracy = result.matrix.accuracy();
  for (const auto& [id, t] : templates.templates()) result.chosen_templates[id] = t.prepared.source_id;
  return result;
}

SweepReport sweep_t_var(const LabeledCorpus& corpus, const std::string& template_subject,
                        const PipelineParams& params, const std::vector<double>& thresholds) {
  if (thresholds.empty()) throw Error(ErrorCode::InvalidArgument, "no thresholds to sweep");
  SweepReport report;
  for (double t_var : thresholds) {
    PipelineParams p = params;
    p.t_var = t_var;
    const ProtocolResult r = run_protocol(corpus, template_subject, p);
    report.rows.push_back(SweepRow{t_var, r.accuracy, r.n_correct, r.n_total, r.n_failed});
  }
  return report;
}

namespace {

// Quotes a CSV field when it holds a separator, quote or line break.
std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Shortest text that parses back to the same double.
std::string format_number(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

}  // namespace

std::string confusion_csv(const ConfusionMatrix& matrix) {
  std::ostringstream out;
  out << "actual\\predicted";
  for (const std::string& col : matrix.column_labels()) out << ',' << csv_field(col);
  out << '\n';
  for (std::size_t r = 0; r < matrix.labels.size(); ++r) {
    out << csv_field(matrix.labels[r]);
    for (std::size_t c : matrix.counts[r]) out << ',' << c;
    out << '\n';
  }
  return out.str();
}

void write_confusion_csv(const ConfusionMatrix& matrix, const std::filesystem::path& destination) {
  write_text_file(destination, confusion_csv(matrix));
}

std::string sweep_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "t_var,accuracy,n_correct,n_total,n_failed\n";
  for (const SweepRow& row : report.rows) {
    out << format_number(row.t_var) << ',' << format_number(row.accuracy) << ',' << row.n_correct
        << ',' << row.n_total << ',' << row.n_failed << '\n';
  }
  return out.str();
}

void write_sweep_csv(const SweepReport& report, const std::filesystem::path& destination) {
  write_text_file(destination, sweep_csv(report));
}

}  // namespace gesture
