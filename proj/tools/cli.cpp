#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "gesture/classify.hpp"
#include "gesture/dtw.hpp"
#include "gesture/error.hpp"
#include "gesture/eval.hpp"
#include "gesture/kernels.hpp"
#include "gesture/keypoints.hpp"
#include "gesture/normalize.hpp"
#include "gesture/parallel.hpp"
#include "gesture/sequence_io.hpp"
#include "gesture/synthetic.hpp"
#include "json.hpp"

namespace gesture::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pipeline flags shared by train, classify and evaluate. Only flags the user
// actually passed override lower-precedence sources.
struct ParamFlags {
  std::size_t median_radius = 3;
  double sigma = 1.0;
  double t_var = 0.10;
  std::size_t radius = 1;
  std::string dtw = "fast";
  double reject_threshold = 0.0;
  std::string reduction = "sum";

  CLI::Option* median_opt = nullptr;
  CLI::Option* sigma_opt = nullptr;
  CLI::Option* t_var_opt = nullptr;
  CLI::Option* radius_opt = nullptr;
  CLI::Option* dtw_opt = nullptr;
  CLI::Option* reject_opt = nullptr;
  CLI::Option* reduction_opt = nullptr;

  void add_to(CLI::App& app) {
    median_opt = app.add_option("--median-radius", median_radius, "Median filter radius (window 2r+1)")
                     ->check(CLI::PositiveNumber);
    sigma_opt = app.add_option("--sigma", sigma, "Gaussian smoothing sigma in frames")
                    ->check(CLI::PositiveNumber);
    t_var_opt = app.add_option("--t-var", t_var, "Variance threshold for dimension selection")
                    ->check(CLI::NonNegativeNumber);
    radius_opt = app.add_option("--radius", radius, "FastDTW radius");
    dtw_opt = app.add_option("--dtw", dtw, "Warping algorithm")->check(CLI::IsMember({"fast", "exact"}));
    reject_opt = app.add_option("--reject-threshold", reject_threshold,
                                "Reject when the nearest distance exceeds this value")
                     ->check(CLI::NonNegativeNumber);
    reduction_opt = app.add_option("--reduction", reduction, "Per-dimension distance reduction")
                        ->check(CLI::IsMember({"sum", "mean", "max"}));
  }

  PipelineParams apply(PipelineParams base) const {
    if (median_opt->count()) base.median_radius = median_radius;
    if (sigma_opt->count()) base.sigma = sigma;
    if (t_var_opt->count()) base.t_var = t_var;
    if (radius_opt->count()) base.dtw_radius = radius;
    if (dtw_opt->count()) base.dtw_method = parse_dtw_method(dtw);
    if (reject_opt->count()) base.reject_threshold = reject_threshold;
    if (reduction_opt->count()) base.reduction = parse_reduction(reduction);
    base.validate();
    return base;
  }
};

struct Globals {
  std::string config;
  std::size_t threads = 0;
  std::string kernels;
  std::uint64_t seed = 1;
  bool verbose = false;
};

json load_config(const Globals& globals) {
  std::string path = globals.config;
  if (path.empty()) {
    if (const char* env = std::getenv("CONFIG")) path = env;
  }
  if (path.empty()) return json::object();
  json doc = read_json_file(path);
  if (!doc.is_object()) throw Error(ErrorCode::SchemaViolation, path + ": config must be an object");
  return doc;
}

// defaults < config file < flags
PipelineParams resolve_params(const Globals& globals, const ParamFlags& flags,
                              PipelineParams base = {}) {
  return flags.apply(params_from_json(load_config(globals), base));
}

std::string format_distance(double value) {
  std::ostringstream out;
  out << std::setprecision(6) << value;
  return out.str();
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  std::string input;
  std::string output;
  std::string label;
  std::string subject;
  int trial = 0;
  double fps = 0.0;
  std::string manifest;
  CLI::Option* fps_opt = nullptr;
};

int cmd_ingest(const IngestArgs& args, std::ostream& out) {
  if (!fs::is_directory(args.input)) throw UsageError("input directory does not exist: " + args.input);

  NormalizedSequence seq = normalize_sequence(repair_missing(load_sequence(args.input)));
  if (!args.label.empty()) seq.label = args.label;
  if (args.fps_opt->count()) seq.fps = args.fps;
  write_sequence_file(seq, args.output);

  if (!args.manifest.empty()) {
    if (args.label.empty() || args.subject.empty()) {
      throw UsageError("--manifest needs --label and --subject");
    }
    const fs::path manifest_path = args.manifest;
    std::vector<ManifestEntry> entries;
    if (fs::exists(manifest_path)) entries = read_manifest(manifest_path);
    // read_manifest resolved existing paths; store everything relative again.
    const fs::path base = fs::absolute(manifest_path).parent_path();
    for (ManifestEntry& e : entries) e.path = fs::absolute(e.path).lexically_relative(base);
    entries.push_back(ManifestEntry{fs::absolute(args.output).lexically_relative(base), args.label,
                                    args.subject, args.trial});
    write_manifest(entries, manifest_path);
  }
  out << "wrote " << args.output << " (" << seq.length() << " frames, source_id " << seq.source_id
      << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------- train

struct CorpusArgs {
  std::string manifest;
  std::string subject = "1";
  std::string output;
  std::string csv;
  std::vector<double> sweep;
};

int cmd_train(const Globals& globals, const ParamFlags& flags, const CorpusArgs& args,
              std::ostream& out) {
  const PipelineParams params = resolve_params(globals, flags);
  const LabeledCorpus corpus = load_corpus(fs::path(args.manifest));
  const TemplateSet set = train_templates(corpus, args.subject, params);
  write_template_set(set, args.output);
  for (const auto& [id, t] : set.templates()) {
    out << id << '\t' << t.prepared.source_id << '\t' << format_distance(t.selection_total) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
  std::string sequence;
  std::string templates;
};

int cmd_classify(const Globals& globals, const ParamFlags& flags, const ClassifyArgs& args,
                 std::ostream& out, std::ostream& err) {
  const TemplateSet stored = read_template_set(args.templates);
  PipelineParams params = resolve_params(globals, flags, stored.params());
  if (params.filter() != stored.params().filter()) {
    err << "warning: median radius and sigma come from the template set\n";
    params.median_radius = stored.params().median_radius;
    params.sigma = stored.params().sigma;
  }
  const TemplateSet set = stored.with_params(params);
  const PreparedSequence query = prepare(read_sequence_file(args.sequence), params.filter());

  ClassificationOutcome outcome;
  try {
    outcome = classify(query, set);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ClassificationFailed) throw;
    err << "error: " << e.what() << '\n';
    return kExitClassificationFailed;
  }

  json ranking = json::array();
  for (const RankEntry& r : outcome.ranking) {
    ranking.push_back(
        json{{"gesture_id", r.gesture_id}, {"distance", r.distance}, {"dimensions_used", r.dimensions_used}});
  }
  const json doc{{"query_id", outcome.query_id},
                 {"predicted", outcome.predicted},
                 {"rejected", outcome.rejected()},
                 {"ranking", std::move(ranking)},
                 {"failed_templates", outcome.failed}};
  out << doc.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- evaluate

int cmd_evaluate(const Globals& globals, const ParamFlags& flags, const CorpusArgs& args,
                 std::ostream& out) {
  const PipelineParams params = resolve_params(globals, flags);
  const LabeledCorpus corpus = load_corpus(fs::path(args.manifest));
  if (corpus.entries.empty()) throw Error(ErrorCode::InvalidArgument, "manifest lists no sequences");

  if (!args.sweep.empty()) {
    const SweepReport report = sweep_t_var(corpus, args.subject, params, args.sweep);
    if (args.csv.empty()) {
      out << sweep_csv(report);
    } else {
      write_sweep_csv(report, args.csv);
      out << "wrote " << args.csv << '\n';
    }
    return kExitOk;
  }

  const ProtocolResult result = run_protocol(corpus, args.subject, params);
  if (args.csv.empty()) {
    out << confusion_csv(result.matrix);
  } else {
    write_confusion_csv(result.matrix, args.csv);
  }
  out << "accuracy " << std::fixed << std::setprecision(4) << result.accuracy << " ("
      << result.n_correct << '/' << result.n_total << "), failed " << result.n_failed
      << ", rejected " << result.n_rejected << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::vector<std::size_t> lengths{256, 1024};
  std::vector<std::size_t> radii{1};
  std::size_t repeats = 3;
  std::string csv;
};

std::vector<double> smooth_random_walk(std::size_t length, std::mt19937_64& rng) {
  std::normal_distribution<double> step(0.0, 1.0);
  std::vector<double> walk(length);
  double level = 0.0;
  for (double& v : walk) {
    level += step(rng);
    v = level;
  }
  return gaussian_filter(walk, 1.0);
}

int cmd_bench(const Globals& globals, const BenchArgs& args, std::ostream& out) {
  using clock = std::chrono::steady_clock;
  struct Row {
    std::size_t length;
    std::string method;
    std::string radius;
    double mean_ms;
    double mean_rel_error;
  };
  std::vector<Row> rows;
  std::mt19937_64 rng(globals.seed);

  for (std::size_t length : args.lengths) {
    if (length == 0) throw UsageError("lengths must be positive");
    std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
    for (std::size_t r = 0; r < args.repeats; ++r) {
      auto a = smooth_random_walk(length, rng);
      auto b = smooth_random_walk(length, rng);
      pairs.emplace_back(std::move(a), std::move(b));
    }

    std::vector<double> exact(pairs.size());
    auto start = clock::now();
    for (std::size_t p = 0; p < pairs.size(); ++p) exact[p] = dtw_exact(pairs[p].first, pairs[p].second).distance;
    const double exact_ms =
        std::chrono::duration<double, std::milli>(clock::now() - start).count() / pairs.size();
    rows.push_back({length, "exact", "-", exact_ms, 0.0});

    for (std::size_t radius : args.radii) {
      double error = 0.0;
      start = clock::now();
      std::vector<double> fast(pairs.size());
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        fast[p] = fast_dtw(pairs[p].first, pairs[p].second, radius).distance;
      }
      const double fast_ms =
          std::chrono::duration<double, std::milli>(clock::now() - start).count() / pairs.size();
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (exact[p] > 0.0) error += (fast[p] - exact[p]) / exact[p];
      }
      rows.push_back({length, "fast", std::to_string(radius), fast_ms, error / pairs.size()});
    }
  }

  out << std::left << std::setw(8) << "length" << std::setw(8) << "method" << std::setw(8)
      << "radius" << std::setw(14) << "mean_ms" << "mean_rel_error\n";
  for (const Row& r : rows) {
    out << std::left << std::setw(8) << r.length << std::setw(8) << r.method << std::setw(8)
        << r.radius << std::setw(14) << std::setprecision(4) << r.mean_ms << std::setprecision(6)
        << r.mean_rel_error << '\n';
  }
  out << "kernels: " << kernels::active().name << '\n';

  if (!args.csv.empty()) {
    std::ostringstream csv;
    csv << "length,method,radius,mean_ms,mean_rel_error\n";
    csv << std::setprecision(10);
    for (const Row& r : rows) {
      csv << r.length << ',' << r.method << ',' << r.radius << ',' << r.mean_ms << ','
          << r.mean_rel_error << '\n';
    }
    write_text_file(args.csv, csv.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  std::string out_dir;
  std::size_t classes = 6;
  bool confusable = false;
  std::size_t subjects = 8;
  std::size_t trials = 4;
  double noise = 1.5;
};

int cmd_synth(const Globals& globals, const SynthArgs& args, std::ostream& out) {
  SyntheticSpec spec = SyntheticSpec::separable();
  if (args.classes < 2 || args.classes > spec.motions.size()) {
    throw UsageError("--classes must be between 2 and " + std::to_string(spec.motions.size()));
  }
  spec.motions.resize(args.classes);
  if (args.confusable) spec.motions.push_back(Motion::RightArmSwipeLoop);
  spec.subjects = args.subjects;
  spec.trials = args.trials;
  spec.noise_px = args.noise;

  const LabeledCorpus corpus = generate_synthetic_corpus(spec, globals.seed);
  const fs::path dir = args.out_dir;
  fs::create_directories(dir / "sequences");
  std::vector<ManifestEntry> manifest;
  for (const CorpusEntry& e : corpus.entries) {
    const fs::path rel = fs::path("sequences") / (e.sequence.source_id + ".json");
    write_sequence_file(e.sequence, dir / rel);
    manifest.push_back(ManifestEntry{rel, *e.sequence.label, e.subject, e.trial});
  }
  write_manifest(manifest, dir / "manifest.json");
  out << "wrote " << corpus.entries.size() << " sequences, " << corpus.gesture_ids.size()
      << " gestures to " << (dir / "manifest.json").string() << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pose-keypoint gesture classification with per-dimension DTW and 1NN", "gesture"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--config", globals.config, "JSON config file (also via the CONFIG variable)");
  app.add_option("--threads", globals.threads, "Worker threads (0 = all cores)");
  app.add_option("--kernels", globals.kernels, "Force a SIMD kernel table (scalar, avx2, neon)");
  app.add_option("--seed", globals.seed, "Random seed for bench and synth");
  app.add_flag("-v,--verbose", globals.verbose, "Report chosen kernels and thread count");

  IngestArgs ingest;
  CLI::App* ingest_cmd = app.add_subcommand("ingest", "Convert an OpenPose JSON directory to a sequence file");
  ingest_cmd->add_option("openpose_dir", ingest.input, "Directory of per-frame OpenPose JSON files")->required();
  ingest_cmd->add_option("-o,--out", ingest.output, "Output sequence file")->required();
  ingest_cmd->add_option("--label", ingest.label, "Gesture label");
  ingest_cmd->add_option("--subject", ingest.subject, "Subject id (for --manifest)");
  ingest_cmd->add_option("--trial", ingest.trial, "Trial number (for --manifest)");
  ingest.fps_opt = ingest_cmd->add_option("--fps", ingest.fps, "Frame rate")->check(CLI::PositiveNumber);
  ingest_cmd->add_option("--manifest", ingest.manifest, "Append the sequence to this manifest");

  ParamFlags train_flags;
  CorpusArgs train;
  CLI::App* train_cmd = app.add_subcommand("train", "Select one template per gesture");
  train_cmd->add_option("--manifest", train.manifest, "Corpus manifest")->required();
  train_cmd->add_option("--subject", train.subject, "Subject whose trials provide templates");
  train_cmd->add_option("-o,--out", train.output, "Template set file")->required();
  train_flags.add_to(*train_cmd);

  ParamFlags classify_flags;
  ClassifyArgs classify_args;
  CLI::App* classify_cmd = app.add_subcommand("classify", "Classify one sequence against a template set");
  classify_cmd->add_option("sequence", classify_args.sequence, "Sequence file")->required();
  classify_cmd->add_option("--templates", classify_args.templates, "Template set file")->required();
  classify_flags.add_to(*classify_cmd);

  ParamFlags eval_flags;
  CorpusArgs evaluate;
  CLI::App* eval_cmd = app.add_subcommand("evaluate", "Run the template-subject evaluation protocol");
  eval_cmd->add_option("--manifest", evaluate.manifest, "Corpus manifest")->required();
  eval_cmd->add_option("--subject", evaluate.subject, "Template subject");
  eval_cmd->add_option("--sweep", evaluate.sweep, "Comma-separated t_var values")->delimiter(',');
  eval_cmd->add_option("--csv", evaluate.csv, "Write the CSV here instead of standard output");
  eval_flags.add_to(*eval_cmd);

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Time exact DTW against FastDTW");
  bench_cmd->add_option("--lengths", bench.lengths, "Comma-separated series lengths")->delimiter(',');
  bench_cmd->add_option("--radius", bench.radii, "Comma-separated FastDTW radii")->delimiter(',');
  bench_cmd->add_option("--repeats", bench.repeats, "Random pairs per length")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--csv", bench.csv, "Also write the table as CSV");

  SynthArgs synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Generate a synthetic labeled corpus");
  synth_cmd->add_option("-o,--out", synth.out_dir, "Output directory")->required();
  synth_cmd->add_option("--classes", synth.classes, "Disjoint-limb gesture classes (2-6)");
  synth_cmd->add_flag("--confusable", synth.confusable, "Add a class that mimics right_arm_swipe");
  synth_cmd->add_option("--subjects", synth.subjects, "Subjects")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--trials", synth.trials, "Trials per subject and gesture")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--noise", synth.noise, "Coordinate noise in pixels")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const json config = load_config(globals);
    if (config.contains("threads") && !app.get_option("--threads")->count()) {
      globals.threads = config["threads"].get<std::size_t>();
    }
    set_thread_count(globals.threads);
    if (!globals.kernels.empty() && !kernels::select(globals.kernels)) {
      throw UsageError("kernel table '" + globals.kernels + "' is not available on this machine");
    }
    if (globals.verbose) {
      err << "kernels: " << kernels::active().name << ", threads: " << thread_count() << '\n';
    }

    if (*ingest_cmd) return cmd_ingest(ingest, out);
    if (*train_cmd) return cmd_train(globals, train_flags, train, out);
    if (*classify_cmd) return cmd_classify(globals, classify_flags, classify_args, out, err);
    if (*eval_cmd) return cmd_evaluate(globals, eval_flags, evaluate, out);
    if (*bench_cmd) return cmd_bench(globals, bench, out);
    if (*synth_cmd) return cmd_synth(globals, synth, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::ClassificationFailed ? kExitClassificationFailed : kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace gesture::cli
