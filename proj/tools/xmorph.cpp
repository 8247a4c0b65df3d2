// Command-line driver. Exit codes: 0 success, 2 input/config error,
// 3 numeric failure during training.

#include <CLI11.hpp>

#include <xmorph/pipeline.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct cli_options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string outdir_override;
  std::string input_path;       // analyze
  std::string preset = "";      // train
  std::string cohorts_path;     // disambiguate / evaluate / ambiguity-stats
  std::string checkpoint_path;  // disambiguate
  std::string predictions_path; // evaluate
};

void add_common(CLI::App* cmd, cli_options& opt) {
  cmd->add_option("--config", opt.config_path, "pipeline config file")
      ->required();
  cmd->add_option("--seed", opt.seed,
                  "override the model and expansion seeds");
  cmd->add_option("--out", opt.outdir_override,
                  "override the output directory");
}

xmorph::pipeline_config load_config(const cli_options& opt) {
  xmorph::pipeline_config cfg = xmorph::load_pipeline_config(opt.config_path);
  if (opt.seed) {
    cfg.model.seed = *opt.seed;
    cfg.expansion.seed = *opt.seed;
  }
  if (!opt.outdir_override.empty()) cfg.paths.outdir = opt.outdir_override;
  return cfg;
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

/// The cohort stream to score or disambiguate: an explicit file if given,
/// otherwise the gold corpus analyzed with the evaluation-side analyzer.
xmorph::cohort_doc input_cohorts(const xmorph::pipeline_config& cfg,
                                 const std::string& explicit_path) {
  if (!explicit_path.empty()) return xmorph::load_cohorts(explicit_path);
  const xmorph::analyzer a = xmorph::detail::load_eval_analyzer(cfg);
  return xmorph::analyze_treebank_forms(a, xmorph::load_conllu(cfg.paths.gold));
}

int cmd_analyze(const cli_options& opt) {
  const xmorph::pipeline_config cfg = load_config(opt);
  // Input text is in the language being disambiguated, same as the cohort
  // stream disambiguate builds for itself.
  const xmorph::analyzer a = xmorph::detail::load_eval_analyzer(cfg);

  std::vector<std::string> lines;
  if (opt.input_path.empty()) {
    lines = read_lines(std::cin);
  } else {
    std::ifstream in(opt.input_path);
    if (!in) throw xmorph::io_error(opt.input_path);
    lines = read_lines(in);
  }
  const xmorph::cohort_doc doc = xmorph::analyze_lines(a, lines);

  xmorph::detail::ensure_outdir(cfg.paths.outdir);
  const std::string path =
      xmorph::detail::join_path(cfg.paths.outdir, "analyzed.cohorts");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw xmorph::io_error(path);
  xmorph::write_cohorts(doc, out);
  std::cout << "analyzed " << doc.sentences.size() << " sentences -> " << path
            << "\n";
  return 0;
}

int cmd_build_dataset(const cli_options& opt) {
  const auto res = xmorph::run_build_dataset(load_config(opt));
  std::cout << "pairs=" << res.pairs << "\n";
  std::cout << "wrote " << res.src_path << " and " << res.tgt_path << "\n";
  if (!res.uncovered_tags.empty()) {
    std::cout << "uncovered tags:";
    for (const auto& t : res.uncovered_tags) std::cout << ' ' << t;
    std::cout << "\n";
  }
  return 0;
}

int cmd_gen_templates(const cli_options& opt) {
  const auto res = xmorph::run_gen_templates(load_config(opt));
  std::cout << "pairs=" << res.pairs << " duplicates=" << res.duplicates
            << "\n";
  std::cout << "wrote " << res.src_path << ", " << res.tgt_path << ", "
            << res.manifest_path << "\n";
  return 0;
}

int cmd_train(const cli_options& opt) {
  const auto preset = xmorph::parse_preset(opt.preset);
  if (!preset)
    throw xmorph::error("unknown preset '" + opt.preset +
                        "' (expected baseline, augmented, or overfit)");
  const auto res = xmorph::run_train(load_config(opt), *preset);
  std::cout << "trained " << res.pairs << " pairs for " << res.steps
            << " steps\n";
  if (res.final_loss)
    std::cout << "final_loss=" << xmorph::detail::full(*res.final_loss) << "\n";
  if (res.token_accuracy)
    std::cout << "token_accuracy="
              << xmorph::detail::full(*res.token_accuracy) << "\n";
  std::cout << "wrote " << res.checkpoint_path << "\n";
  return 0;
}

int cmd_disambiguate(const cli_options& opt) {
  const xmorph::pipeline_config cfg = load_config(opt);
  std::string ckpt = opt.checkpoint_path.empty() ? cfg.paths.checkpoint
                                                 : opt.checkpoint_path;
  if (ckpt.empty())
    throw xmorph::error(
        "no checkpoint: set [paths] checkpoint or pass --checkpoint");
  const xmorph::seq2seq_model m = xmorph::load_checkpoint(ckpt);
  const xmorph::mapping_table table = xmorph::load_mapping(cfg.paths.mapping);
  const xmorph::cohort_doc cohorts = input_cohorts(cfg, opt.cohorts_path);

  const xmorph::disambiguate_result res =
      xmorph::run_disambiguate(m, cohorts, table);

  xmorph::detail::ensure_outdir(cfg.paths.outdir);
  const std::string seq_path =
      xmorph::detail::join_path(cfg.paths.outdir, "predictions.seq");
  const std::string conllu_path =
      xmorph::detail::join_path(cfg.paths.outdir, "predictions.conllu");
  const std::string sel_path =
      xmorph::detail::join_path(cfg.paths.outdir, "selected.cohorts");
  xmorph::write_sequence_lines(res.raw, seq_path);
  xmorph::detail::write_text_file(
      conllu_path, xmorph::detail::conllu_to_string(res.predicted));
  xmorph::detail::write_text_file(
      sel_path, xmorph::detail::cohorts_to_string(res.selected));

  std::cout << "sentences=" << res.raw.size()
            << " mismatched_sentences=" << res.mismatched_sentences
            << " surplus_groups=" << res.surplus_groups
            << " missing_groups=" << res.missing_groups
            << " truncated=" << res.truncated_sentences << "\n";
  std::cout << "wrote " << seq_path << ", " << conllu_path << ", " << sel_path
            << "\n";
  return 0;
}

int cmd_evaluate(const cli_options& opt) {
  const xmorph::pipeline_config cfg = load_config(opt);
  const xmorph::conllu_doc gold = xmorph::load_conllu(cfg.paths.gold);
  const std::string pred_path =
      opt.predictions_path.empty()
          ? xmorph::detail::join_path(cfg.paths.outdir, "predictions.seq")
          : opt.predictions_path;
  const auto predictions = xmorph::load_sequence_lines(pred_path);
  const xmorph::cohort_doc cohorts = input_cohorts(cfg, opt.cohorts_path);

  const xmorph::eval_report report =
      xmorph::run_evaluate(gold, predictions, cohorts);
  const std::string rendered = xmorph::render_report(report);

  xmorph::detail::ensure_outdir(cfg.paths.outdir);
  const std::string report_path =
      xmorph::detail::join_path(cfg.paths.outdir, "report.txt");
  xmorph::detail::write_text_file(report_path, rendered);
  std::cout << rendered;
  std::cout << "wrote " << report_path << "\n";
  return 0;
}

int cmd_ambiguity_stats(const cli_options& opt) {
  const xmorph::pipeline_config cfg = load_config(opt);
  const xmorph::ambiguity_stats st =
      xmorph::compute_ambiguity_stats(input_cohorts(cfg, opt.cohorts_path));
  std::cout << "words=" << st.words << "\n";
  std::cout << "avg_ambiguity=" << xmorph::detail::full(st.average) << "\n";
  for (const auto& [readings, count] : st.histogram)
    std::cout << "readings_" << readings << "=" << count << "\n";
  return 0;
}

int cmd_end_to_end(const cli_options& opt) {
  xmorph::run_end_to_end(load_config(opt), std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-lingual morphological disambiguation toolkit"};
  app.require_subcommand(1);
  cli_options opt;

  CLI::App* analyze =
      app.add_subcommand("analyze", "tokenize text and emit all readings");
  add_common(analyze, opt);
  analyze->add_option("input", opt.input_path,
                      "text file, one sentence per line (default stdin)");

  CLI::App* build = app.add_subcommand(
      "build-dataset", "treebank -> source/target training pairs");
  add_common(build, opt);

  CLI::App* gen = app.add_subcommand(
      "gen-templates", "expand sentence templates into synthetic pairs");
  add_common(gen, opt);

  CLI::App* train =
      app.add_subcommand("train", "train a model from generated pairs");
  add_common(train, opt);
  train->add_option("preset", opt.preset, "baseline | augmented | overfit")
      ->required();

  CLI::App* dis = app.add_subcommand(
      "disambiguate", "pick one reading per cohort with a trained model");
  add_common(dis, opt);
  dis->add_option("--cohorts", opt.cohorts_path,
                  "cohort stream to disambiguate (default: analyzed gold)");
  dis->add_option("--checkpoint", opt.checkpoint_path,
                  "model checkpoint (overrides [paths] checkpoint)");

  CLI::App* ev = app.add_subcommand(
      "evaluate", "score predictions against the gold corpus");
  add_common(ev, opt);
  ev->add_option("--predictions", opt.predictions_path,
                 "predicted sequence file (default: <outdir>/predictions.seq)");
  ev->add_option("--cohorts", opt.cohorts_path,
                 "cohort stream for ambiguity stats (default: analyzed gold)");

  CLI::App* amb = app.add_subcommand(
      "ambiguity-stats", "reading-count statistics of a cohort stream");
  add_common(amb, opt);
  amb->add_option("--cohorts", opt.cohorts_path,
                  "cohort stream (default: analyzed gold)");

  CLI::App* e2e = app.add_subcommand(
      "end-to-end", "dataset, templates, both models, and both reports");
  add_common(e2e, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*analyze) return cmd_analyze(opt);
    if (*build) return cmd_build_dataset(opt);
    if (*gen) return cmd_gen_templates(opt);
    if (*train) return cmd_train(opt);
    if (*dis) return cmd_disambiguate(opt);
    if (*ev) return cmd_evaluate(opt);
    if (*amb) return cmd_ambiguity_stats(opt);
    if (*e2e) return cmd_end_to_end(opt);
  } catch (const xmorph::non_finite_loss_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
