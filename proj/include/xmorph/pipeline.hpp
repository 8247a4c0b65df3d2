#pragma once

// Pipeline orchestration behind the CLI: config files, tokenization, and the
// command bodies. Every run_* function is deterministic given its config and
// seeds; artifact bytes depend only on them.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "xmorph/corpusio.hpp"
#include "xmorph/errors.hpp"
#include "xmorph/lexmorph.hpp"
#include "xmorph/metrics.hpp"
#include "xmorph/seq2seq.hpp"
#include "xmorph/seqcodec.hpp"
#include "xmorph/tagmap.hpp"
#include "xmorph/tplgen.hpp"
#include "xmorph/unicode.hpp"

namespace xmorph {

struct pipeline_paths {
  std::string lexicon;
  std::string paradigms;
  std::string eval_lexicon;    // falls back to lexicon when empty
  std::string eval_paradigms;  // falls back to paradigms when empty
  std::string mapping;
  std::string templates;
  std::string treebank;
  std::string gold;
  std::string checkpoint;
  std::string outdir = "out";

  const std::string& eval_lexicon_or_primary() const {
    return eval_lexicon.empty() ? lexicon : eval_lexicon;
  }
  const std::string& eval_paradigms_or_primary() const {
    return eval_paradigms.empty() ? paradigms : eval_paradigms;
  }
};

struct pipeline_config {
  pipeline_paths paths;
  model_config model;
  train_config train;
  expansion_config expansion;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

inline std::uint64_t parse_u64(const std::string& file, std::size_t line,
                               const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long n = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw parse_error(file, line, "key '" + key + "' needs an unsigned integer, got '" + v + "'");
  }
}

inline double parse_f64(const std::string& file, std::size_t line,
                        const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw parse_error(file, line, "key '" + key + "' needs a number, got '" + v + "'");
  }
}

inline std::string resolve_path(const std::filesystem::path& base,
                                const std::string& value) {
  if (value.empty() || base.empty()) return value;
  std::filesystem::path p(value);
  if (p.is_absolute()) return value;
  return (base / p).lexically_normal().string();
}

}  // namespace detail

/// Line-oriented config: bracketed section headers, `key = value` lines,
/// whole-line '#' comments. Unknown sections or keys are errors. Relative
/// paths in [paths] resolve against base_dir.
inline pipeline_config parse_pipeline_config(
    std::istream& in, const std::string& name = "<config>",
    const std::filesystem::path& base_dir = {}) {
  pipeline_config cfg;
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw parse_error(name, lineno, "unterminated section header");
      section = t.substr(1, t.size() - 2);
      if (section != "paths" && section != "model" && section != "train" &&
          section != "expansion")
        throw parse_error(name, lineno, "unknown section '" + section + "'");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw parse_error(name, lineno, "expected 'key = value'");
    const std::string key = detail::trim(t.substr(0, eq));
    const std::string value = detail::trim(t.substr(eq + 1));
    if (key.empty()) throw parse_error(name, lineno, "empty key");
    if (section.empty())
      throw parse_error(name, lineno, "key '" + key + "' outside any section");

    if (section == "paths") {
      const std::string resolved = detail::resolve_path(base_dir, value);
      if (key == "lexicon") cfg.paths.lexicon = resolved;
      else if (key == "paradigms") cfg.paths.paradigms = resolved;
      else if (key == "eval_lexicon") cfg.paths.eval_lexicon = resolved;
      else if (key == "eval_paradigms") cfg.paths.eval_paradigms = resolved;
      else if (key == "mapping") cfg.paths.mapping = resolved;
      else if (key == "templates") cfg.paths.templates = resolved;
      else if (key == "treebank") cfg.paths.treebank = resolved;
      else if (key == "gold") cfg.paths.gold = resolved;
      else if (key == "checkpoint") cfg.paths.checkpoint = resolved;
      else if (key == "outdir") cfg.paths.outdir = resolved;
      else throw parse_error(name, lineno, "unknown [paths] key '" + key + "'");
    } else if (section == "model") {
      if (key == "emb_dim") cfg.model.emb_dim = detail::parse_u64(name, lineno, key, value);
      else if (key == "hidden_dim") cfg.model.hidden_dim = detail::parse_u64(name, lineno, key, value);
      else if (key == "enc_layers") cfg.model.enc_layers = detail::parse_u64(name, lineno, key, value);
      else if (key == "dec_layers") cfg.model.dec_layers = detail::parse_u64(name, lineno, key, value);
      else if (key == "max_src_len") cfg.model.max_src_len = detail::parse_u64(name, lineno, key, value);
      else if (key == "max_tgt_len") cfg.model.max_tgt_len = detail::parse_u64(name, lineno, key, value);
      else if (key == "seed") cfg.model.seed = detail::parse_u64(name, lineno, key, value);
      else if (key == "cell") {
        if (value == "lstm") cfg.model.cell = model_config::cell_t::lstm;
        else if (value == "gru") cfg.model.cell = model_config::cell_t::gru;
        else throw parse_error(name, lineno, "cell must be 'lstm' or 'gru', got '" + value + "'");
      } else {
        throw parse_error(name, lineno, "unknown [model] key '" + key + "'");
      }
    } else if (section == "train") {
      if (key == "steps") cfg.train.steps = detail::parse_u64(name, lineno, key, value);
      else if (key == "batch_size") cfg.train.batch_size = detail::parse_u64(name, lineno, key, value);
      else if (key == "lr") cfg.train.lr = detail::parse_f64(name, lineno, key, value);
      else if (key == "grad_clip") cfg.train.grad_clip = detail::parse_f64(name, lineno, key, value);
      else if (key == "optimizer") {
        if (value == "sgd") cfg.train.optimizer = train_config::optimizer_t::sgd;
        else if (value == "adam") cfg.train.optimizer = train_config::optimizer_t::adam;
        else throw parse_error(name, lineno, "optimizer must be 'sgd' or 'adam', got '" + value + "'");
      } else {
        throw parse_error(name, lineno, "unknown [train] key '" + key + "'");
      }
    } else {  // expansion
      if (key == "per_template") cfg.expansion.per_template = detail::parse_u64(name, lineno, key, value);
      else if (key == "seed") cfg.expansion.seed = detail::parse_u64(name, lineno, key, value);
      else if (key == "max_attempts") cfg.expansion.max_attempts = detail::parse_u64(name, lineno, key, value);
      else throw parse_error(name, lineno, "unknown [expansion] key '" + key + "'");
    }
  }
  return cfg;
}

inline pipeline_config load_pipeline_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path);
  return parse_pipeline_config(in, path,
                               std::filesystem::path(path).parent_path());
}

/// Whitespace tokenizer that peels leading/trailing punctuation code points
/// into their own tokens ("máddi?" -> "máddi", "?").
inline std::vector<std::string> tokenize(std::string_view text) {
  const std::set<std::string>& punct = default_punctuation();
  auto is_punct = [&](char32_t cp) {
    std::string s;
    append_utf8(s, cp);
    return punct.count(s) != 0;
  };
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])))
      ++j;
    if (j == i) break;
    const std::vector<char32_t> cps = decode_utf8(text.substr(i, j - i));
    std::size_t b = 0, e = cps.size();
    while (b < e && is_punct(cps[b])) ++b;
    while (e > b && is_punct(cps[e - 1])) --e;
    for (std::size_t k = 0; k < b; ++k)
      out.push_back(encode_utf8({cps[k]}));
    if (b < e)
      out.push_back(encode_utf8({cps.begin() + b, cps.begin() + e}));
    for (std::size_t k = e; k < cps.size(); ++k)
      out.push_back(encode_utf8({cps[k]}));
    i = j;
  }
  return out;
}

namespace detail {

inline void ensure_outdir(const std::string& dir) {
  if (!dir.empty()) std::filesystem::create_directories(dir);
}

inline std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty()) return name;
  return (std::filesystem::path(dir) / name).string();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error(path);
  out << text;
}

inline analyzer load_primary_analyzer(const pipeline_config& cfg) {
  return load_analyzer(cfg.paths.lexicon, cfg.paths.paradigms);
}

inline analyzer load_eval_analyzer(const pipeline_config& cfg) {
  return load_analyzer(cfg.paths.eval_lexicon_or_primary(),
                       cfg.paths.eval_paradigms_or_primary());
}

}  // namespace detail

/// One non-empty input line = one sentence.
inline cohort_doc analyze_lines(const analyzer& a,
                                const std::vector<std::string>& lines) {
  cohort_doc doc;
  for (const auto& line : lines) {
    sentence s;
    for (auto& tok : tokenize(line))
      s.cohorts.push_back({tok, a.analyze(tok)});
    if (!s.cohorts.empty()) doc.sentences.push_back(std::move(s));
  }
  return doc;
}

/// Every form of a treebank, one sentence per sentence. Forms are already
/// tokens, so no tokenization is applied.
inline cohort_doc analyze_treebank_forms(const analyzer& a,
                                         const conllu_doc& doc) {
  cohort_doc out;
  for (const auto& sent : doc.sentences) {
    sentence s;
    for (const auto& tok : sent.tokens)
      s.cohorts.push_back({tok.form, a.analyze(tok.form)});
    if (!s.cohorts.empty()) out.sentences.push_back(std::move(s));
  }
  return out;
}

struct build_dataset_result {
  std::size_t pairs = 0;
  std::vector<std::string> uncovered_tags;
  std::string src_path;
  std::string tgt_path;
};

/// Treebank -> <outdir>/treebank.{src,tgt}.
inline build_dataset_result run_build_dataset(const pipeline_config& cfg) {
  const analyzer a = detail::load_primary_analyzer(cfg);
  const mapping_table table = load_mapping(cfg.paths.mapping);
  const conllu_doc treebank = load_conllu(cfg.paths.treebank);
  dataset ds = build_dataset(treebank.sentences, a, table);

  detail::ensure_outdir(cfg.paths.outdir);
  build_dataset_result res;
  res.pairs = ds.pairs.size();
  res.uncovered_tags = std::move(ds.uncovered_tags);
  res.src_path = detail::join_path(cfg.paths.outdir, "treebank.src");
  res.tgt_path = detail::join_path(cfg.paths.outdir, "treebank.tgt");
  std::vector<token_sequence> srcs, tgts;
  srcs.reserve(ds.pairs.size());
  tgts.reserve(ds.pairs.size());
  for (auto& [s, t] : ds.pairs) {
    srcs.push_back(std::move(s));
    tgts.push_back(std::move(t));
  }
  write_sequence_lines(srcs, res.src_path);
  write_sequence_lines(tgts, res.tgt_path);
  return res;
}

struct gen_templates_result {
  std::size_t pairs = 0;
  std::size_t duplicates = 0;  // pairs minus distinct (src, tgt) rows
  std::string src_path;
  std::string tgt_path;
  std::string manifest_path;
};

/// Templates -> <outdir>/templates.{src,tgt} + manifest. Template i expands
/// with seed cfg.expansion.seed + i so adding a template never reshuffles the
/// preceding ones.
inline gen_templates_result run_gen_templates(const pipeline_config& cfg) {
  const analyzer a = detail::load_eval_analyzer(cfg);
  const auto lexicon = load_lexicon(cfg.paths.eval_lexicon_or_primary());
  const auto templates = load_templates(cfg.paths.templates);

  std::vector<token_sequence> srcs, tgts;
  std::set<std::pair<std::string, std::string>> distinct;
  for (std::size_t i = 0; i < templates.size(); ++i) {
    expansion_config ec = cfg.expansion;
    ec.seed = cfg.expansion.seed + i;
    std::vector<expansion> exps;
    try {
      exps = expand(templates[i], lexicon, a, ec);
    } catch (const error& e) {
      throw error("template " + std::to_string(i + 1) + ": " + e.what());
    }
    for (auto& ex : exps) {
      distinct.emplace(ex.source.to_line(), ex.target.to_line());
      srcs.push_back(std::move(ex.source));
      tgts.push_back(std::move(ex.target));
    }
  }

  detail::ensure_outdir(cfg.paths.outdir);
  gen_templates_result res;
  res.pairs = srcs.size();
  res.duplicates = srcs.size() - distinct.size();
  res.src_path = detail::join_path(cfg.paths.outdir, "templates.src");
  res.tgt_path = detail::join_path(cfg.paths.outdir, "templates.tgt");
  res.manifest_path =
      detail::join_path(cfg.paths.outdir, "templates.manifest.json");
  write_sequence_lines(srcs, res.src_path);
  write_sequence_lines(tgts, res.tgt_path);

  nlohmann::json manifest;
  manifest["seed"] = cfg.expansion.seed;
  manifest["per_template"] = cfg.expansion.per_template;
  manifest["templates"] = templates.size();
  manifest["pairs"] = res.pairs;
  manifest["duplicates"] = res.duplicates;
  detail::write_text_file(res.manifest_path, manifest.dump(2) + "\n");
  return res;
}

enum class train_preset { baseline, augmented, overfit };

inline const char* preset_name(train_preset p) {
  switch (p) {
    case train_preset::baseline: return "baseline";
    case train_preset::augmented: return "augmented";
    default: return "overfit";
  }
}

inline std::optional<train_preset> parse_preset(std::string_view s) {
  if (s == "baseline") return train_preset::baseline;
  if (s == "augmented") return train_preset::augmented;
  if (s == "overfit") return train_preset::overfit;
  return std::nullopt;
}

struct train_command_result {
  std::size_t pairs = 0;
  std::size_t steps = 0;
  std::optional<double> final_loss;     // absent when steps = 0
  std::optional<double> token_accuracy; // overfit preset only
  std::string checkpoint_path;
  std::string loss_csv_path;
  std::string manifest_path;
};

namespace detail {

inline std::vector<std::pair<token_sequence, token_sequence>> load_pairs(
    const std::string& src_path, const std::string& tgt_path) {
  auto srcs = load_sequence_lines(src_path);
  auto tgts = load_sequence_lines(tgt_path);
  if (srcs.size() != tgts.size())
    throw length_mismatch_error(srcs.size(), tgts.size());
  std::vector<std::pair<token_sequence, token_sequence>> pairs;
  pairs.reserve(srcs.size());
  for (std::size_t i = 0; i < srcs.size(); ++i)
    pairs.emplace_back(std::move(srcs[i]), std::move(tgts[i]));
  return pairs;
}

}  // namespace detail

/// Presets: baseline trains on <outdir>/treebank, augmented adds
/// <outdir>/templates, overfit takes the first 50 treebank pairs with fixed
/// fast-memorization settings (2000 steps, batch 8, adam lr 0.005, 16/48
/// dims) and reports training token accuracy.
inline train_command_result run_train(const pipeline_config& cfg,
                                      train_preset preset) {
  std::vector<std::string> stems = {"treebank"};
  if (preset == train_preset::augmented) stems.push_back("templates");

  std::vector<std::pair<token_sequence, token_sequence>> pairs;
  std::vector<std::string> sources;  // outdir-relative, so runs compare equal
  for (const auto& stem : stems) {
    auto part = detail::load_pairs(
        detail::join_path(cfg.paths.outdir, stem + ".src"),
        detail::join_path(cfg.paths.outdir, stem + ".tgt"));
    pairs.insert(pairs.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
    sources.push_back(stem + ".src");
    sources.push_back(stem + ".tgt");
  }

  model_config mc = cfg.model;
  train_config tc = cfg.train;
  if (preset == train_preset::overfit) {
    if (pairs.size() > 50) pairs.resize(50);
    mc.emb_dim = 16;
    mc.hidden_dim = 48;
    tc.steps = 2000;
    tc.batch_size = 8;
    tc.optimizer = train_config::optimizer_t::adam;
    tc.lr = 0.005;
  }

  train_result tr = train(pairs, mc, tc);

  detail::ensure_outdir(cfg.paths.outdir);
  train_command_result res;
  res.pairs = pairs.size();
  res.steps = tc.steps;
  const std::string stem = preset_name(preset);
  res.checkpoint_path = detail::join_path(cfg.paths.outdir, stem + ".ckpt");
  res.loss_csv_path = detail::join_path(cfg.paths.outdir, stem + ".loss.csv");
  res.manifest_path =
      detail::join_path(cfg.paths.outdir, stem + ".manifest.json");
  save_checkpoint(tr.model, res.checkpoint_path);
  write_loss_trace(tr.losses, res.loss_csv_path);
  if (!tr.losses.empty()) res.final_loss = tr.losses.back();
  if (preset == train_preset::overfit)
    res.token_accuracy = token_accuracy(tr.model, pairs);

  nlohmann::json manifest;
  manifest["preset"] = stem;
  manifest["sources"] = sources;
  manifest["pairs"] = res.pairs;
  manifest["steps"] = res.steps;
  manifest["checkpoint"] = stem + ".ckpt";
  detail::write_text_file(res.manifest_path, manifest.dump(2) + "\n");
  return res;
}

struct disambiguate_result {
  cohort_doc selected;                // exactly one reading per cohort
  conllu_doc predicted;               // converted annotation per word
  std::vector<token_sequence> raw;    // decoded model output per sentence
  std::size_t mismatched_sentences = 0;
  long long surplus_groups = 0;       // sum of positive mismatches
  long long missing_groups = 0;       // sum of negative mismatches, as a positive count
  std::size_t truncated_sentences = 0;
};

/// Decode each sentence and snap every word prediction to the closest cohort
/// reading. Unknown words (no readings) keep the model's own annotation with
/// the surface as lemma.
inline disambiguate_result run_disambiguate(const seq2seq_model& m,
                                            const cohort_doc& input,
                                            const mapping_table& table) {
  disambiguate_result res;
  for (const auto& sent : input.sentences) {
    const token_sequence src = encode_source(sent);
    const decode_result dec = decode(m, m.src_vocab.encode(src));
    if (dec.truncated) ++res.truncated_sentences;
    const token_sequence out = m.tgt_vocab.decode(dec.ids);
    res.raw.push_back(out);
    const decoded_target dt = decode_target(out, sent.cohorts.size());
    if (dt.mismatch != 0) ++res.mismatched_sentences;
    if (dt.mismatch > 0) res.surplus_groups += dt.mismatch;
    if (dt.mismatch < 0) res.missing_groups += -dt.mismatch;

    sentence sel;
    conllu_sentence pred;
    for (std::size_t i = 0; i < sent.cohorts.size(); ++i) {
      const cohort& c = sent.cohorts[i];
      const word_prediction& wp = dt.words[i];
      conllu_token tok;
      tok.id = static_cast<int>(i + 1);
      tok.form = c.surface;
      if (c.readings.empty()) {
        sel.cohorts.push_back(c);
        tok.lemma = c.surface;
        tok.upos = wp.upos.value_or(unknown_tag);
        tok.feats = wp.feats;
      } else {
        const reading r = select_reading(c, wp, table);
        sel.cohorts.push_back({c.surface, {r}});
        const ud_annotation ann = convert(table, r);
        tok.lemma = r.lemma;
        tok.upos = ann.upos;
        tok.feats = ann.feats;
      }
      pred.tokens.push_back(std::move(tok));
    }
    res.selected.sentences.push_back(std::move(sel));
    res.predicted.sentences.push_back(std::move(pred));
  }
  return res;
}

struct ambiguity_stats {
  double average = 0.0;
  std::size_t words = 0;
  // Reading count -> cohorts with that count; unknown words land under 0.
  std::map<std::size_t, std::size_t> histogram;
};

inline ambiguity_stats compute_ambiguity_stats(const cohort_doc& doc) {
  ambiguity_stats st;
  st.average = average_ambiguity(doc.sentences);
  for (const auto& s : doc.sentences)
    for (const auto& c : s.cohorts) {
      ++st.words;
      ++st.histogram[c.readings.size()];
    }
  return st;
}

/// Score raw predictions against the gold treebank. Ambiguity comes from the
/// cohorts the model actually read.
inline eval_report run_evaluate(const conllu_doc& gold,
                                const std::vector<token_sequence>& predictions,
                                const cohort_doc& cohorts) {
  std::vector<std::vector<ud_annotation>> gold_anns;
  gold_anns.reserve(gold.sentences.size());
  for (const auto& s : gold.sentences) gold_anns.push_back(s.annotations());
  eval_report report = evaluate(gold_anns, predictions);
  report.avg_ambiguity = average_ambiguity(cohorts.sentences);
  return report;
}

struct end_to_end_result {
  build_dataset_result dataset;
  gen_templates_result templates;
  train_command_result baseline_train;
  train_command_result augmented_train;
  eval_report baseline_report;
  eval_report augmented_report;
  std::string cohorts_path;
  std::string baseline_report_path;
  std::string augmented_report_path;
};

namespace detail {

inline std::string cohorts_to_string(const cohort_doc& doc) {
  std::ostringstream out;
  write_cohorts(doc, out);
  return out.str();
}

inline std::string conllu_to_string(const conllu_doc& doc) {
  std::ostringstream out;
  write_conllu(doc, out);
  return out.str();
}

}  // namespace detail

/// The whole experiment: treebank pairs, template pairs, a model without and
/// a model with the templates, then disambiguation + scoring of both on the
/// gold corpus. Writes every artifact under outdir; returns the reports.
inline end_to_end_result run_end_to_end(const pipeline_config& cfg,
                                        std::ostream& log) {
  end_to_end_result res;

  res.dataset = run_build_dataset(cfg);
  log << "dataset: " << res.dataset.pairs << " pairs\n";
  if (!res.dataset.uncovered_tags.empty()) {
    log << "uncovered tags:";
    for (const auto& t : res.dataset.uncovered_tags) log << ' ' << t;
    log << '\n';
  }

  res.templates = run_gen_templates(cfg);
  log << "templates: " << res.templates.pairs << " pairs, "
      << res.templates.duplicates << " duplicates\n";

  res.baseline_train = run_train(cfg, train_preset::baseline);
  log << "baseline: trained " << res.baseline_train.pairs << " pairs, "
      << res.baseline_train.steps << " steps\n";
  res.augmented_train = run_train(cfg, train_preset::augmented);
  log << "augmented: trained " << res.augmented_train.pairs << " pairs, "
      << res.augmented_train.steps << " steps\n";

  const analyzer eval_an = detail::load_eval_analyzer(cfg);
  const mapping_table table = load_mapping(cfg.paths.mapping);
  const conllu_doc gold = load_conllu(cfg.paths.gold);
  const cohort_doc cohorts = analyze_treebank_forms(eval_an, gold);
  res.cohorts_path = detail::join_path(cfg.paths.outdir, "eval.cohorts");
  detail::write_text_file(res.cohorts_path,
                          detail::cohorts_to_string(cohorts));

  for (const train_preset preset :
       {train_preset::baseline, train_preset::augmented}) {
    const std::string stem = preset_name(preset);
    const seq2seq_model m = load_checkpoint(
        detail::join_path(cfg.paths.outdir, stem + ".ckpt"));
    const disambiguate_result dis = run_disambiguate(m, cohorts, table);
    write_sequence_lines(
        dis.raw, detail::join_path(cfg.paths.outdir, stem + ".predictions.seq"));
    detail::write_text_file(
        detail::join_path(cfg.paths.outdir, stem + ".predictions.conllu"),
        detail::conllu_to_string(dis.predicted));
    detail::write_text_file(
        detail::join_path(cfg.paths.outdir, stem + ".selected.cohorts"),
        detail::cohorts_to_string(dis.selected));

    const eval_report report = run_evaluate(gold, dis.raw, cohorts);
    const std::string report_path =
        detail::join_path(cfg.paths.outdir, stem + ".report.txt");
    detail::write_text_file(report_path, render_report(report, stem));
    log << stem << ": fully_correct_words_pct=" << detail::full(report.fully_correct_words_pct)
        << " pos_correct_pct=" << detail::full(report.pos_correct_pct)
        << " mismatched_sentences=" << report.n_mismatched_sentences << '\n';

    if (preset == train_preset::baseline) {
      res.baseline_report = report;
      res.baseline_report_path = report_path;
    } else {
      res.augmented_report = report;
      res.augmented_report_path = report_path;
    }
  }
  return res;
}

}  // namespace xmorph
