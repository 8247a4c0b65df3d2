#pragma once

// Evaluation: fully-correct sentence/word rates, POS accuracy, the
// erroneous-tag histogram, boundary-mismatch accounting, and the average
// morphological ambiguity of a corpus.

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "xmorph/errors.hpp"
#include "xmorph/seqcodec.hpp"

namespace xmorph {

struct eval_report {
  double fully_correct_sentences_pct = 0.0;
  double fully_correct_words_pct = 0.0;
  double pos_correct_pct = 0.0;
  // Bucket ("1", "2", "3", "more") -> percentage of wrong words. Empty when
  // every word is correct.
  std::map<std::string, double> error_histogram;
  std::size_t n_sentences = 0;
  std::size_t n_words = 0;
  std::size_t n_mismatched_sentences = 0;
  double avg_ambiguity = 0.0;
};

/// Score predicted token sequences against gold annotations. Sentences whose
/// predicted word-group count differs from gold are never fully correct;
/// surplus groups are dropped from word scoring, missing ones score as empty.
inline eval_report evaluate(const std::vector<std::vector<ud_annotation>>& gold,
                            const std::vector<token_sequence>& pred) {
  if (gold.size() != pred.size())
    throw length_mismatch_error(gold.size(), pred.size());

  eval_report report;
  report.n_sentences = gold.size();
  std::size_t correct_sentences = 0;
  std::size_t correct_words = 0;
  std::size_t correct_pos = 0;
  std::size_t wrong_words = 0;
  std::map<std::string, std::size_t> buckets;

  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto& sent_gold = gold[i];
    const decoded_target decoded = decode_target(pred[i], sent_gold.size());
    if (decoded.mismatch != 0) report.n_mismatched_sentences += 1;
    bool all_correct = true;
    for (std::size_t w = 0; w < sent_gold.size(); ++w) {
      report.n_words += 1;
      const word_prediction& p = decoded.words[w];
      const std::size_t d = slot_distance(sent_gold[w], p);
      if (d == 0) {
        correct_words += 1;
      } else {
        all_correct = false;
        wrong_words += 1;
        if (d == 1)
          buckets["1"] += 1;
        else if (d == 2)
          buckets["2"] += 1;
        else if (d == 3)
          buckets["3"] += 1;
        else
          buckets["more"] += 1;
      }
      if (p.upos.has_value() && *p.upos == sent_gold[w].upos) correct_pos += 1;
    }
    if (all_correct && decoded.mismatch == 0) correct_sentences += 1;
  }

  if (report.n_sentences > 0)
    report.fully_correct_sentences_pct =
        100.0 * static_cast<double>(correct_sentences) /
        static_cast<double>(report.n_sentences);
  if (report.n_words > 0) {
    report.fully_correct_words_pct = 100.0 * static_cast<double>(correct_words) /
                                     static_cast<double>(report.n_words);
    report.pos_correct_pct = 100.0 * static_cast<double>(correct_pos) /
                             static_cast<double>(report.n_words);
  }
  if (wrong_words > 0)
    for (const auto& [bucket, count] : buckets)
      report.error_histogram[bucket] =
          100.0 * static_cast<double>(count) / static_cast<double>(wrong_words);
  return report;
}

/// Mean over all cohorts of max(1, reading count).
inline double average_ambiguity(const std::vector<sentence>& sentences) {
  std::size_t words = 0;
  std::size_t readings = 0;
  for (const auto& s : sentences)
    for (const auto& c : s.cohorts) {
      words += 1;
      readings += std::max<std::size_t>(1, c.readings.size());
    }
  if (words == 0) throw empty_corpus_error();
  return static_cast<double>(readings) / static_cast<double>(words);
}

namespace detail {

inline std::string pct(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1) << v << "%";
  return out.str();
}

inline std::string full(double v) {
  std::ostringstream out;
  out << std::setprecision(12) << v;
  return out.str();
}

}  // namespace detail

/// Text rendering: accuracy table, error histogram, then a machine-readable
/// key=value block.
inline std::string render_report(const eval_report& r,
                                 const std::string& label = "model") {
  std::ostringstream out;
  out << std::left << std::setw(24) << "" << std::setw(26)
      << "Fully correct sentences" << std::setw(22) << "Fully correct words"
      << "POS correct\n";
  out << std::setw(24) << label << std::setw(26)
      << detail::pct(r.fully_correct_sentences_pct) << std::setw(22)
      << detail::pct(r.fully_correct_words_pct)
      << detail::pct(r.pos_correct_pct) << "\n\n";

  out << "Errors by erroneous tag count (share of wrong words)\n";
  out << std::setw(12) << "1 tag" << std::setw(12) << "2 tags" << std::setw(12)
      << "3 tags" << "more tags\n";
  auto bucket = [&](const char* key) {
    auto it = r.error_histogram.find(key);
    return it == r.error_histogram.end() ? std::string("-") : detail::pct(it->second);
  };
  out << std::setw(12) << bucket("1") << std::setw(12) << bucket("2")
      << std::setw(12) << bucket("3") << bucket("more") << "\n\n";

  out << "fully_correct_sentences_pct=" << detail::full(r.fully_correct_sentences_pct)
      << "\n";
  out << "fully_correct_words_pct=" << detail::full(r.fully_correct_words_pct) << "\n";
  out << "pos_correct_pct=" << detail::full(r.pos_correct_pct) << "\n";
  out << "hist_1_pct=" << detail::full(r.error_histogram.count("1")
                                           ? r.error_histogram.at("1")
                                           : 0.0)
      << "\n";
  out << "hist_2_pct=" << detail::full(r.error_histogram.count("2")
                                           ? r.error_histogram.at("2")
                                           : 0.0)
      << "\n";
  out << "hist_3_pct=" << detail::full(r.error_histogram.count("3")
                                           ? r.error_histogram.at("3")
                                           : 0.0)
      << "\n";
  out << "hist_more_pct=" << detail::full(r.error_histogram.count("more")
                                              ? r.error_histogram.at("more")
                                              : 0.0)
      << "\n";
  out << "n_sentences=" << r.n_sentences << "\n";
  out << "n_words=" << r.n_words << "\n";
  out << "n_mismatched_sentences=" << r.n_mismatched_sentences << "\n";
  out << "avg_ambiguity=" << detail::full(r.avg_ambiguity) << "\n";
  return out.str();
}

}  // namespace xmorph
