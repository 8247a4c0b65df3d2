#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xmorph {

/// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input file; carries a 1-based line number.
struct parse_error : error {
  parse_error(std::string file, std::size_t line, const std::string& reason)
      : error(file + ":" + std::to_string(line) + ": " + reason),
        file(std::move(file)),
        line(line) {}
  std::string file;
  std::size_t line;
};

struct unresolved_paradigm_error : error {
  unresolved_paradigm_error(std::string lemma, std::string paradigm_id)
      : error("lexicon entry '" + lemma + "' references unknown paradigm '" +
              paradigm_id + "'"),
        lemma(std::move(lemma)),
        paradigm_id(std::move(paradigm_id)) {}
  std::string lemma;
  std::string paradigm_id;
};

struct inapplicable_rule_error : error {
  inapplicable_rule_error(std::string lemma, std::string strip)
      : error("suffix rule '-" + strip + "' does not apply to lemma '" + lemma + "'"),
        lemma(std::move(lemma)),
        strip(std::move(strip)) {}
  std::string lemma;
  std::string strip;
};

struct ambiguous_generation_error : error {
  ambiguous_generation_error(const std::string& lemma, const std::string& tags,
                             const std::string& a, const std::string& b)
      : error("generation key (" + lemma + ", " + tags + ") maps to both '" + a +
              "' and '" + b + "'") {}
};

struct unmapped_tag_error : error {
  explicit unmapped_tag_error(std::string tag)
      : error("no mapping rule covers tag '" + tag + "'"), tag(std::move(tag)) {}
  std::string tag;
};

struct conflicting_feature_error : error {
  conflicting_feature_error(const std::string& key, const std::string& a,
                            const std::string& b)
      : error("mapping rules emit conflicting values for feature key '" + key +
              "': " + a + " vs " + b) {}
};

struct duplicate_pattern_error : error {
  duplicate_pattern_error(const std::string& file, std::size_t line)
      : error(file + ":" + std::to_string(line) + ": duplicate rule pattern") {}
};

struct no_readings_error : error {
  no_readings_error() : error("cohort has no readings to select from") {}
};

struct arity_mismatch_error : error {
  arity_mismatch_error(const std::string& file, std::size_t line, std::size_t slots,
                       std::size_t targets)
      : error(file + ":" + std::to_string(line) + ": template has " +
              std::to_string(slots) + " slots but " + std::to_string(targets) +
              " target annotations") {}
};

struct slot_unfillable_error : error {
  explicit slot_unfillable_error(std::string pos)
      : error("no lexicon entry has POS '" + pos + "'"), pos(std::move(pos)) {}
  std::string pos;
};

struct exhausted_attempts_error : error {
  explicit exhausted_attempts_error(const std::string& slot_key)
      : error("could not realize slot (" + slot_key + ") from the lexicon") {}
};

struct non_finite_loss_error : error {
  explicit non_finite_loss_error(std::size_t step)
      : error("non-finite training loss at step " + std::to_string(step)),
        step(step) {}
  std::size_t step;
};

struct dimension_mismatch_error : error {
  using error::error;
};

struct out_of_vocab_error : error {
  explicit out_of_vocab_error(int id)
      : error("token id " + std::to_string(id) + " is outside the vocabulary"),
        id(id) {}
  int id;
};

struct length_mismatch_error : error {
  length_mismatch_error(std::size_t gold, std::size_t pred)
      : error("gold has " + std::to_string(gold) + " sentences but predictions have " +
              std::to_string(pred)) {}
};

struct empty_corpus_error : error {
  empty_corpus_error() : error("corpus contains no words") {}
};

struct malformed_cohort_error : error {
  malformed_cohort_error(std::size_t line, const std::string& reason)
      : error("cohort stream line " + std::to_string(line) + ": " + reason) {}
};

struct io_error : error {
  explicit io_error(const std::string& path) : error("cannot open file: " + path) {}
};

}  // namespace xmorph
