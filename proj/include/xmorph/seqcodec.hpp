#pragma once

// Lemma-free sequence encoding. A sentence of ambiguous cohorts becomes a
// flat source tag sequence (per-word tag unions, byte-order sorted);
// disambiguated annotations become a flat target sequence (sorted features,
// POS last). Words are separated by the boundary token "_".

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "xmorph/errors.hpp"
#include "xmorph/lexmorph.hpp"
#include "xmorph/tagmap.hpp"

namespace xmorph {

inline constexpr const char* boundary_token = "_";

/// Tag emitted for words the analyzer does not know.
inline constexpr const char* unknown_tag = "X";

struct cohort {
  std::string surface;
  std::vector<reading> readings;  // empty only for unknown words
};

struct sentence {
  std::vector<cohort> cohorts;
};

struct token_sequence {
  std::vector<std::string> tokens;

  std::string to_line() const {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i) out += ' ';
      out += tokens[i];
    }
    return out;
  }

  static token_sequence from_line(const std::string& line) {
    token_sequence seq;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) seq.tokens.push_back(tok);
    return seq;
  }

  friend bool operator==(const token_sequence& a, const token_sequence& b) {
    return a.tokens == b.tokens;
  }
};

struct word_prediction {
  std::optional<std::string> upos;
  std::set<std::string> feats;           // "Key=Value" tokens
  std::vector<std::string> raw_tokens;   // the word group as decoded

  bool empty() const { return raw_tokens.empty(); }
};

/// Per cohort: deduplicated union of all reading tags, byte-order sorted;
/// lemmas are discarded. Unknown words contribute the single token "X".
inline token_sequence encode_source(const sentence& s) {
  token_sequence out;
  for (std::size_t i = 0; i < s.cohorts.size(); ++i) {
    if (i) out.tokens.push_back(boundary_token);
    const cohort& c = s.cohorts[i];
    if (c.readings.empty()) {
      out.tokens.push_back(unknown_tag);
      continue;
    }
    std::set<std::string> tags;
    for (const auto& r : c.readings) tags.insert(r.tags.begin(), r.tags.end());
    out.tokens.insert(out.tokens.end(), tags.begin(), tags.end());
  }
  return out;
}

/// Per word: features in byte order, then the POS token last.
inline token_sequence encode_target(const std::vector<ud_annotation>& annotations) {
  token_sequence out;
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    if (i) out.tokens.push_back(boundary_token);
    const auto& ann = annotations[i];
    out.tokens.insert(out.tokens.end(), ann.feats.begin(), ann.feats.end());
    out.tokens.push_back(ann.upos);
  }
  return out;
}

struct decoded_target {
  std::vector<word_prediction> words;  // exactly expected_words entries
  long long mismatch = 0;              // produced minus expected word groups
};

namespace detail {

inline word_prediction make_prediction(std::vector<std::string> group) {
  word_prediction p;
  p.raw_tokens = std::move(group);
  std::vector<const std::string*> non_feats;
  for (const auto& tok : p.raw_tokens) {
    const auto eq = tok.find('=');
    if (eq != std::string::npos && eq > 0 && eq + 1 < tok.size())
      p.feats.insert(tok);
    else
      non_feats.push_back(&tok);
  }
  if (non_feats.size() == 1) p.upos = *non_feats[0];
  return p;
}

}  // namespace detail

/// Split model output on the boundary token and align it to the expected
/// word count. Surplus groups are discarded but counted; missing trailing
/// words become empty predictions. Mismatch is data, not failure.
inline decoded_target decode_target(const token_sequence& t,
                                    std::size_t expected_words) {
  std::vector<std::vector<std::string>> groups;
  if (!t.tokens.empty()) {
    groups.emplace_back();
    for (const auto& tok : t.tokens) {
      if (tok == boundary_token)
        groups.emplace_back();
      else
        groups.back().push_back(tok);
    }
  }
  decoded_target out;
  out.mismatch = static_cast<long long>(groups.size()) -
                 static_cast<long long>(expected_words);
  for (std::size_t i = 0; i < expected_words; ++i) {
    if (i < groups.size())
      out.words.push_back(detail::make_prediction(std::move(groups[i])));
    else
      out.words.push_back(word_prediction{});
  }
  return out;
}

/// Per-word error magnitude: one for a wrong or missing POS, plus one per
/// feature key whose value differs or that only one side carries.
inline std::size_t slot_distance(const ud_annotation& gold,
                                 const word_prediction& pred) {
  std::size_t d = 0;
  if (!pred.upos.has_value() || *pred.upos != gold.upos) d += 1;
  std::map<std::string, std::string> gold_by_key, pred_by_key;
  for (const auto& f : gold.feats) gold_by_key[detail::feat_key(f)] = f;
  for (const auto& f : pred.feats) pred_by_key[detail::feat_key(f)] = f;
  for (const auto& [key, feat] : gold_by_key) {
    auto it = pred_by_key.find(key);
    if (it == pred_by_key.end() || it->second != feat) d += 1;
  }
  for (const auto& [key, feat] : pred_by_key)
    if (!gold_by_key.count(key)) d += 1;
  return d;
}

/// The reading whose conversion is closest to the prediction; ties go to the
/// lexicographically smallest canonical rendering.
inline reading select_reading(const cohort& c, const word_prediction& p,
                              const mapping_table& table) {
  if (c.readings.empty()) throw no_readings_error();
  const reading* best = nullptr;
  std::size_t best_distance = 0;
  for (const auto& r : c.readings) {
    const std::size_t d = slot_distance(convert(table, r), p);
    if (best == nullptr || d < best_distance ||
        (d == best_distance && r.render() < best->render())) {
      best = &r;
      best_distance = d;
    }
  }
  return *best;
}

}  // namespace xmorph
