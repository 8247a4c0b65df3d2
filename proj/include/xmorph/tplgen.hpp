#pragma once

// Template-based synthetic data generation. A template pairs a sequence of
// slots (open tag patterns or fixed surface words) with gold annotations;
// expansion fills open slots with random lexicon draws, realizes them
// through the generator, and re-analyzes the surfaces to recover ambiguity.

#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "xmorph/errors.hpp"
#include "xmorph/lexmorph.hpp"
#include "xmorph/rng.hpp"
#include "xmorph/seqcodec.hpp"
#include "xmorph/tagmap.hpp"

namespace xmorph {

struct slot {
  enum class kind_t { open, fixed };
  kind_t kind = kind_t::open;
  std::string pos;                // open: POS of lemmas to draw
  std::vector<std::string> tags;  // open: full generation key, POS first
  std::string surface;            // fixed: the literal word

  std::string key() const {
    if (kind == kind_t::fixed) return surface;
    std::string out;
    for (const auto& t : tags) {
      if (!out.empty()) out += '+';
      out += t;
    }
    return out;
  }
};

struct sentence_template {
  std::vector<slot> slots;
  std::vector<ud_annotation> target;  // one per slot
};

struct expansion_config {
  std::size_t per_template = 20;
  std::uint64_t seed = 0;
  std::size_t max_attempts = 100;  // lemma redraws per slot
};

namespace detail {

// Splits "(N Sg Nom) mannem (V ...)" into parenthesized groups and bare words.
struct template_item {
  bool parenthesized = false;
  std::vector<std::string> tokens;
};

inline std::vector<template_item> split_template_items(const std::string& text,
                                                       const std::string& file,
                                                       std::size_t lineno) {
  std::vector<template_item> items;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == '\t') {
      ++i;
      continue;
    }
    if (text[i] == '(') {
      const auto close = text.find(')', i);
      if (close == std::string::npos)
        throw parse_error(file, lineno, "unclosed '(' in template");
      template_item item;
      item.parenthesized = true;
      item.tokens = split_ws(text.substr(i + 1, close - i - 1));
      if (item.tokens.empty())
        throw parse_error(file, lineno, "empty slot '()'");
      items.push_back(std::move(item));
      i = close + 1;
      continue;
    }
    std::size_t end = i;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t' &&
           text[end] != '(')
      ++end;
    template_item item;
    item.tokens.push_back(text.substr(i, end - i));
    items.push_back(std::move(item));
    i = end;
  }
  return items;
}

}  // namespace detail

/// Template file: per template a `src:` line and a `tgt:` line. Source slots
/// are `(POS Tag ...)` patterns or bare fixed words; target groups are
/// `(UPOS Key=Value ...)`, one per slot. '#' starts a comment.
inline std::vector<sentence_template> parse_templates(
    std::istream& in, const std::string& name = "<templates>") {
  std::vector<sentence_template> out;
  std::string line;
  std::size_t lineno = 0;
  std::vector<slot> pending_slots;
  bool have_src = false;
  std::size_t src_line = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = detail::strip_comment(line);
    if (s.empty()) continue;
    if (s.rfind("src:", 0) == 0) {
      if (have_src)
        throw parse_error(name, src_line, "src: line without a following tgt: line");
      pending_slots.clear();
      for (auto& item : detail::split_template_items(s.substr(4), name, lineno)) {
        slot sl;
        if (item.parenthesized) {
          sl.kind = slot::kind_t::open;
          sl.pos = item.tokens.front();
          sl.tags = std::move(item.tokens);
        } else {
          sl.kind = slot::kind_t::fixed;
          sl.surface = item.tokens.front();
        }
        pending_slots.push_back(std::move(sl));
      }
      if (pending_slots.empty()) throw parse_error(name, lineno, "empty src: line");
      have_src = true;
      src_line = lineno;
      continue;
    }
    if (s.rfind("tgt:", 0) == 0) {
      if (!have_src) throw parse_error(name, lineno, "tgt: line without a src: line");
      std::vector<ud_annotation> target;
      for (auto& item : detail::split_template_items(s.substr(4), name, lineno)) {
        if (!item.parenthesized)
          throw parse_error(name, lineno, "target groups must be parenthesized");
        ud_annotation ann;
        ann.upos = item.tokens.front();
        for (std::size_t i = 1; i < item.tokens.size(); ++i) {
          const auto& feat = item.tokens[i];
          const auto eq = feat.find('=');
          if (eq == std::string::npos || eq == 0 || eq + 1 == feat.size())
            throw parse_error(name, lineno,
                              "target feature must be Key=Value: '" + feat + "'");
          ann.feats.insert(feat);
        }
        target.push_back(std::move(ann));
      }
      if (target.size() != pending_slots.size())
        throw arity_mismatch_error(name, lineno, pending_slots.size(), target.size());
      out.push_back({std::move(pending_slots), std::move(target)});
      pending_slots.clear();
      have_src = false;
      continue;
    }
    throw parse_error(name, lineno, "expected 'src:' or 'tgt:' line");
  }
  if (have_src)
    throw parse_error(name, src_line, "src: line without a following tgt: line");
  return out;
}

inline std::vector<sentence_template> load_templates(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path);
  return parse_templates(in, path);
}

struct expansion {
  sentence sent;
  token_sequence source;
  token_sequence target;
};

/// Expand one template into cfg.per_template sentence pairs. Open slots draw
/// lemmas of the matching POS with a seeded RNG (with replacement across
/// sentences, without replacement among identical slots within a sentence),
/// realize the surface through the generator, and re-analyze it for the
/// ambiguous source side. The target side comes verbatim from the template.
inline std::vector<expansion> expand(const sentence_template& t,
                                     const std::vector<lexicon_entry>& lexicon,
                                     const analyzer& a,
                                     const expansion_config& cfg) {
  std::map<std::string, std::vector<const lexicon_entry*>> by_pos;
  for (const auto& e : lexicon) by_pos[e.pos].push_back(&e);
  for (const auto& sl : t.slots)
    if (sl.kind == slot::kind_t::open && !by_pos.count(sl.pos))
      throw slot_unfillable_error(sl.pos);

  det_rng rng(cfg.seed);
  std::vector<expansion> out;
  out.reserve(cfg.per_template);
  for (std::size_t n = 0; n < cfg.per_template; ++n) {
    expansion exp;
    std::map<std::string, std::set<std::string>> used;  // slot key -> lemmas
    for (const auto& sl : t.slots) {
      cohort c;
      if (sl.kind == slot::kind_t::fixed) {
        c.surface = sl.surface;
        c.readings = a.analyze(sl.surface);
      } else {
        const auto& candidates = by_pos.at(sl.pos);
        auto& taken = used[sl.key()];
        bool filled = false;
        for (std::size_t attempt = 0; attempt < cfg.max_attempts; ++attempt) {
          const lexicon_entry& e = *candidates[rng.uniform_index(candidates.size())];
          if (taken.count(e.lemma)) continue;
          auto surface = a.generate(e.lemma, sl.tags);
          if (!surface) continue;
          taken.insert(e.lemma);
          c.surface = *surface;
          c.readings = a.analyze(*surface);
          filled = true;
          break;
        }
        if (!filled) throw exhausted_attempts_error(sl.key());
      }
      exp.sent.cohorts.push_back(std::move(c));
    }
    exp.source = encode_source(exp.sent);
    exp.target = encode_target(t.target);
    out.push_back(std::move(exp));
  }
  return out;
}

}  // namespace xmorph
