#pragma once

// Data-driven conversion from analyzer tag conventions to UD-style
// POS + Key=Value feature annotations.

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "xmorph/errors.hpp"
#include "xmorph/lexmorph.hpp"

namespace xmorph {

struct ud_annotation {
  std::string upos;
  std::set<std::string> feats;  // "Key=Value" strings

  friend bool operator==(const ud_annotation& a, const ud_annotation& b) {
    return a.upos == b.upos && a.feats == b.feats;
  }
};

struct mapping_rule {
  std::vector<std::string> pattern;  // analyzer tags; rule fires if all present
  std::set<std::string> feats;       // emitted "Key=Value" strings
  bool drop = false;
};

struct mapping_table {
  std::vector<mapping_rule> rules;                // file order
  std::map<std::string, std::string> pos_rules;   // analyzer POS -> UD POS
};

namespace detail {

inline std::string feat_key(const std::string& feat) {
  return feat.substr(0, feat.find('='));
}

inline bool rule_matches(const mapping_rule& rule,
                         const std::vector<std::string>& tags) {
  for (const auto& p : rule.pattern)
    if (std::find(tags.begin(), tags.end(), p) == tags.end()) return false;
  return true;
}

}  // namespace detail

/// Convert one reading. The POS tag resolves through pos_rules (CLB passes
/// through verbatim); every other tag must be covered by a feature or drop
/// rule or the conversion fails.
inline ud_annotation convert(const mapping_table& table, const reading& r) {
  ud_annotation ann;
  const std::string& pos = r.tags.front();
  if (auto it = table.pos_rules.find(pos); it != table.pos_rules.end()) {
    ann.upos = it->second;
  } else if (pos == "CLB") {
    ann.upos = "CLB";
  } else {
    throw unmapped_tag_error(pos);
  }

  std::set<std::string> covered;
  std::map<std::string, std::string> by_key;  // feature key -> value
  for (const auto& rule : table.rules) {
    if (!detail::rule_matches(rule, r.tags)) continue;
    covered.insert(rule.pattern.begin(), rule.pattern.end());
    if (rule.drop) continue;
    for (const auto& feat : rule.feats) {
      const std::string key = detail::feat_key(feat);
      auto [it, inserted] = by_key.emplace(key, feat);
      if (!inserted && it->second != feat)
        throw conflicting_feature_error(key, it->second, feat);
      ann.feats.insert(feat);
    }
  }
  for (std::size_t i = 1; i < r.tags.size(); ++i)
    if (!covered.count(r.tags[i])) throw unmapped_tag_error(r.tags[i]);
  return ann;
}

/// Tags from `inventory` that no feature rule, drop rule, or pos rule touches.
inline std::vector<std::string> coverage_gaps(const mapping_table& table,
                                              const std::set<std::string>& inventory) {
  std::vector<std::string> gaps;
  for (const auto& tag : inventory) {
    if (tag == "CLB") continue;
    if (table.pos_rules.count(tag)) continue;
    bool touched = false;
    for (const auto& rule : table.rules) {
      if (std::find(rule.pattern.begin(), rule.pattern.end(), tag) !=
          rule.pattern.end()) {
        touched = true;
        break;
      }
    }
    if (!touched) gaps.push_back(tag);
  }
  return gaps;
}

/// Mapping file lines:
///   SRC[,SRC...] => FEAT[ FEAT...]   feature rule
///   pos SRC => UPOS                   POS rule
///   drop SRC[,SRC...]                 drop rule
/// '#' starts a comment.
inline mapping_table parse_mapping(std::istream& in,
                                   const std::string& name = "<mapping>") {
  mapping_table table;
  std::set<std::vector<std::string>> seen_patterns;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = detail::strip_comment(line);
    if (s.empty()) continue;
    auto fields = detail::split_ws(s);

    if (fields[0] == "pos") {
      if (fields.size() != 4 || fields[2] != "=>")
        throw parse_error(name, lineno, "expected 'pos SRC => UPOS'");
      if (!table.pos_rules.emplace(fields[1], fields[3]).second)
        throw duplicate_pattern_error(name, lineno);
      continue;
    }

    if (fields[0] == "drop") {
      if (fields.size() != 2)
        throw parse_error(name, lineno, "expected 'drop SRC[,SRC...]'");
      mapping_rule rule;
      rule.pattern = detail::split(fields[1], ',');
      rule.drop = true;
      std::sort(rule.pattern.begin(), rule.pattern.end());
      if (!seen_patterns.insert(rule.pattern).second)
        throw duplicate_pattern_error(name, lineno);
      table.rules.push_back(std::move(rule));
      continue;
    }

    auto arrow = std::find(fields.begin(), fields.end(), "=>");
    if (arrow == fields.end() || arrow != fields.begin() + 1 ||
        arrow + 1 == fields.end())
      throw parse_error(name, lineno, "expected 'SRC[,SRC...] => FEAT[ FEAT...]'");
    mapping_rule rule;
    rule.pattern = detail::split(fields[0], ',');
    for (const auto& p : rule.pattern)
      if (p.empty()) throw parse_error(name, lineno, "empty tag in pattern");
    for (auto it = arrow + 1; it != fields.end(); ++it) {
      const auto eq = it->find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == it->size())
        throw parse_error(name, lineno, "feature must be Key=Value: '" + *it + "'");
      rule.feats.insert(*it);
    }
    auto sorted = rule.pattern;
    std::sort(sorted.begin(), sorted.end());
    if (!seen_patterns.insert(sorted).second)
      throw duplicate_pattern_error(name, lineno);
    table.rules.push_back(std::move(rule));
  }
  return table;
}

inline mapping_table load_mapping(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path);
  return parse_mapping(in, path);
}

}  // namespace xmorph
