#pragma once

// Paradigm-driven lexical transducer. A lexicon of (lemma, pos, paradigm)
// entries plus suffix-substitution paradigms compiles into an immutable
// analyzer that maps surface forms to readings and (lemma, tags) keys back
// to surface forms.

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "xmorph/errors.hpp"
#include "xmorph/unicode.hpp"

namespace xmorph {

struct suffix_rule {
  std::string strip;   // removed from the lemma end; may be empty
  std::string append;  // appended after stripping; may be empty
};

struct paradigm_form {
  std::vector<std::string> tags;  // full tag sequence, POS first
  suffix_rule rule;
};

struct paradigm {
  std::string id;
  std::string pos;
  std::vector<paradigm_form> forms;
};

struct lexicon_entry {
  std::string lemma;
  std::string pos;
  std::string paradigm_id;
};

struct reading {
  std::string lemma;
  std::vector<std::string> tags;  // POS first, never empty

  /// Canonical rendering: lemma+Tag+...+Tag.
  std::string render() const {
    std::string out = lemma;
    for (const auto& t : tags) {
      out += '+';
      out += t;
    }
    return out;
  }

  friend bool operator==(const reading& a, const reading& b) {
    return a.lemma == b.lemma && a.tags == b.tags;
  }
  friend bool operator<(const reading& a, const reading& b) {
    return a.render() < b.render();
  }
};

/// Parse "lemma+Tag+...+Tag" back into a reading.
inline std::optional<reading> parse_reading(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '+') {
      parts.emplace_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() < 2 || parts[0].empty()) return std::nullopt;
  reading r;
  r.lemma = parts[0];
  r.tags.assign(parts.begin() + 1, parts.end());
  for (const auto& t : r.tags)
    if (t.empty()) return std::nullopt;
  return r;
}

inline const std::set<std::string>& default_punctuation() {
  static const std::set<std::string> punct = {
      ".", ",", "!", "?", ":", ";", "-", "—", "–", "(", ")",
      "\"", "'", "«", "»", "…"};
  return punct;
}

class analyzer {
 public:
  using reading_set = std::vector<reading>;  // sorted by canonical rendering

  const std::map<std::string, reading_set>& surface_index() const {
    return surface_index_;
  }
  const std::set<std::string>& punct_class() const { return punct_class_; }

  /// All readings whose generated surface equals `surface` exactly
  /// (after composition normalization). Unknown surfaces yield an empty set.
  reading_set analyze(std::string_view surface) const {
    const std::string key = normalize_composed(surface);
    if (punct_class_.count(key)) {
      return {reading{key, {"CLB"}}};
    }
    auto it = surface_index_.find(key);
    if (it == surface_index_.end()) return {};
    return it->second;
  }

  /// The unique surface realizing (lemma, tags), if the paradigms define one.
  std::optional<std::string> generate(std::string_view lemma,
                                      const std::vector<std::string>& tags) const {
    std::string key = normalize_composed(lemma);
    key += '|';
    for (const auto& t : tags) {
      key += t;
      key += '+';
    }
    auto it = generation_index_.find(key);
    if (it == generation_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Every analyzer tag appearing in some reading.
  std::set<std::string> tag_inventory() const {
    std::set<std::string> tags;
    for (const auto& [surface, readings] : surface_index_)
      for (const auto& r : readings) tags.insert(r.tags.begin(), r.tags.end());
    return tags;
  }

  std::size_t surface_count() const { return surface_index_.size(); }
  std::size_t generation_count() const { return generation_index_.size(); }

  friend analyzer compile(const std::vector<lexicon_entry>& entries,
                          const std::vector<paradigm>& paradigms,
                          std::set<std::string> punct);

 private:
  std::map<std::string, reading_set> surface_index_;
  std::map<std::string, std::string> generation_index_;  // lemma|tag+tag+ -> surface
  std::set<std::string> punct_class_;
};

/// Compile lexicon + paradigms into an analyzer. Deterministic; rejects
/// unresolved paradigm references, inapplicable suffix rules, and generation
/// keys that would map to two distinct surfaces.
inline analyzer compile(const std::vector<lexicon_entry>& entries,
                        const std::vector<paradigm>& paradigms,
                        std::set<std::string> punct = default_punctuation()) {
  std::map<std::string, const paradigm*> by_id;
  for (const auto& p : paradigms) by_id[p.id] = &p;

  analyzer a;
  a.punct_class_ = std::move(punct);
  for (const auto& entry : entries) {
    auto pit = by_id.find(entry.paradigm_id);
    if (pit == by_id.end())
      throw unresolved_paradigm_error(entry.lemma, entry.paradigm_id);
    const paradigm& p = *pit->second;
    const std::string lemma = normalize_composed(entry.lemma);
    for (const auto& form : p.forms) {
      if (!form.rule.strip.empty() && !lemma.ends_with(form.rule.strip))
        throw inapplicable_rule_error(lemma, form.rule.strip);
      std::string surface = lemma.substr(0, lemma.size() - form.rule.strip.size());
      surface += form.rule.append;
      surface = normalize_composed(surface);

      reading r{lemma, form.tags};
      auto& readings = a.surface_index_[surface];
      auto pos = std::lower_bound(readings.begin(), readings.end(), r);
      if (pos == readings.end() || !(*pos == r)) readings.insert(pos, r);

      std::string key = lemma;
      key += '|';
      for (const auto& t : form.tags) {
        key += t;
        key += '+';
      }
      auto [git, inserted] = a.generation_index_.emplace(key, surface);
      if (!inserted && git->second != surface)
        throw ambiguous_generation_error(lemma, r.render(), git->second, surface);
    }
  }
  return a;
}

namespace detail {

inline std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  std::string s = pos == std::string::npos ? line : line.substr(0, pos);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.pop_back();
  return s;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

/// Lexicon file: `lemma<TAB>pos<TAB>paradigm_id`, '#' comments.
inline std::vector<lexicon_entry> parse_lexicon(std::istream& in,
                                                const std::string& name = "<lexicon>") {
  std::vector<lexicon_entry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = detail::strip_comment(line);
    if (s.empty()) continue;
    auto cols = detail::split(s, '\t');
    if (cols.size() != 3 || cols[0].empty() || cols[1].empty() || cols[2].empty())
      throw parse_error(name, lineno, "expected lemma<TAB>pos<TAB>paradigm_id");
    entries.push_back({cols[0], cols[1], cols[2]});
  }
  return entries;
}

inline std::vector<lexicon_entry> load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path);
  return parse_lexicon(in, path);
}

/// Paradigm file: `paradigm <id> <pos>` headers followed by indented
/// `<tag+tag+...><TAB>-<strip>/+<append>` form lines ("-0"/"+0" mean empty).
inline std::vector<paradigm> parse_paradigms(std::istream& in,
                                             const std::string& name = "<paradigms>") {
  std::vector<paradigm> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = detail::strip_comment(line);
    if (s.empty()) continue;
    const bool indented = line[0] == ' ' || line[0] == '\t';
    if (!indented) {
      auto fields = detail::split_ws(s);
      if (fields.size() != 3 || fields[0] != "paradigm")
        throw parse_error(name, lineno, "expected 'paradigm <id> <pos>'");
      out.push_back({fields[1], fields[2], {}});
      continue;
    }
    if (out.empty())
      throw parse_error(name, lineno, "form line before any paradigm header");
    std::string body = s;
    body.erase(0, body.find_first_not_of(" \t"));
    auto cols = detail::split(body, '\t');
    if (cols.size() != 2)
      throw parse_error(name, lineno, "expected <tags><TAB><rule>");
    auto tags = detail::split(cols[0], '+');
    if (tags.empty() || tags[0].empty())
      throw parse_error(name, lineno, "empty tag sequence");
    for (const auto& t : tags)
      if (t.empty()) throw parse_error(name, lineno, "empty tag in sequence");
    auto rule_parts = detail::split(cols[1], '/');
    if (rule_parts.size() != 2 || rule_parts[0].empty() || rule_parts[1].empty() ||
        rule_parts[0][0] != '-' || rule_parts[1][0] != '+')
      throw parse_error(name, lineno, "expected rule '-<strip>/+<append>'");
    suffix_rule rule;
    rule.strip = rule_parts[0].substr(1);
    rule.append = rule_parts[1].substr(1);
    if (rule.strip == "0") rule.strip.clear();
    if (rule.append == "0") rule.append.clear();
    for (const auto& f : out.back().forms)
      if (f.tags == tags)
        throw parse_error(name, lineno, "duplicate tag sequence in paradigm");
    out.back().forms.push_back({std::move(tags), std::move(rule)});
  }
  return out;
}

inline std::vector<paradigm> load_paradigms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path);
  return parse_paradigms(in, path);
}

inline analyzer load_analyzer(const std::string& lexicon_path,
                              const std::string& paradigms_path) {
  return compile(load_lexicon(lexicon_path), load_paradigms(paradigms_path));
}

}  // namespace xmorph
