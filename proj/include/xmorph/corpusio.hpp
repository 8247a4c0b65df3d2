#pragma once

// Corpus file formats: CoNLL-U treebanks, cohort streams, and the paired
// source/target line files the model consumes.

#include <fstream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "xmorph/errors.hpp"
#include "xmorph/lexmorph.hpp"
#include "xmorph/seqcodec.hpp"
#include "xmorph/tagmap.hpp"

namespace xmorph {

struct conllu_token {
  int id = 0;
  std::string form;
  std::string lemma;
  std::string upos;
  std::set<std::string> feats;
};

struct conllu_sentence {
  std::vector<conllu_token> tokens;

  std::vector<ud_annotation> annotations() const {
    std::vector<ud_annotation> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back({t.upos, t.feats});
    return out;
  }
};

struct conllu_doc {
  std::vector<conllu_sentence> sentences;
  std::size_t skipped_tokens = 0;  // multiword ranges and empty nodes
};

/// CoNLL-U reader. Only ID/FORM/LEMMA/UPOS/FEATS are consumed; multiword
/// token ranges and empty nodes are skipped and counted.
inline conllu_doc read_conllu(std::istream& in, const std::string& name = "<conllu>") {
  conllu_doc doc;
  conllu_sentence current;
  std::string line;
  std::size_t lineno = 0;
  auto flush = [&] {
    if (!current.tokens.empty()) {
      doc.sentences.push_back(std::move(current));
      current = {};
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') continue;
    auto cols = detail::split(line, '\t');
    if (cols.size() != 10)
      throw parse_error(name, lineno,
                        "expected 10 tab-separated columns, got " +
                            std::to_string(cols.size()));
    const std::string& id = cols[0];
    if (id.find('-') != std::string::npos || id.find('.') != std::string::npos) {
      doc.skipped_tokens += 1;
      continue;
    }
    conllu_token tok;
    try {
      tok.id = std::stoi(id);
    } catch (const std::exception&) {
      throw parse_error(name, lineno, "token id is not a number: '" + id + "'");
    }
    const int expected = static_cast<int>(current.tokens.size()) + 1;
    if (tok.id != expected)
      throw parse_error(name, lineno,
                        "token ids must be consecutive from 1; expected " +
                            std::to_string(expected) + ", got " + id);
    tok.form = cols[1];
    tok.lemma = cols[2];
    tok.upos = cols[3];
    if (cols[5] != "_")
      for (const auto& feat : detail::split(cols[5], '|')) {
        if (feat.find('=') == std::string::npos)
          throw parse_error(name, lineno, "FEATS entry is not Key=Value: '" + feat + "'");
        tok.feats.insert(feat);
      }
    current.tokens.push_back(std::move(tok));
  }
  flush();
  return doc;
}

inline conllu_doc load_conllu(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path);
  return read_conllu(in, path);
}

inline void write_conllu(const conllu_doc& doc, std::ostream& out) {
  for (const auto& sent : doc.sentences) {
    for (const auto& tok : sent.tokens) {
      out << tok.id << '\t' << tok.form << '\t' << tok.lemma << '\t' << tok.upos
          << '\t' << '_' << '\t';
      if (tok.feats.empty()) {
        out << '_';
      } else {
        bool first = true;
        for (const auto& f : tok.feats) {
          if (!first) out << '|';
          out << f;
          first = false;
        }
      }
      out << "\t_\t_\t_\t_\n";
    }
    out << '\n';
  }
}

struct cohort_doc {
  std::vector<sentence> sentences;
};

/// Cohort stream: `"<surface>"` opens a cohort, each tab-indented line is one
/// reading in canonical rendering, a blank line ends the sentence.
inline void write_cohorts(const cohort_doc& doc, std::ostream& out) {
  for (const auto& sent : doc.sentences) {
    for (const auto& c : sent.cohorts) {
      out << "\"<" << c.surface << ">\"\n";
      for (const auto& r : c.readings) out << '\t' << r.render() << '\n';
    }
    out << '\n';
  }
}

inline cohort_doc read_cohorts(std::istream& in) {
  cohort_doc doc;
  sentence current;
  std::string line;
  std::size_t lineno = 0;
  auto flush = [&] {
    if (!current.cohorts.empty()) {
      doc.sentences.push_back(std::move(current));
      current = {};
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '\t') {
      if (current.cohorts.empty())
        throw malformed_cohort_error(lineno, "reading line before any cohort");
      auto r = parse_reading(std::string_view(line).substr(1));
      if (!r) throw malformed_cohort_error(lineno, "not a lemma+Tag reading: '" + line + "'");
      current.cohorts.back().readings.push_back(std::move(*r));
      continue;
    }
    if (line.size() < 4 || line.substr(0, 2) != "\"<" ||
        line.substr(line.size() - 2) != ">\"")
      throw malformed_cohort_error(lineno, "expected '\"<surface>\"': '" + line + "'");
    cohort c;
    c.surface = line.substr(2, line.size() - 4);
    if (c.surface.empty())
      throw malformed_cohort_error(lineno, "empty surface form");
    current.cohorts.push_back(std::move(c));
  }
  flush();
  return doc;
}

inline cohort_doc load_cohorts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path);
  return read_cohorts(in);
}

struct dataset {
  std::vector<std::pair<token_sequence, token_sequence>> pairs;
  std::vector<std::string> uncovered_tags;  // analyzer tags the mapping misses
};

/// Treebank -> training pairs: source from analyzing each form (unknown
/// words become "X"), target from the treebank's own UPOS/FEATS columns.
inline dataset build_dataset(const std::vector<conllu_sentence>& treebank,
                             const analyzer& a, const mapping_table& table) {
  dataset out;
  std::set<std::string> seen_tags;
  for (const auto& sent : treebank) {
    if (sent.tokens.empty()) continue;
    sentence s;
    std::vector<ud_annotation> gold;
    for (const auto& tok : sent.tokens) {
      cohort c;
      c.surface = tok.form;
      c.readings = a.analyze(tok.form);
      for (const auto& r : c.readings)
        seen_tags.insert(r.tags.begin(), r.tags.end());
      s.cohorts.push_back(std::move(c));
      gold.push_back({tok.upos, tok.feats});
    }
    out.pairs.emplace_back(encode_source(s), encode_target(gold));
  }
  out.uncovered_tags = coverage_gaps(table, seen_tags);
  return out;
}

inline std::vector<token_sequence> load_sequence_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error(path);
  std::vector<token_sequence> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(token_sequence::from_line(line));
  }
  return out;
}

inline void write_sequence_lines(const std::vector<token_sequence>& seqs,
                                 const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error(path);
  for (const auto& s : seqs) out << s.to_line() << '\n';
}

}  // namespace xmorph
