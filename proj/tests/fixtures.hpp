#pragma once

// Shared helpers for the unit tests: the bundled demo fixture plus small
// inline corpora.

#include <sstream>
#include <string>

#include "xmorph/corpusio.hpp"
#include "xmorph/lexmorph.hpp"
#include "xmorph/tagmap.hpp"

namespace testutil {

inline std::string data_path(const std::string& rel) {
  return std::string(XMORPH_DATA_DIR) + "/" + rel;
}

inline const xmorph::analyzer& demo_analyzer() {
  static const xmorph::analyzer a = xmorph::load_analyzer(
      data_path("table1/lexicon.tsv"), data_path("table1/paradigms.txt"));
  return a;
}

inline const xmorph::mapping_table& demo_mapping() {
  static const xmorph::mapping_table t =
      xmorph::load_mapping(data_path("mapping.txt"));
  return t;
}

inline xmorph::sentence analyze_words(const xmorph::analyzer& a,
                                      const std::vector<std::string>& words) {
  xmorph::sentence s;
  for (const auto& w : words) {
    xmorph::cohort c;
    c.surface = w;
    c.readings = a.analyze(w);
    s.cohorts.push_back(std::move(c));
  }
  return s;
}

/// The disambiguated demo sentence: gold annotations per word.
inline std::vector<xmorph::ud_annotation> demo_gold() {
  using xmorph::ud_annotation;
  return {
      ud_annotation{"Adv", {}},
      ud_annotation{"Adv", {}},
      ud_annotation{"V",
                    {"Mood=Ind", "Number=Sing", "Person=3", "Tense=Pres",
                     "VerbForm=Fin"}},
      ud_annotation{"N", {"Case=Nom", "Number=Sing"}},
      ud_annotation{"CLB", {}},
  };
}

inline const std::vector<std::string>& demo_words() {
  static const std::vector<std::string> words = {"gos", "dáppe", "lea", "máddi",
                                                 "?"};
  return words;
}

}  // namespace testutil
