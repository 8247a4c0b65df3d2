#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "fixtures.hpp"
#include "xmorph/rng.hpp"
#include "xmorph/seqcodec.hpp"

using namespace xmorph;
using testutil::analyze_words;
using testutil::demo_analyzer;
using testutil::demo_gold;
using testutil::demo_mapping;
using testutil::demo_words;

static const char* const kDemoSource =
    "Adv Subqst _ Adv _ IV Ind Prs Sg3 V _ Du2 Imprt N Nom PrsPrc Sg TV V _ CLB";
static const char* const kDemoTarget =
    "Adv _ Adv _ Mood=Ind Number=Sing Person=3 Tense=Pres VerbForm=Fin V _ "
    "Case=Nom Number=Sing N _ CLB";

TEST_CASE("walkthrough sentence encodes to the documented source row") {
  sentence s = analyze_words(demo_analyzer(), demo_words());
  CHECK(encode_source(s).to_line() == kDemoSource);
}

TEST_CASE("walkthrough gold encodes to the documented target row") {
  CHECK(encode_target(demo_gold()).to_line() == kDemoTarget);
}

TEST_CASE("token sequence line round trip") {
  token_sequence t = token_sequence::from_line(kDemoSource);
  CHECK(t.to_line() == kDemoSource);
  CHECK(t.tokens.size() == 21);
  CHECK(token_sequence::from_line("").tokens.empty());
  CHECK(token_sequence::from_line("  a   b ").to_line() == "a b");
}

TEST_CASE("source tokens per word are unique sorted tag unions") {
  sentence s = analyze_words(demo_analyzer(), demo_words());
  token_sequence enc = encode_source(s);

  std::vector<std::vector<std::string>> groups(1);
  for (const auto& tok : enc.tokens) {
    if (tok == boundary_token)
      groups.emplace_back();
    else
      groups.back().push_back(tok);
  }
  REQUIRE(groups.size() == s.cohorts.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    CHECK(std::is_sorted(groups[i].begin(), groups[i].end()));
    CHECK(std::adjacent_find(groups[i].begin(), groups[i].end()) ==
          groups[i].end());
    std::set<std::string> expect;
    for (const auto& r : s.cohorts[i].readings)
      expect.insert(r.tags.begin(), r.tags.end());
    CHECK(std::set<std::string>(groups[i].begin(), groups[i].end()) == expect);
  }
}

TEST_CASE("source encoding ignores reading order") {
  sentence s = analyze_words(demo_analyzer(), demo_words());
  sentence shuffled = s;
  det_rng rng(99);
  for (auto& c : shuffled.cohorts) rng.shuffle(c.readings);
  CHECK(encode_source(s) == encode_source(shuffled));
}

TEST_CASE("unknown words encode as the placeholder tag") {
  sentence s = analyze_words(demo_analyzer(), {"gos", "zzz", "?"});
  CHECK(encode_source(s).to_line() == "Adv Subqst _ X _ CLB");
}

TEST_CASE("empty sentence encodes to nothing") {
  CHECK(encode_source(sentence{}).tokens.empty());
  CHECK(encode_target({}).tokens.empty());
}

TEST_CASE("target places the pos token last in every group") {
  token_sequence t = encode_target(demo_gold());
  std::vector<std::vector<std::string>> groups(1);
  for (const auto& tok : t.tokens) {
    if (tok == boundary_token)
      groups.emplace_back();
    else
      groups.back().push_back(tok);
  }
  REQUIRE(groups.size() == 5);
  const std::vector<std::string> pos = {"Adv", "Adv", "V", "N", "CLB"};
  for (std::size_t i = 0; i < groups.size(); ++i) {
    REQUIRE_FALSE(groups[i].empty());
    CHECK(groups[i].back() == pos[i]);
    CHECK(std::is_sorted(groups[i].begin(), groups[i].end() - 1));
  }
}

TEST_CASE("decode inverts encode for well formed output") {
  auto gold = demo_gold();
  token_sequence t = encode_target(gold);
  decoded_target d = decode_target(t, gold.size());
  CHECK(d.mismatch == 0);
  REQUIRE(d.words.size() == gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    REQUIRE(d.words[i].upos.has_value());
    CHECK(*d.words[i].upos == gold[i].upos);
    CHECK(d.words[i].feats == gold[i].feats);
    CHECK(slot_distance(gold[i], d.words[i]) == 0);
  }
}

TEST_CASE("decode pads short output and counts the shortfall") {
  token_sequence t = token_sequence::from_line("Case=Nom N _ V");
  decoded_target d = decode_target(t, 4);
  CHECK(d.mismatch == -2);
  REQUIRE(d.words.size() == 4);
  CHECK(d.words[0].upos == "N");
  CHECK(d.words[1].upos == "V");
  CHECK(d.words[2].empty());
  CHECK(d.words[3].empty());
}

TEST_CASE("decode discards surplus groups and counts them") {
  token_sequence t = token_sequence::from_line("N _ V _ Adv");
  decoded_target d = decode_target(t, 2);
  CHECK(d.mismatch == 1);
  REQUIRE(d.words.size() == 2);
  CHECK(d.words[0].upos == "N");
  CHECK(d.words[1].upos == "V");
}

TEST_CASE("decode of empty output yields empty predictions") {
  decoded_target d = decode_target(token_sequence{}, 3);
  CHECK(d.mismatch == -3);
  for (const auto& w : d.words) CHECK(w.empty());
}

TEST_CASE("group without a bare token has no pos") {
  token_sequence t = token_sequence::from_line("Case=Nom Number=Sing");
  decoded_target d = decode_target(t, 1);
  REQUIRE(d.words.size() == 1);
  CHECK_FALSE(d.words[0].upos.has_value());
  CHECK(d.words[0].feats == std::set<std::string>{"Case=Nom", "Number=Sing"});
}

TEST_CASE("group with two bare tokens has no pos either") {
  token_sequence t = token_sequence::from_line("N V Case=Nom");
  decoded_target d = decode_target(t, 1);
  REQUIRE(d.words.size() == 1);
  CHECK_FALSE(d.words[0].upos.has_value());
  CHECK(d.words[0].feats == std::set<std::string>{"Case=Nom"});
}

TEST_CASE("select reading picks the closest conversion") {
  const analyzer& a = demo_analyzer();
  const mapping_table& t = demo_mapping();
  cohort c{"máddi", a.analyze("máddi")};

  word_prediction noun;
  noun.upos = "N";
  noun.feats = {"Case=Nom", "Number=Sing"};
  noun.raw_tokens = {"Case=Nom", "Number=Sing", "N"};
  CHECK(select_reading(c, noun, t).render() == "máddi+N+Sg+Nom");

  word_prediction imp;
  imp.upos = "V";
  imp.feats = {"Mood=Imp", "Number=Dual", "Person=2", "VerbForm=Fin"};
  imp.raw_tokens = {"Mood=Imp", "V"};
  CHECK(select_reading(c, imp, t).render() == "máddat+V+TV+Imprt+Du2");
}

TEST_CASE("select reading breaks ties toward the smallest rendering") {
  const analyzer& a = demo_analyzer();
  const mapping_table& t = demo_mapping();
  cohort c{"gos", a.analyze("gos")};
  // Both readings convert to upos Adv with no features, so the prediction is
  // equidistant from each; the tie goes to "gos+Adv" < "gos+Adv+Subqst".
  word_prediction p;
  p.upos = "Adv";
  p.raw_tokens = {"Adv"};
  CHECK(select_reading(c, p, t).render() == "gos+Adv");
}

TEST_CASE("select reading on an empty cohort fails") {
  const mapping_table& t = demo_mapping();
  cohort c{"zzz", {}};
  CHECK_THROWS_AS(select_reading(c, word_prediction{}, t), no_readings_error);
}

TEST_CASE("select reading with an empty prediction still picks something") {
  const analyzer& a = demo_analyzer();
  const mapping_table& t = demo_mapping();
  cohort c{"máddi", a.analyze("máddi")};
  // Distances: noun reading 1+2, imperative 1+4, participle 1+2; the tie
  // between noun and participle goes to the smaller rendering.
  CHECK(select_reading(c, word_prediction{}, t).render() ==
        "máddat+V+TV+PrsPrc");
}
