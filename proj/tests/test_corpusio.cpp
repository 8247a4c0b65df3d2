#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "fixtures.hpp"
#include "xmorph/corpusio.hpp"

using namespace xmorph;

TEST_CASE("bundled treebank sentence loads with gold annotations") {
  conllu_doc doc = load_conllu(testutil::data_path("table1/gold.conllu"));
  REQUIRE(doc.sentences.size() == 1);
  const auto& sent = doc.sentences[0];
  REQUIRE(sent.tokens.size() == 5);
  CHECK(sent.tokens[0].form == "gos");
  CHECK(sent.tokens[2].lemma == "leat");
  CHECK(sent.tokens[2].upos == "V");
  CHECK(sent.tokens[2].feats ==
        std::set<std::string>{"Mood=Ind", "Number=Sing", "Person=3",
                              "Tense=Pres", "VerbForm=Fin"});
  CHECK(sent.annotations() == testutil::demo_gold());
  CHECK(doc.skipped_tokens == 0);
}

TEST_CASE("reader skips comments ranges and empty nodes") {
  std::istringstream in(
      "# newdoc\n"
      "# sent_id = 1\n"
      "1-2\tdel\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\tde\tde\tAdv\t_\t_\t_\t_\t_\t_\n"
      "2\tel\tel\tN\t_\tCase=Nom\t_\t_\t_\t_\n"
      "2.1\tghost\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "\n"
      "1\tsolo\tsolo\tN\t_\t_\t_\t_\t_\t_\n");
  conllu_doc doc = read_conllu(in, "t");
  REQUIRE(doc.sentences.size() == 2);
  CHECK(doc.sentences[0].tokens.size() == 2);
  CHECK(doc.sentences[1].tokens.size() == 1);
  CHECK(doc.skipped_tokens == 2);
  CHECK(doc.sentences[0].tokens[1].feats == std::set<std::string>{"Case=Nom"});
}

TEST_CASE("reader rejects malformed rows") {
  std::istringstream short_row("1\tword\n");
  CHECK_THROWS_AS(read_conllu(short_row, "t"), parse_error);

  std::istringstream bad_id("x\tword\tword\tN\t_\t_\t_\t_\t_\t_\n");
  CHECK_THROWS_AS(read_conllu(bad_id, "t"), parse_error);

  std::istringstream gap(
      "1\ta\ta\tN\t_\t_\t_\t_\t_\t_\n"
      "3\tb\tb\tN\t_\t_\t_\t_\t_\t_\n");
  CHECK_THROWS_AS(read_conllu(gap, "t"), parse_error);

  std::istringstream bad_feat("1\ta\ta\tN\t_\tNumber\t_\t_\t_\t_\n");
  CHECK_THROWS_AS(read_conllu(bad_feat, "t"), parse_error);
}

TEST_CASE("conllu write then read is identity on the consumed columns") {
  conllu_doc doc = load_conllu(testutil::data_path("table1/gold.conllu"));
  std::ostringstream out;
  write_conllu(doc, out);
  std::istringstream back_in(out.str());
  conllu_doc back = read_conllu(back_in, "roundtrip");
  REQUIRE(back.sentences.size() == doc.sentences.size());
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    const auto& a = doc.sentences[i].tokens;
    const auto& b = back.sentences[i].tokens;
    REQUIRE(a.size() == b.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      CHECK(a[j].id == b[j].id);
      CHECK(a[j].form == b[j].form);
      CHECK(a[j].lemma == b[j].lemma);
      CHECK(a[j].upos == b[j].upos);
      CHECK(a[j].feats == b[j].feats);
    }
  }
}

TEST_CASE("cohort stream write then read is identity") {
  cohort_doc doc;
  doc.sentences.push_back(
      testutil::analyze_words(testutil::demo_analyzer(), testutil::demo_words()));
  doc.sentences.push_back(
      testutil::analyze_words(testutil::demo_analyzer(), {"máddi", "zzz"}));

  std::ostringstream out;
  write_cohorts(doc, out);
  std::istringstream in(out.str());
  cohort_doc back = read_cohorts(in);

  REQUIRE(back.sentences.size() == 2);
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    const auto& a = doc.sentences[i].cohorts;
    const auto& b = back.sentences[i].cohorts;
    REQUIRE(a.size() == b.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      CHECK(a[j].surface == b[j].surface);
      REQUIRE(a[j].readings.size() == b[j].readings.size());
      for (std::size_t k = 0; k < a[j].readings.size(); ++k)
        CHECK(a[j].readings[k] == b[j].readings[k]);
    }
  }
}

TEST_CASE("cohort stream format matches the documented shape") {
  cohort_doc doc;
  doc.sentences.push_back(
      testutil::analyze_words(testutil::demo_analyzer(), {"dáppe", "?"}));
  std::ostringstream out;
  write_cohorts(doc, out);
  CHECK(out.str() ==
        "\"<dáppe>\"\n"
        "\tdáppe+Adv\n"
        "\"<?>\"\n"
        "\t?+CLB\n"
        "\n");
}

TEST_CASE("cohort reader rejects malformed streams") {
  std::istringstream orphan("\tgos+Adv\n");
  CHECK_THROWS_AS(read_cohorts(orphan), malformed_cohort_error);

  std::istringstream bad_surface("<gos>\n");
  CHECK_THROWS_AS(read_cohorts(bad_surface), malformed_cohort_error);

  std::istringstream empty_surface("\"<>\"\n");
  CHECK_THROWS_AS(read_cohorts(empty_surface), malformed_cohort_error);

  std::istringstream bad_reading("\"<gos>\"\n\tnot a reading\n");
  CHECK_THROWS_AS(read_cohorts(bad_reading), malformed_cohort_error);
}

TEST_CASE("dataset pairs come from analysis and gold columns") {
  conllu_doc treebank = load_conllu(testutil::data_path("table1/gold.conllu"));
  dataset ds = build_dataset(treebank.sentences, testutil::demo_analyzer(),
                             testutil::demo_mapping());
  REQUIRE(ds.pairs.size() == 1);
  CHECK(ds.pairs[0].first.to_line() ==
        "Adv Subqst _ Adv _ IV Ind Prs Sg3 V _ Du2 Imprt N Nom PrsPrc Sg TV V "
        "_ CLB");
  CHECK(ds.pairs[0].second.to_line() ==
        "Adv _ Adv _ Mood=Ind Number=Sing Person=3 Tense=Pres VerbForm=Fin V "
        "_ Case=Nom Number=Sing N _ CLB");
  CHECK(ds.uncovered_tags.empty());
}

TEST_CASE("dataset flags unknown surfaces and uncovered tags") {
  std::istringstream in(
      "1\tgos\tgos\tAdv\t_\t_\t_\t_\t_\t_\n"
      "2\tmysteryword\tmysteryword\tN\t_\t_\t_\t_\t_\t_\n");
  conllu_doc treebank = read_conllu(in, "t");
  dataset ds = build_dataset(treebank.sentences, testutil::demo_analyzer(),
                             testutil::demo_mapping());
  REQUIRE(ds.pairs.size() == 1);
  CHECK(ds.pairs[0].first.to_line() == "Adv Subqst _ X");
  CHECK(ds.pairs[0].second.to_line() == "Adv _ N");
  CHECK(ds.uncovered_tags.empty());
}

TEST_CASE("sequence line files round trip") {
  std::vector<token_sequence> seqs = {
      token_sequence::from_line("Adv Subqst _ CLB"),
      token_sequence::from_line("N"),
      token_sequence{},
  };
  const std::string path = "/tmp/xmorph_test_seqs.txt";
  write_sequence_lines(seqs, path);
  auto back = load_sequence_lines(path);
  REQUIRE(back.size() == 3);
  CHECK(back[0] == seqs[0]);
  CHECK(back[1] == seqs[1]);
  CHECK(back[2].tokens.empty());
}
