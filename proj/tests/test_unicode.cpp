#include <catch2/catch_amalgamated.hpp>

#include "xmorph/unicode.hpp"

using namespace xmorph;

TEST_CASE("utf8 round trip") {
  const std::string samples[] = {"", "abc", "dáppe", "máddi", "«…»", "á"};
  for (const auto& s : samples) {
    CHECK(encode_utf8(decode_utf8(s)) == s);
  }
}

TEST_CASE("invalid utf8 decodes to replacement") {
  const std::string bad = "a\xC3";  // truncated two-byte sequence
  auto cps = decode_utf8(bad);
  REQUIRE(cps.size() == 2);
  CHECK(cps[0] == U'a');
  CHECK(cps[1] == 0xFFFD);

  auto lone = decode_utf8("\x80");
  REQUIRE(lone.size() == 1);
  CHECK(lone[0] == 0xFFFD);
}

TEST_CASE("combining mark detection") {
  CHECK(detail::is_combining_mark(0x0301));
  CHECK(detail::is_combining_mark(0x0300));
  CHECK(detail::is_combining_mark(0x036F));
  CHECK_FALSE(detail::is_combining_mark(U'a'));
  CHECK_FALSE(detail::is_combining_mark(0x00E1));
}

TEST_CASE("composition of base plus mark") {
  CHECK(normalize_composed("á") == "á");
  CHECK(normalize_composed("Á") == "Á");
  CHECK(normalize_composed("č") == "č");
  CHECK(normalize_composed("ö") == "ö");
  CHECK(normalize_composed("ñ") == "ñ");
}

TEST_CASE("already composed text is unchanged") {
  const std::string samples[] = {"á", "dáppe", "máddi", "plain", "čáhci"};
  for (const auto& s : samples) {
    CHECK(normalize_composed(s) == s);
  }
}

TEST_CASE("normalization is idempotent") {
  const std::string samples[] = {"á", "máddi", "x́ỳ"};
  for (const auto& s : samples) {
    const std::string once = normalize_composed(s);
    CHECK(normalize_composed(once) == once);
  }
}

TEST_CASE("unknown base mark pairs are left decomposed") {
  // q + acute has no precomposed form in the table.
  const std::string s = "q́";
  CHECK(normalize_composed(s) == s);
}

TEST_CASE("mixed decomposed word matches precomposed spelling") {
  CHECK(normalize_composed("dáppe") == "dáppe");
  CHECK(normalize_composed("máddat") == "máddat");
}
