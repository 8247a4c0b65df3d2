#pragma once

// UTF-8 decoding/encoding and a composition-only normalization pass.
// Normalization composes base letter + combining mark pairs from a fixed
// Latin table; text that is already precomposed passes through unchanged.

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace xmorph {

inline std::vector<char32_t> decode_utf8(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    char32_t cp = 0xFFFD;
    std::size_t len = 1;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0 && i + 1 < s.size()) {
      const auto b1 = static_cast<unsigned char>(s[i + 1]);
      if ((b1 & 0xC0) == 0x80) {
        cp = (char32_t(b0 & 0x1F) << 6) | (b1 & 0x3F);
        len = 2;
        if (cp < 0x80) cp = 0xFFFD;
      }
    } else if ((b0 & 0xF0) == 0xE0 && i + 2 < s.size()) {
      const auto b1 = static_cast<unsigned char>(s[i + 1]);
      const auto b2 = static_cast<unsigned char>(s[i + 2]);
      if ((b1 & 0xC0) == 0x80 && (b2 & 0xC0) == 0x80) {
        cp = (char32_t(b0 & 0x0F) << 12) | (char32_t(b1 & 0x3F) << 6) | (b2 & 0x3F);
        len = 3;
        if (cp < 0x800) cp = 0xFFFD;
      }
    } else if ((b0 & 0xF8) == 0xF0 && i + 3 < s.size()) {
      const auto b1 = static_cast<unsigned char>(s[i + 1]);
      const auto b2 = static_cast<unsigned char>(s[i + 2]);
      const auto b3 = static_cast<unsigned char>(s[i + 3]);
      if ((b1 & 0xC0) == 0x80 && (b2 & 0xC0) == 0x80 && (b3 & 0xC0) == 0x80) {
        cp = (char32_t(b0 & 0x07) << 18) | (char32_t(b1 & 0x3F) << 12) |
             (char32_t(b2 & 0x3F) << 6) | (b3 & 0x3F);
        len = 4;
        if (cp < 0x10000 || cp > 0x10FFFF) cp = 0xFFFD;
      }
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode_utf8(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) append_utf8(out, cp);
  return out;
}

namespace detail {

struct composition { std::uint32_t key; char32_t composed; };

constexpr std::uint32_t comp_key(char32_t base, char32_t mark) {
  return (std::uint32_t(base) << 16) | std::uint32_t(mark);
}

// (ASCII base, combining mark) -> precomposed letter. Sorted by key.
inline const std::array<composition, 130>& composition_table() {
  static const std::array<composition, 130> table = [] {
    std::array<composition, 130> t{{
        {comp_key(U'A', 0x0300), U'À'}, {comp_key(U'A', 0x0301), U'Á'},
        {comp_key(U'A', 0x0302), U'Â'}, {comp_key(U'A', 0x0303), U'Ã'},
        {comp_key(U'A', 0x0304), U'Ā'}, {comp_key(U'A', 0x0306), U'Ă'},
        {comp_key(U'A', 0x0308), U'Ä'}, {comp_key(U'A', 0x030A), U'Å'},
        {comp_key(U'A', 0x0328), U'Ą'},
        {comp_key(U'C', 0x0301), U'Ć'}, {comp_key(U'C', 0x0307), U'Ċ'},
        {comp_key(U'C', 0x030C), U'Č'}, {comp_key(U'C', 0x0327), U'Ç'},
        {comp_key(U'D', 0x030C), U'Ď'},
        {comp_key(U'E', 0x0300), U'È'}, {comp_key(U'E', 0x0301), U'É'},
        {comp_key(U'E', 0x0302), U'Ê'}, {comp_key(U'E', 0x0304), U'Ē'},
        {comp_key(U'E', 0x0306), U'Ĕ'}, {comp_key(U'E', 0x0307), U'Ė'},
        {comp_key(U'E', 0x0308), U'Ë'}, {comp_key(U'E', 0x030C), U'Ě'},
        {comp_key(U'E', 0x0328), U'Ę'},
        {comp_key(U'G', 0x0306), U'Ğ'}, {comp_key(U'G', 0x0307), U'Ġ'},
        {comp_key(U'I', 0x0300), U'Ì'}, {comp_key(U'I', 0x0301), U'Í'},
        {comp_key(U'I', 0x0302), U'Î'}, {comp_key(U'I', 0x0304), U'Ī'},
        {comp_key(U'I', 0x0308), U'Ï'}, {comp_key(U'I', 0x0328), U'Į'},
        {comp_key(U'L', 0x030C), U'Ľ'},
        {comp_key(U'N', 0x0301), U'Ń'}, {comp_key(U'N', 0x0303), U'Ñ'},
        {comp_key(U'N', 0x030C), U'Ň'},
        {comp_key(U'O', 0x0300), U'Ò'}, {comp_key(U'O', 0x0301), U'Ó'},
        {comp_key(U'O', 0x0302), U'Ô'}, {comp_key(U'O', 0x0303), U'Õ'},
        {comp_key(U'O', 0x0304), U'Ō'}, {comp_key(U'O', 0x0308), U'Ö'},
        {comp_key(U'R', 0x030C), U'Ř'},
        {comp_key(U'S', 0x0301), U'Ś'}, {comp_key(U'S', 0x030C), U'Š'},
        {comp_key(U'S', 0x0327), U'Ş'},
        {comp_key(U'T', 0x030C), U'Ť'}, {comp_key(U'T', 0x0327), U'Ţ'},
        {comp_key(U'U', 0x0300), U'Ù'}, {comp_key(U'U', 0x0301), U'Ú'},
        {comp_key(U'U', 0x0302), U'Û'}, {comp_key(U'U', 0x0304), U'Ū'},
        {comp_key(U'U', 0x0306), U'Ŭ'}, {comp_key(U'U', 0x0308), U'Ü'},
        {comp_key(U'U', 0x030A), U'Ů'}, {comp_key(U'U', 0x0328), U'Ų'},
        {comp_key(U'Y', 0x0301), U'Ý'}, {comp_key(U'Y', 0x0308), U'Ÿ'},
        {comp_key(U'Z', 0x0301), U'Ź'}, {comp_key(U'Z', 0x0307), U'Ż'},
        {comp_key(U'Z', 0x030C), U'Ž'},
        {comp_key(U'a', 0x0300), U'à'}, {comp_key(U'a', 0x0301), U'á'},
        {comp_key(U'a', 0x0302), U'â'}, {comp_key(U'a', 0x0303), U'ã'},
        {comp_key(U'a', 0x0304), U'ā'}, {comp_key(U'a', 0x0306), U'ă'},
        {comp_key(U'a', 0x0308), U'ä'}, {comp_key(U'a', 0x030A), U'å'},
        {comp_key(U'a', 0x0328), U'ą'},
        {comp_key(U'c', 0x0301), U'ć'}, {comp_key(U'c', 0x0307), U'ċ'},
        {comp_key(U'c', 0x030C), U'č'}, {comp_key(U'c', 0x0327), U'ç'},
        {comp_key(U'd', 0x030C), U'ď'},
        {comp_key(U'e', 0x0300), U'è'}, {comp_key(U'e', 0x0301), U'é'},
        {comp_key(U'e', 0x0302), U'ê'}, {comp_key(U'e', 0x0304), U'ē'},
        {comp_key(U'e', 0x0306), U'ĕ'}, {comp_key(U'e', 0x0307), U'ė'},
        {comp_key(U'e', 0x0308), U'ë'}, {comp_key(U'e', 0x030C), U'ě'},
        {comp_key(U'e', 0x0328), U'ę'},
        {comp_key(U'g', 0x0306), U'ğ'}, {comp_key(U'g', 0x0307), U'ġ'},
        {comp_key(U'i', 0x0300), U'ì'}, {comp_key(U'i', 0x0301), U'í'},
        {comp_key(U'i', 0x0302), U'î'}, {comp_key(U'i', 0x0304), U'ī'},
        {comp_key(U'i', 0x0308), U'ï'}, {comp_key(U'i', 0x0328), U'į'},
        {comp_key(U'l', 0x030C), U'ľ'},
        {comp_key(U'n', 0x0301), U'ń'}, {comp_key(U'n', 0x0303), U'ñ'},
        {comp_key(U'n', 0x030C), U'ň'},
        {comp_key(U'o', 0x0300), U'ò'}, {comp_key(U'o', 0x0301), U'ó'},
        {comp_key(U'o', 0x0302), U'ô'}, {comp_key(U'o', 0x0303), U'õ'},
        {comp_key(U'o', 0x0304), U'ō'}, {comp_key(U'o', 0x0308), U'ö'},
        {comp_key(U'r', 0x030C), U'ř'},
        {comp_key(U's', 0x0301), U'ś'}, {comp_key(U's', 0x030C), U'š'},
        {comp_key(U's', 0x0327), U'ş'},
        {comp_key(U't', 0x030C), U'ť'}, {comp_key(U't', 0x0327), U'ţ'},
        {comp_key(U'u', 0x0300), U'ù'}, {comp_key(U'u', 0x0301), U'ú'},
        {comp_key(U'u', 0x0302), U'û'}, {comp_key(U'u', 0x0304), U'ū'},
        {comp_key(U'u', 0x0306), U'ŭ'}, {comp_key(U'u', 0x0308), U'ü'},
        {comp_key(U'u', 0x030A), U'ů'}, {comp_key(U'u', 0x0328), U'ų'},
        {comp_key(U'y', 0x0301), U'ý'}, {comp_key(U'y', 0x0308), U'ÿ'},
        {comp_key(U'z', 0x0301), U'ź'}, {comp_key(U'z', 0x0307), U'ż'},
        {comp_key(U'z', 0x030C), U'ž'},
        // padding entries keep the array size fixed; keys above any real pair
        {0xFFFFFFF0u, 0}, {0xFFFFFFF1u, 0}, {0xFFFFFFF2u, 0}, {0xFFFFFFF3u, 0},
        {0xFFFFFFF4u, 0}, {0xFFFFFFF5u, 0}, {0xFFFFFFF6u, 0}, {0xFFFFFFF7u, 0},
        {0xFFFFFFF8u, 0}, {0xFFFFFFF9u, 0},
    }};
    std::sort(t.begin(), t.end(),
              [](const composition& a, const composition& b) { return a.key < b.key; });
    return t;
  }();
  return table;
}

inline char32_t compose_pair(char32_t base, char32_t mark) {
  const auto& table = composition_table();
  const std::uint32_t key = comp_key(base, mark);
  auto it = std::lower_bound(table.begin(), table.end(), key,
                             [](const composition& c, std::uint32_t k) { return c.key < k; });
  if (it != table.end() && it->key == key) return it->composed;
  return 0;
}

inline bool is_combining_mark(char32_t cp) { return cp >= 0x0300 && cp <= 0x036F; }

}  // namespace detail

/// Compose base+combining-mark pairs; leaves everything else untouched.
inline std::string normalize_composed(std::string_view s) {
  auto cps = decode_utf8(s);
  std::vector<char32_t> out;
  out.reserve(cps.size());
  for (char32_t cp : cps) {
    if (!out.empty() && detail::is_combining_mark(cp)) {
      if (char32_t comp = detail::compose_pair(out.back(), cp); comp != 0) {
        out.back() = comp;
        continue;
      }
    }
    out.push_back(cp);
  }
  return encode_utf8(out);
}

}  // namespace xmorph
