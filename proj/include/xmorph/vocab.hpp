#pragma once

// Token <-> id bijection with fixed reserved ids. The word boundary "_" is
// an ordinary token like any other.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "xmorph/seqcodec.hpp"

namespace xmorph {

class vocabulary {
 public:
  static constexpr int pad_id = 0;
  static constexpr int bos_id = 1;
  static constexpr int eos_id = 2;
  static constexpr int unk_id = 3;

  vocabulary() {
    for (const char* tok : {"<pad>", "<s>", "</s>", "<unk>"}) add(tok);
  }

  int add(const std::string& token) {
    auto it = token_to_id_.find(token);
    if (it != token_to_id_.end()) return it->second;
    const int id = static_cast<int>(id_to_token_.size());
    id_to_token_.push_back(token);
    token_to_id_.emplace(token, id);
    return id;
  }

  /// Id for a token; unknown tokens map to unk.
  int lookup(const std::string& token) const {
    auto it = token_to_id_.find(token);
    return it == token_to_id_.end() ? unk_id : it->second;
  }

  bool contains(const std::string& token) const {
    return token_to_id_.count(token) > 0;
  }

  const std::string& token(int id) const { return id_to_token_.at(id); }
  std::size_t size() const { return id_to_token_.size(); }

  std::vector<int> encode(const token_sequence& seq) const {
    std::vector<int> ids;
    ids.reserve(seq.tokens.size());
    for (const auto& t : seq.tokens) ids.push_back(lookup(t));
    return ids;
  }

  token_sequence decode(const std::vector<int>& ids) const {
    token_sequence seq;
    seq.tokens.reserve(ids.size());
    for (int id : ids) seq.tokens.push_back(token(id));
    return seq;
  }

 private:
  std::vector<std::string> id_to_token_;
  std::unordered_map<std::string, int> token_to_id_;
};

/// Deterministic vocabulary: tokens ordered by frequency (descending), ties
/// by byte order, after the four reserved ids.
inline vocabulary build_vocab(const std::vector<token_sequence>& sequences,
                              std::size_t min_count = 1) {
  std::map<std::string, std::size_t> counts;
  for (const auto& seq : sequences)
    for (const auto& tok : seq.tokens) counts[tok] += 1;

  std::vector<std::pair<std::string, std::size_t>> sorted(counts.begin(),
                                                          counts.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });
  vocabulary v;
  for (const auto& [token, count] : sorted)
    if (count >= min_count) v.add(token);
  return v;
}

}  // namespace xmorph
