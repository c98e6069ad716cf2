#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gg {

/// Lowercased word tokens: runs of letters, digits and '_' form one token,
/// every other non-space character is a token on its own.
std::vector<std::string> split_tokens(std::string_view text);

/// Inverse of split_tokens up to case and whitespace: tokens joined by single
/// spaces.
std::string join_tokens(std::span<const std::string> tokens);

struct TokenSequence {
  std::vector<int> tokens;
  std::string surface;
};

/// Token string <-> id table. Id 0 is reserved for unknown words.
class Vocabulary {
 public:
  static constexpr int kUnknown = 0;
  static constexpr std::string_view kUnknownWord = "<unk>";

  Vocabulary();

  int add(const std::string& word);
  int id(const std::string& word) const;  // kUnknown when absent
  const std::string& word(int id) const { return words_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return words_.size(); }

  TokenSequence encode(std::string_view text) const;
  std::string decode(std::span<const int> tokens) const;

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, int> ids_;
};

}  // namespace gg
