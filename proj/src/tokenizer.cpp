#include "gg/tokenizer.hpp"

#include <cctype>

namespace gg {

namespace {
bool is_word_char(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }
}  // namespace

std::vector<std::string> split_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) out.push_back(std::move(word));
    word.clear();
  };
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      flush();
    } else if (is_word_char(c)) {
      word.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush();
      out.emplace_back(1, static_cast<char>(c));
    }
  }
  flush();
  return out;
}

std::string join_tokens(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (k) out.push_back(' ');
    out += tokens[k];
  }
  return out;
}

Vocabulary::Vocabulary() { add(std::string(kUnknownWord)); }

int Vocabulary::add(const std::string& word) {
  auto [it, inserted] = ids_.emplace(word, static_cast<int>(words_.size()));
  if (inserted) words_.push_back(word);
  return it->second;
}

int Vocabulary::id(const std::string& word) const {
  auto found = ids_.find(word);
  return found == ids_.end() ? kUnknown : found->second;
}

TokenSequence Vocabulary::encode(std::string_view text) const {
  TokenSequence seq{{}, std::string(text)};
  for (const auto& w : split_tokens(text)) seq.tokens.push_back(id(w));
  return seq;
}

std::string Vocabulary::decode(std::span<const int> tokens) const {
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (int t : tokens) words.push_back(word(t));
  return join_tokens(words);
}

}  // namespace gg
