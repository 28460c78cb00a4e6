#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "zhbraille/pinyin.h"

namespace zhbraille {

struct Reading {
  PinyinSyllable syllable;
  std::uint64_t frequency = 0;
};

struct HomophoneEntry {
  char32_t character = 0;
  std::uint64_t frequency = 0;
};

// Pronunciation dictionary. Rows are `word<TAB>pinyin pinyin ...<TAB>frequency`;
// single-character rows feed the per-character readings and the homophone
// index, longer rows feed word-level pronunciations.
class Lexicon {
 public:
  // Highest-frequency pronunciation of a multi-character word, or nullptr.
  const std::vector<PinyinSyllable>* word_pronunciation(
      std::u32string_view word) const;

  // Readings of a character, most frequent first. Empty when unknown.
  const std::vector<Reading>& character_readings(char32_t c) const;

  bool knows_character(char32_t c) const {
    return char_pron_.count(c) != 0;
  }
  bool contains_word(std::u32string_view word) const;

  // Characters read (initial, final, tone), ordered by codepoint.
  const std::vector<HomophoneEntry>& homophones(Initial initial, Final final,
                                                int tone) const;

  const SyllableInventory& inventory() const { return inventory_; }
  std::size_t max_word_length() const { return max_word_length_; }
  std::size_t word_count() const { return word_pron_.size(); }
  std::size_t character_count() const { return char_pron_.size(); }

  // Builder used by the loader and by tests.
  void AddEntry(std::u32string word, std::vector<PinyinSyllable> syllables,
                std::uint64_t frequency);
  // Sorts readings and rebuilds the homophone index.
  void Finalize();

 private:
  struct WordEntry {
    std::vector<PinyinSyllable> syllables;
    std::uint64_t frequency = 0;
  };
  using HomophoneKey = std::uint32_t;
  static HomophoneKey Key(Initial i, Final f, int tone);

  std::unordered_map<std::u32string, WordEntry> word_pron_;
  std::unordered_map<char32_t, std::vector<Reading>> char_pron_;
  std::unordered_map<HomophoneKey, std::vector<HomophoneEntry>> homophones_;
  SyllableInventory inventory_;
  std::size_t max_word_length_ = 1;
};

// Throws ParseError on malformed rows, unparseable pinyin, syllable/character
// count mismatch, non-Han characters, or a syllable outside the standard
// inventory.
Lexicon LoadLexicon(std::string_view text,
                    const std::string& source_name = "<lexicon>");
Lexicon LoadLexiconFile(const std::string& path);

}  // namespace zhbraille
