#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "zhbraille/lexicon.h"
#include "zhbraille/scheme.h"

namespace zhbraille {

// Probability with which a syllable keeps its tone cell. Each decision is a
// pure function of (seed, sentence index, syllable index).
class TonePolicy {
 public:
  TonePolicy(double retain_probability, std::uint64_t seed);

  static TonePolicy FullTone(std::uint64_t seed = 0) { return {1.0, seed}; }
  static TonePolicy NoTone(std::uint64_t seed = 0) { return {0.0, seed}; }
  static TonePolicy TenPercent(std::uint64_t seed) { return {0.1, seed}; }

  // Accepts "full", "none", "ten" or "p=<probability>".
  static TonePolicy Parse(std::string_view text, std::uint64_t seed);

  double retain_probability() const { return retain_probability_; }
  std::uint64_t seed() const { return seed_; }

  double Draw(std::uint64_t sentence_index, std::uint64_t syllable_index) const;
  bool Retain(std::uint64_t sentence_index, std::uint64_t syllable_index) const {
    return Draw(sentence_index, syllable_index) < retain_probability_;
  }

  // "full", "none" or "p=<probability>".
  std::string name() const;

 private:
  double retain_probability_;
  std::uint64_t seed_;
};

// Forward maximal matching; anything not covered by a lexicon word becomes a
// single-character word. Whitespace is removed.
std::vector<std::u32string> Segment(std::u32string_view text,
                                    const Lexicon& lexicon);

// Word-level pronunciation when the lexicon has the word, otherwise each
// character's most frequent reading. Throws UnknownCharacterError.
std::vector<PinyinSyllable> AnnotatePinyin(std::u32string_view word,
                                           const Lexicon& lexicon);

struct SyllableEmission {
  PinyinSyllable syllable;
  bool tone_emitted = false;
};

struct Transcription {
  std::string braille;
  std::vector<std::u32string> words;
  std::vector<SyllableEmission> syllables;
  // Non-Han, non-space characters removed from the source.
  std::size_t dropped_characters = 0;

  std::size_t retained_tones() const;
};

// Words are joined by one space; a word's syllables are concatenated cells.
// Non-Han characters are dropped and split the text into separately segmented
// runs. Throws UnknownCharacterError (offset within the sentence) and
// Error(kIncompleteScheme).
Transcription TranscodeSentence(std::string_view text,
                                const BrailleScheme& scheme,
                                const Lexicon& lexicon,
                                const TonePolicy& policy,
                                std::uint64_t sentence_index);

struct ToneCount {
  std::size_t retained = 0;
  std::size_t total_syllables = 0;
};

// Re-parses braille against the scheme. Throws MalformedSyllableError.
ToneCount CountRetainedTones(std::string_view braille,
                             const BrailleScheme& scheme);

}  // namespace zhbraille
