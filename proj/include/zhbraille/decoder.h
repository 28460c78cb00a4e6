#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zhbraille/braille_text.h"
#include "zhbraille/lexicon.h"
#include "zhbraille/ngram.h"
#include "zhbraille/scheme.h"

namespace zhbraille {

struct LatticeCandidate {
  char32_t character = 0;
  double weight = 1;        // frequency, floored at 1
  double log_emission = 0;  // log(weight / total weight at the position)
};

struct LatticePosition {
  std::size_t word_index = 0;
  std::optional<int> tone;  // set when the braille carried a tone cell
  std::vector<PinyinSyllable> syllables;
  std::vector<LatticeCandidate> candidates;  // ordered by codepoint
};

struct Lattice {
  std::vector<LatticePosition> positions;

  // Product of candidate counts, saturating at SIZE_MAX.
  std::size_t path_count() const;
};

// One position per syllable group. A tone cell restricts candidates to that
// tone; otherwise characters of all five tones are merged. Throws
// UndecodablePositionError listing every position without candidates.
Lattice BuildLattice(const std::vector<SyllableGroup>& groups,
                     const BrailleScheme& scheme, const Lexicon& lexicon);

struct DecodeResult {
  std::u32string text;
  std::vector<std::size_t> choices;  // candidate index per position
  double score = 0;
};

// Sum over positions of log P(c | previous order-1 characters) + log emission,
// plus log P(end | last characters).
double ScorePath(const Lattice& lattice, const NgramModel& model,
                 const std::vector<std::size_t>& choices);

// Highest-scoring path, ties broken towards the lexicographically smallest
// string. Hypotheses are recombined on their language-model state and pruned
// to `beam_width` per position; the result is exact once the width covers
// every position's state count, and never gets worse as the width grows.
DecodeResult Decode(const Lattice& lattice, const NgramModel& model,
                    std::size_t beam_width);

// Braille text to Chinese. Throws MalformedSyllableError,
// UndecodablePositionError.
std::u32string DecodeBraille(std::string_view braille,
                             const BrailleScheme& scheme,
                             const Lexicon& lexicon, const NgramModel& model,
                             std::size_t beam_width);

// Exact-position matches over the longer length; 1.0 when both are empty.
double CharacterAccuracy(std::u32string_view hypothesis,
                         std::u32string_view reference);

}  // namespace zhbraille
