#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace zhbraille {

// Small synthetic corpus for end-to-end checks.
//
// The lexicon has 24 (initial, final) pairs with tones 1-4, one character per
// toned syllable, so text is fully determined by toned braille and every
// toneless syllable has four homophones. Sentences come from a Markov chain
// in which each character is usually followed by one fixed successor, which
// a bigram model can learn and a unigram model cannot.
struct ToyCorpus {
  std::string lexicon;    // lexicon file contents
  std::string sentences;  // Leipzig `id<TAB>sentence` lines
};

struct ToyCorpusOptions {
  std::size_t sentences = 500;
  std::size_t min_length = 8;
  std::size_t max_length = 20;
  double follow_probability = 0.85;
  std::uint64_t seed = 20240521;
};

ToyCorpus MakeToyCorpus(const ToyCorpusOptions& options = {});

}  // namespace zhbraille
