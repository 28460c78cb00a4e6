#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace zhbraille {

using TokenSequence = std::vector<std::string>;

// One token per Han character, CJK punctuation or full-width form; every
// other maximal run of non-space characters is a single token.
TokenSequence TokenizeChinese(std::string_view text);

struct BleuReport {
  int max_n = 4;
  std::vector<double> precisions;          // p_1..p_max_n
  std::vector<std::size_t> matches;        // clipped n-gram matches
  std::vector<std::size_t> totals;         // candidate n-grams
  double brevity_penalty = 1;
  double score = 0;  // 0..100
  std::size_t candidate_length = 0;
  std::size_t reference_length = 0;
};

// Corpus-level BLEU with clipped n-gram counts, uniform weights and brevity
// penalty exp(1 - r/c) for c < r. An order for which the candidates contain
// no n-grams at all is left out of the geometric mean; any other zero
// precision gives 0. Throws Error(kPairedInput) when the corpus sizes differ
// or are zero.
BleuReport CorpusBleu(const std::vector<TokenSequence>& candidates,
                      const std::vector<TokenSequence>& references,
                      int max_n = 4);

// Sentence BLEU with add-one smoothing of matches and totals for n >= 2.
double SmoothedSentenceBleu(const TokenSequence& candidate,
                            const TokenSequence& reference, int max_n = 4);

struct SplitEvaluation {
  BleuReport corpus;
  std::vector<double> sentence_scores;  // smoothed, 0..100
};

// Line-aligned hypothesis/reference texts. Throws Error(kPairedInput) on a
// line-count mismatch.
SplitEvaluation EvaluateSplit(std::string_view hypotheses,
                              std::string_view references, int max_n = 4);

std::string FormatBleuReport(const BleuReport& report);

}  // namespace zhbraille
