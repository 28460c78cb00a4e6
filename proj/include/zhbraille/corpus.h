#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "zhbraille/lexicon.h"
#include "zhbraille/scheme.h"
#include "zhbraille/transcoder.h"

namespace zhbraille {

struct IndexedSentence {
  std::uint64_t index = 0;
  std::string text;
};

// Leipzig layout: `id<TAB>sentence` per line, ids unique. Blank lines are
// skipped. Throws ParseError naming the line.
std::vector<IndexedSentence> IngestSentences(
    std::string_view text, const std::string& source_name = "<corpus>");

struct ParallelPair {
  std::string braille;
  std::string chinese;
  std::uint64_t sentence_index = 0;

  friend bool operator==(const ParallelPair&, const ParallelPair&) = default;
};

struct SkippedSentence {
  std::uint64_t sentence_index = 0;
  std::string reason;
};

struct ParallelCorpus {
  std::vector<ParallelPair> pairs;
  std::vector<SkippedSentence> skipped;  // unknown characters
  std::size_t dropped_characters = 0;
  std::size_t empty_pairs = 0;  // no Han characters at all
  std::size_t syllables = 0;
  std::size_t tone_bearing_syllables = 0;  // tones 1..4
  std::size_t retained_tones = 0;
};

// One pair per sentence that transcodes; sentences with unknown characters
// are skipped and recorded. Output is identical for any worker count.
ParallelCorpus BuildParallelCorpus(const std::vector<IndexedSentence>& sentences,
                                   const BrailleScheme& scheme,
                                   const Lexicon& lexicon,
                                   const TonePolicy& policy,
                                   unsigned workers = 1);

struct SplitRatios {
  unsigned training = 8;
  unsigned validation = 1;
  unsigned test = 1;
};

struct SplitSizes {
  std::size_t training = 0;
  std::size_t validation = 0;
  std::size_t test = 0;
};

// training = round(N*a/S), validation = round(N*b/S) (half up), test gets the
// remainder.
SplitSizes ComputeSplitSizes(std::size_t n, const SplitRatios& ratios);

// Positions 0..n-1 assigned to the three splits by a seeded shuffle, each
// list sorted ascending. Throws Error(kInsufficientData) for n < 10.
std::array<std::vector<std::size_t>, 3> SplitIndices(std::size_t n,
                                                     const SplitRatios& ratios,
                                                     std::uint64_t seed);

struct DatasetSplit {
  std::string name;  // training, validation, test
  std::vector<ParallelPair> pairs;
};

std::array<DatasetSplit, 3> SplitDataset(const std::vector<ParallelPair>& pairs,
                                         const SplitRatios& ratios,
                                         std::uint64_t seed);

struct LengthSummary {
  double mean = 0;
  double median = 0;
};

struct SplitStats {
  std::size_t sample_count = 0;
  LengthSummary braille_string;
  LengthSummary braille_token;
  LengthSummary chinese_string;
  LengthSummary chinese_token;
};

using TokenCounter = std::function<std::size_t(std::string_view)>;

// Braille cells, not counting word spaces.
std::size_t CountBrailleCells(std::string_view braille);
std::size_t CountCodepoints(std::string_view text);

// String lengths are codepoint counts. Throws Error(kEmptySplit).
SplitStats ComputeStats(const DatasetSplit& split,
                        const TokenCounter& braille_tokens = CountBrailleCells,
                        const TokenCounter& chinese_tokens = CountCodepoints);

std::string RenderStatsTable(const std::array<DatasetSplit, 3>& splits,
                             const std::array<SplitStats, 3>& stats);

// `braille<TAB>chinese` per line.
std::string FormatTsv(const std::vector<ParallelPair>& pairs);
// {"braille": ..., "text": ..., "idx": ...} per line.
std::string FormatJsonl(const std::vector<ParallelPair>& pairs);
// Reads FormatTsv output; sentence_index is the 0-based line number.
std::vector<ParallelPair> ParseTsv(std::string_view text,
                                   const std::string& source_name = "<tsv>");

}  // namespace zhbraille
