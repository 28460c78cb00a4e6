#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace zhbraille {

// Symbols are Unicode codepoints plus two sentinels above the Unicode range.
using Symbol = char32_t;
inline constexpr Symbol kBeginSymbol = 0x110000;
inline constexpr Symbol kEndSymbol = 0x110001;

// Character n-gram model with add-k smoothing:
//
//   P(c | ctx) = (count(ctx c) + k) / (count(ctx) + k |V|)
//
// where count(ctx) is the number of times ctx precedes any symbol and V is
// the training characters plus the end sentinel. Sentences are padded with
// order-1 begin sentinels and one end sentinel.
class NgramModel {
 public:
  NgramModel() = default;

  int order() const { return order_; }
  double k() const { return k_; }
  std::size_t vocabulary_size() const { return vocabulary_size_; }

  // Uses the last order-1 symbols of `context`, left-padded with begin
  // sentinels when shorter.
  double Probability(std::u32string_view context, Symbol next) const;
  double LogProbability(std::u32string_view context, Symbol next) const;

  // `ngram` must have exactly order() symbols.
  std::uint64_t NgramCount(std::u32string_view ngram) const;
  // `context` must have exactly order()-1 symbols.
  std::uint64_t ContextCount(std::u32string_view context) const;
  std::size_t distinct_ngrams() const { return ngram_counts_.size(); }

  // Each sentence contributes its characters plus the end sentinel.
  double Perplexity(const std::vector<std::u32string>& sentences) const;

  // Plain-text count dump, sorted, stable across runs.
  std::string Serialize() const;
  static NgramModel Deserialize(std::string_view text,
                                const std::string& source_name = "<model>");

  friend NgramModel TrainNgram(const std::vector<std::u32string>& sentences,
                               int order, double k);

 private:
  void AddCount(std::u32string ngram, std::uint64_t count);
  std::u32string ContextKey(std::u32string_view context) const;

  int order_ = 1;
  double k_ = 0.01;
  std::size_t vocabulary_size_ = 0;
  std::unordered_map<std::u32string, std::uint64_t> ngram_counts_;
  std::unordered_map<std::u32string, std::uint64_t> context_counts_;
};

inline constexpr std::string_view kNgramFormatHeader = "zhbraille-ngram 1";

// order in 1..3, k > 0. Throws Error(kInsufficientData) for an empty corpus.
NgramModel TrainNgram(const std::vector<std::u32string>& sentences, int order,
                      double k);

}  // namespace zhbraille
