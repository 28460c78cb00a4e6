#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "zhbraille/corpus.h"
#include "zhbraille/error.h"
#include "zhbraille/ngram.h"
#include "zhbraille/toy.h"
#include "zhbraille/utf8.h"

namespace zhbraille {
namespace {

std::vector<std::u32string> ToySentences(std::size_t n) {
  ToyCorpusOptions options;
  options.sentences = n;
  std::vector<std::u32string> out;
  for (const auto& s : IngestSentences(MakeToyCorpus(options).sentences)) {
    out.push_back(DecodeUtf8(s.text));
  }
  return out;
}

TEST(NgramTest, SingleSentenceBigram) {
  const double k = 0.5;
  auto model = TrainNgram({U"AB"}, 2, k);
  // V = {A, B, </s>}
  EXPECT_EQ(model.vocabulary_size(), 3u);
  EXPECT_DOUBLE_EQ(model.Probability(U"A", U'B'), (1 + k) / (1 + k * 3));
  EXPECT_DOUBLE_EQ(model.Probability(U"A", U'A'), k / (1 + k * 3));
  EXPECT_DOUBLE_EQ(model.Probability(U"", U'A'), (1 + k) / (1 + k * 3));
  EXPECT_DOUBLE_EQ(model.Probability(U"B", kEndSymbol), (1 + k) / (1 + k * 3));
  // Unseen context is uniform.
  EXPECT_DOUBLE_EQ(model.Probability(U"Z", U'A'), 1.0 / 3);
  EXPECT_EQ(model.NgramCount(std::u32string{kBeginSymbol, U'A'}), 1u);
  EXPECT_EQ(model.ContextCount(U"A"), 1u);
}

TEST(NgramTest, SumsToOne) {
  auto sentences = ToySentences(60);
  std::set<Symbol> vocabulary;
  for (const auto& s : sentences) vocabulary.insert(s.begin(), s.end());
  vocabulary.insert(kEndSymbol);
  for (int order = 1; order <= 3; ++order) {
    auto model = TrainNgram(sentences, order, 0.01);
    ASSERT_EQ(model.vocabulary_size(), vocabulary.size());
    std::vector<std::u32string> contexts = {U"", sentences[0].substr(0, 1),
                                            sentences[1].substr(0, 2),
                                            sentences[2].substr(3, 2), U"xy"};
    for (const auto& ctx : contexts) {
      double sum = 0;
      for (Symbol c : vocabulary) sum += model.Probability(ctx, c);
      EXPECT_NEAR(sum, 1.0, 1e-9) << "order " << order;
    }
  }
}

// Perplexity recomputed from raw n-gram tuples.
double BruteForcePerplexity(const std::vector<std::u32string>& train,
                            const std::vector<std::u32string>& eval, int order,
                            double k) {
  std::map<std::vector<Symbol>, double> counts, contexts;
  std::set<Symbol> vocabulary;
  for (const auto& s : train) {
    std::vector<Symbol> padded(order - 1, kBeginSymbol);
    padded.insert(padded.end(), s.begin(), s.end());
    padded.push_back(kEndSymbol);
    for (std::size_t i = order - 1; i < padded.size(); ++i) {
      std::vector<Symbol> gram(padded.begin() + (i + 1 - order),
                               padded.begin() + i + 1);
      counts[gram] += 1;
      gram.pop_back();
      contexts[gram] += 1;
      vocabulary.insert(padded[i]);
    }
  }
  double log_sum = 0;
  double n = 0;
  for (const auto& s : eval) {
    std::vector<Symbol> padded(order - 1, kBeginSymbol);
    padded.insert(padded.end(), s.begin(), s.end());
    padded.push_back(kEndSymbol);
    for (std::size_t i = order - 1; i < padded.size(); ++i) {
      std::vector<Symbol> gram(padded.begin() + (i + 1 - order),
                               padded.begin() + i + 1);
      double c = counts.count(gram) ? counts[gram] : 0;
      gram.pop_back();
      double ctx = contexts.count(gram) ? contexts[gram] : 0;
      log_sum += std::log((c + k) / (ctx + k * vocabulary.size()));
      n += 1;
    }
  }
  return std::exp(-log_sum / n);
}

TEST(NgramTest, PerplexityMatchesRecount) {
  auto sentences = ToySentences(100);
  std::vector<std::u32string> held_out = {U"一丁丂", U"丐",
                                          U"丅丅丅丅"};
  for (int order = 1; order <= 3; ++order) {
    for (double k : {0.01, 1.0}) {
      auto model = TrainNgram(sentences, order, k);
      EXPECT_NEAR(model.Perplexity(sentences),
                  BruteForcePerplexity(sentences, sentences, order, k), 1e-9);
      EXPECT_NEAR(model.Perplexity(held_out),
                  BruteForcePerplexity(sentences, held_out, order, k), 1e-9);
    }
  }
}

TEST(NgramTest, BigramBeatsUnigramOnToyText) {
  auto sentences = ToySentences(300);
  std::vector<std::u32string> train(sentences.begin(), sentences.begin() + 250);
  std::vector<std::u32string> test(sentences.begin() + 250, sentences.end());
  EXPECT_LT(TrainNgram(train, 2, 0.01).Perplexity(test),
            TrainNgram(train, 1, 0.01).Perplexity(test));
}

TEST(NgramTest, SerializeRoundTrip) {
  auto sentences = ToySentences(40);
  sentences.push_back(U"a b\\<c");
  for (int order = 1; order <= 3; ++order) {
    auto model = TrainNgram(sentences, order, 0.1);
    std::string text = model.Serialize();
    auto back = NgramModel::Deserialize(text);
    EXPECT_EQ(back.Serialize(), text);
    EXPECT_EQ(back.order(), order);
    EXPECT_EQ(back.k(), 0.1);
    EXPECT_EQ(back.vocabulary_size(), model.vocabulary_size());
    EXPECT_EQ(back.distinct_ngrams(), model.distinct_ngrams());
    for (const auto& s : sentences) {
      for (std::size_t i = 0; i <= s.size(); ++i) {
        Symbol next = i < s.size() ? s[i] : kEndSymbol;
        EXPECT_EQ(back.Probability(s.substr(0, i), next),
                  model.Probability(s.substr(0, i), next));
      }
    }
  }
  // Training twice gives the same bytes.
  EXPECT_EQ(TrainNgram(sentences, 2, 0.1).Serialize(),
            TrainNgram(sentences, 2, 0.1).Serialize());
}

TEST(NgramTest, Errors) {
  EXPECT_THROW(TrainNgram({U"a"}, 0, 0.1), Error);
  EXPECT_THROW(TrainNgram({U"a"}, 4, 0.1), Error);
  EXPECT_THROW(TrainNgram({U"a"}, 2, 0.0), Error);
  try {
    TrainNgram({}, 2, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInsufficientData);
  }
  EXPECT_THROW(NgramModel::Deserialize(""), ParseError);
  EXPECT_THROW(NgramModel::Deserialize("zhbraille-ngram 1\norder 9\nk 1\nvocabulary 2\n"),
               ParseError);
  EXPECT_THROW(NgramModel::Deserialize(
                   "zhbraille-ngram 1\norder 2\nk 1\nvocabulary 2\na\t1\n"),
               ParseError);
  EXPECT_THROW(NgramModel::Deserialize(
                   "zhbraille-ngram 1\norder 2\nk 1\nvocabulary 2\na b\tx\n"),
               ParseError);
}

TEST(NgramTest, EmptySentenceCountsEnd) {
  auto model = TrainNgram({U""}, 2, 1.0);
  EXPECT_EQ(model.vocabulary_size(), 1u);
  EXPECT_DOUBLE_EQ(model.Probability(U"", kEndSymbol), 1.0);
}

}  // namespace
}  // namespace zhbraille
