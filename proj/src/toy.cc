#include "zhbraille/toy.h"

#include <array>
#include <stdexcept>
#include <vector>

#include "zhbraille/pinyin.h"
#include "zhbraille/random.h"
#include "zhbraille/utf8.h"

namespace zhbraille {

namespace {

// Avoids finals that share a cell (o/e, ong/ueng) and the j/q/x initials.
constexpr std::array<const char*, 24> kBases = {
    "ba",  "pa",  "ma",  "fa",  "da",  "ta",  "na",   "la",
    "ga",  "ka",  "ha",  "zha", "bai", "pai", "mai",  "dai",
    "tai", "nai", "lai", "gai", "kai", "hai", "zhai", "chai",
};

constexpr char32_t kFirstCharacter = 0x4E00;
constexpr std::uint64_t kSuccessorStream = 1;
constexpr std::uint64_t kSentenceStream = 2;

}  // namespace

ToyCorpus MakeToyCorpus(const ToyCorpusOptions& options) {
  if (options.min_length == 0 || options.min_length > options.max_length) {
    throw std::invalid_argument("toy corpus needs 0 < min_length <= max_length");
  }
  std::vector<PinyinSyllable> syllables;
  for (const char* base : kBases) {
    auto parsed = ParsePinyinBase(base);
    if (!parsed) throw std::logic_error(std::string("bad toy base ") + base);
    for (int tone = 1; tone <= 4; ++tone) {
      syllables.push_back({parsed->initial, parsed->final, tone});
    }
  }
  const std::size_t n = syllables.size();
  auto character = [](std::size_t i) {
    return static_cast<char32_t>(kFirstCharacter + i);
  };

  ToyCorpus corpus;
  corpus.lexicon = "# toy lexicon: one character per toned syllable\n";
  for (std::size_t i = 0; i < n; ++i) {
    // Mild frequency differences so homophones are not tied.
    std::uint64_t frequency = 100 + CounterHash(options.seed, 0, i) % 100;
    corpus.lexicon += EncodeUtf8(character(i)) + "\t" +
                      FormatPinyin(syllables[i]) + "\t" +
                      std::to_string(frequency) + "\n";
  }

  // Each character's preferred successor, never a homophone of itself.
  std::vector<std::size_t> successor(n);
  std::uint64_t counter = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t next;
    do {
      next = UniformBelow(options.seed, kSuccessorStream, counter, n);
    } while (next / 4 == i / 4);
    successor[i] = next;
  }
  // A few two-character words along the successor chain.
  for (std::size_t i = 0; i < n; i += 12) {
    std::size_t j = successor[i];
    corpus.lexicon += EncodeUtf8(std::u32string{character(i), character(j)}) +
                      "\t" + FormatPinyin(syllables[i]) + " " +
                      FormatPinyin(syllables[j]) + "\t50\n";
  }

  for (std::size_t s = 0; s < options.sentences; ++s) {
    std::uint64_t c = 0;
    auto draw = [&](std::uint64_t bound) {
      return UniformBelow(options.seed, kSentenceStream + s, c, bound);
    };
    std::size_t length =
        options.min_length + draw(options.max_length - options.min_length + 1);
    std::u32string text;
    std::size_t current = draw(n);
    for (std::size_t k = 0; k < length; ++k) {
      text.push_back(character(current));
      double u = ToUnitInterval(CounterHash(options.seed, kSentenceStream + s,
                                            (1ull << 32) + k));
      current = u < options.follow_probability ? successor[current] : draw(n);
    }
    corpus.sentences += std::to_string(s + 1) + "\t" + EncodeUtf8(text) + "\n";
  }
  return corpus;
}

}  // namespace zhbraille
