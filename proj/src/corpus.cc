#include "zhbraille/corpus.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_set>
#include <variant>

#include "json.hpp"

#include "zhbraille/error.h"
#include "zhbraille/io.h"
#include "zhbraille/random.h"
#include "zhbraille/utf8.h"

namespace zhbraille {

std::vector<IndexedSentence> IngestSentences(std::string_view text,
                                             const std::string& source_name) {
  std::vector<IndexedSentence> sentences;
  std::unordered_set<std::uint64_t> seen;
  std::size_t line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    if (StripSpace(line).empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError(source_name, line_no, "expected id<TAB>sentence");
    }
    std::string_view id_text = StripSpace(line.substr(0, tab));
    std::uint64_t id = 0;
    auto [end, ec] =
        std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
    if (id_text.empty() || ec != std::errc() ||
        end != id_text.data() + id_text.size()) {
      throw ParseError(source_name, line_no,
                       "sentence id '" + std::string(id_text) +
                           "' is not a non-negative integer");
    }
    if (!seen.insert(id).second) {
      throw ParseError(source_name, line_no,
                       "duplicate sentence id " + std::to_string(id));
    }
    sentences.push_back({id, std::string(line.substr(tab + 1))});
  }
  return sentences;
}

namespace {

struct Outcome {
  std::variant<Transcription, std::string> value;  // string = skip reason
};

}  // namespace

ParallelCorpus BuildParallelCorpus(const std::vector<IndexedSentence>& sentences,
                                   const BrailleScheme& scheme,
                                   const Lexicon& lexicon,
                                   const TonePolicy& policy,
                                   unsigned workers) {
  std::vector<Outcome> outcomes(sentences.size());
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&](std::size_t begin, std::size_t end) {
    try {
      for (std::size_t i = begin; i < end; ++i) {
        try {
          outcomes[i].value = TranscodeSentence(
              sentences[i].text, scheme, lexicon, policy, sentences[i].index);
        } catch (const UnknownCharacterError& e) {
          outcomes[i].value = std::string(e.what());
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  workers = std::max(1u, workers);
  if (workers == 1 || sentences.size() < 2) {
    work(0, sentences.size());
  } else {
    std::vector<std::thread> threads;
    const std::size_t chunk = (sentences.size() + workers - 1) / workers;
    for (std::size_t begin = 0; begin < sentences.size(); begin += chunk) {
      threads.emplace_back(work, begin, std::min(sentences.size(), begin + chunk));
    }
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  ParallelCorpus corpus;
  corpus.pairs.reserve(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (auto* reason = std::get_if<std::string>(&outcomes[i].value)) {
      corpus.skipped.push_back({sentences[i].index, std::move(*reason)});
      continue;
    }
    auto& t = std::get<Transcription>(outcomes[i].value);
    corpus.dropped_characters += t.dropped_characters;
    corpus.syllables += t.syllables.size();
    for (const auto& s : t.syllables) {
      if (s.syllable.tone != kNeutralTone) ++corpus.tone_bearing_syllables;
    }
    corpus.retained_tones += t.retained_tones();
    if (t.braille.empty()) ++corpus.empty_pairs;
    corpus.pairs.push_back(
        {std::move(t.braille), sentences[i].text, sentences[i].index});
  }
  return corpus;
}

SplitSizes ComputeSplitSizes(std::size_t n, const SplitRatios& ratios) {
  const std::uint64_t total = std::uint64_t{ratios.training} +
                              ratios.validation + ratios.test;
  if (ratios.training == 0 || ratios.validation == 0 || ratios.test == 0) {
    throw Error(ErrorKind::kParse, "split ratios must be positive");
  }
  auto rounded = [&](unsigned part) {
    return static_cast<std::size_t>((2 * std::uint64_t{n} * part + total) /
                                    (2 * total));
  };
  SplitSizes sizes;
  sizes.training = rounded(ratios.training);
  sizes.validation = rounded(ratios.validation);
  sizes.test = n - sizes.training - sizes.validation;
  return sizes;
}

std::array<std::vector<std::size_t>, 3> SplitIndices(std::size_t n,
                                                     const SplitRatios& ratios,
                                                     std::uint64_t seed) {
  if (n < 10) {
    throw Error(ErrorKind::kInsufficientData,
                "need at least 10 pairs to split, got " + std::to_string(n));
  }
  const SplitSizes sizes = ComputeSplitSizes(n, ratios);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  constexpr std::uint64_t kShuffleStream = 0x73706C6974ull;  // "split"
  std::uint64_t counter = 0;
  for (std::size_t i = n - 1; i > 0; --i) {
    std::size_t j = UniformBelow(seed, kShuffleStream, counter, i + 1);
    std::swap(order[i], order[j]);
  }
  std::array<std::vector<std::size_t>, 3> out;
  auto first = order.begin();
  const std::size_t counts[3] = {sizes.training, sizes.validation, sizes.test};
  for (int s = 0; s < 3; ++s) {
    out[s].assign(first, first + static_cast<std::ptrdiff_t>(counts[s]));
    std::sort(out[s].begin(), out[s].end());
    first += static_cast<std::ptrdiff_t>(counts[s]);
  }
  return out;
}

std::array<DatasetSplit, 3> SplitDataset(const std::vector<ParallelPair>& pairs,
                                         const SplitRatios& ratios,
                                         std::uint64_t seed) {
  auto indices = SplitIndices(pairs.size(), ratios, seed);
  std::array<DatasetSplit, 3> splits = {
      DatasetSplit{"training", {}}, DatasetSplit{"validation", {}},
      DatasetSplit{"test", {}}};
  for (int s = 0; s < 3; ++s) {
    splits[s].pairs.reserve(indices[s].size());
    for (std::size_t i : indices[s]) splits[s].pairs.push_back(pairs[i]);
  }
  return splits;
}

std::size_t CountBrailleCells(std::string_view braille) {
  std::size_t n = 0;
  for (char32_t c : DecodeUtf8(braille)) n += IsSpace(c) ? 0 : 1;
  return n;
}

std::size_t CountCodepoints(std::string_view text) {
  return DecodeUtf8(text).size();
}

namespace {

LengthSummary Summarize(std::vector<std::size_t> lengths) {
  LengthSummary s;
  double sum = 0;
  for (auto v : lengths) sum += static_cast<double>(v);
  s.mean = sum / static_cast<double>(lengths.size());
  std::sort(lengths.begin(), lengths.end());
  const std::size_t mid = lengths.size() / 2;
  s.median = lengths.size() % 2
                 ? static_cast<double>(lengths[mid])
                 : (static_cast<double>(lengths[mid - 1]) +
                    static_cast<double>(lengths[mid])) / 2.0;
  return s;
}

}  // namespace

SplitStats ComputeStats(const DatasetSplit& split,
                        const TokenCounter& braille_tokens,
                        const TokenCounter& chinese_tokens) {
  if (split.pairs.empty()) {
    throw Error(ErrorKind::kEmptySplit, "split '" + split.name + "' is empty");
  }
  std::vector<std::size_t> bs, bt, cs, ct;
  for (const auto& p : split.pairs) {
    bs.push_back(CountCodepoints(p.braille));
    bt.push_back(braille_tokens(p.braille));
    cs.push_back(CountCodepoints(p.chinese));
    ct.push_back(chinese_tokens(p.chinese));
  }
  SplitStats stats;
  stats.sample_count = split.pairs.size();
  stats.braille_string = Summarize(std::move(bs));
  stats.braille_token = Summarize(std::move(bt));
  stats.chinese_string = Summarize(std::move(cs));
  stats.chinese_token = Summarize(std::move(ct));
  return stats;
}

std::string RenderStatsTable(const std::array<DatasetSplit, 3>& splits,
                             const std::array<SplitStats, 3>& stats) {
  auto cell = [](const LengthSummary& s) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f/%.1f", s.mean, s.median);
    return std::string(buf);
  };
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-11s| %-9s| %-27s| %-27s\n", "",
                "# Sample", "Braille Len. (Mean/Median)",
                "Chinese Len. (Mean/Median)");
  out += line;
  std::snprintf(line, sizeof(line), "%-11s| %-9s| %-13s %-13s| %-13s %-13s\n",
                "", "", "String", "Token", "String", "Token");
  out += line;
  for (int s = 0; s < 3; ++s) {
    std::string name = splits[s].name;
    if (!name.empty()) name[0] = static_cast<char>(std::toupper(name[0]));
    std::snprintf(line, sizeof(line),
                  "%-11s| %-9zu| %-13s %-13s| %-13s %-13s\n", name.c_str(),
                  stats[s].sample_count, cell(stats[s].braille_string).c_str(),
                  cell(stats[s].braille_token).c_str(),
                  cell(stats[s].chinese_string).c_str(),
                  cell(stats[s].chinese_token).c_str());
    out += line;
  }
  return out;
}

namespace {

std::string SanitizeField(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

}  // namespace

std::string FormatTsv(const std::vector<ParallelPair>& pairs) {
  std::string out;
  for (const auto& p : pairs) {
    out += SanitizeField(p.braille);
    out += '\t';
    out += SanitizeField(p.chinese);
    out += '\n';
  }
  return out;
}

std::string FormatJsonl(const std::vector<ParallelPair>& pairs) {
  std::string out;
  for (const auto& p : pairs) {
    nlohmann::ordered_json record;
    record["braille"] = p.braille;
    record["text"] = p.chinese;
    record["idx"] = p.sentence_index;
    out += record.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

std::vector<ParallelPair> ParseTsv(std::string_view text,
                                   const std::string& source_name) {
  std::vector<ParallelPair> pairs;
  std::size_t line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    auto fields = SplitTabs(line);
    if (fields.size() != 2) {
      throw ParseError(source_name, line_no + 1, "expected braille<TAB>chinese");
    }
    pairs.push_back(
        {std::string(fields[0]), std::string(fields[1]), line_no});
    ++line_no;
  }
  return pairs;
}

}  // namespace zhbraille
