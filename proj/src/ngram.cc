#include "zhbraille/ngram.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <set>

#include "zhbraille/error.h"
#include "zhbraille/io.h"
#include "zhbraille/utf8.h"

namespace zhbraille {

namespace {

void AppendSymbol(std::string& out, Symbol s) {
  if (s == kBeginSymbol) {
    out += "<s>";
  } else if (s == kEndSymbol) {
    out += "</s>";
  } else if (s <= 0x20 || s == U'\\' || s == U'<' || s == 0x7F || IsSpace(s)) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "\\u%04X", static_cast<unsigned>(s));
    out += buf;
  } else {
    AppendUtf8(out, s);
  }
}

std::optional<Symbol> ParseSymbol(std::string_view token) {
  if (token == "<s>") return kBeginSymbol;
  if (token == "</s>") return kEndSymbol;
  if (token.starts_with("\\u")) {
    unsigned value = 0;
    auto [end, ec] = std::from_chars(token.data() + 2,
                                     token.data() + token.size(), value, 16);
    if (ec != std::errc() || end != token.data() + token.size()) {
      return std::nullopt;
    }
    return static_cast<Symbol>(value);
  }
  auto decoded = DecodeUtf8(token);
  if (decoded.size() != 1) return std::nullopt;
  return decoded[0];
}

}  // namespace

NgramModel TrainNgram(const std::vector<std::u32string>& sentences, int order,
                      double k) {
  if (order < 1 || order > 3) {
    throw Error(ErrorKind::kParse, "n-gram order must be 1, 2 or 3");
  }
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw Error(ErrorKind::kParse, "smoothing constant k must be positive");
  }
  if (sentences.empty()) {
    throw Error(ErrorKind::kInsufficientData, "cannot train on an empty corpus");
  }
  NgramModel model;
  model.order_ = order;
  model.k_ = k;
  std::set<Symbol> vocabulary;
  for (const auto& sentence : sentences) {
    std::u32string padded(static_cast<std::size_t>(order - 1), kBeginSymbol);
    padded += sentence;
    padded.push_back(kEndSymbol);
    for (std::size_t i = static_cast<std::size_t>(order - 1); i < padded.size();
         ++i) {
      vocabulary.insert(padded[i]);
      model.AddCount(padded.substr(i + 1 - static_cast<std::size_t>(order),
                                   static_cast<std::size_t>(order)),
                     1);
    }
  }
  model.vocabulary_size_ = vocabulary.size();
  return model;
}

void NgramModel::AddCount(std::u32string ngram, std::uint64_t count) {
  context_counts_[ngram.substr(0, ngram.size() - 1)] += count;
  ngram_counts_[std::move(ngram)] += count;
}

std::u32string NgramModel::ContextKey(std::u32string_view context) const {
  const std::size_t need = static_cast<std::size_t>(order_ - 1);
  std::u32string key;
  key.reserve(need);
  if (context.size() >= need) {
    key.assign(context.substr(context.size() - need));
  } else {
    key.assign(need - context.size(), kBeginSymbol);
    key.append(context);
  }
  return key;
}

double NgramModel::Probability(std::u32string_view context, Symbol next) const {
  std::u32string key = ContextKey(context);
  auto ctx_it = context_counts_.find(key);
  const double ctx_count =
      ctx_it == context_counts_.end() ? 0.0 : static_cast<double>(ctx_it->second);
  key.push_back(next);
  auto it = ngram_counts_.find(key);
  const double count =
      it == ngram_counts_.end() ? 0.0 : static_cast<double>(it->second);
  return (count + k_) /
         (ctx_count + k_ * static_cast<double>(vocabulary_size_));
}

double NgramModel::LogProbability(std::u32string_view context,
                                  Symbol next) const {
  return std::log(Probability(context, next));
}

std::uint64_t NgramModel::NgramCount(std::u32string_view ngram) const {
  auto it = ngram_counts_.find(std::u32string(ngram));
  return it == ngram_counts_.end() ? 0 : it->second;
}

std::uint64_t NgramModel::ContextCount(std::u32string_view context) const {
  auto it = context_counts_.find(std::u32string(context));
  return it == context_counts_.end() ? 0 : it->second;
}

double NgramModel::Perplexity(const std::vector<std::u32string>& sentences) const {
  double log_sum = 0;
  std::size_t tokens = 0;
  for (const auto& sentence : sentences) {
    std::u32string history;
    for (Symbol c : sentence) {
      log_sum += LogProbability(history, c);
      history.push_back(c);
      ++tokens;
    }
    log_sum += LogProbability(history, kEndSymbol);
    ++tokens;
  }
  return tokens == 0 ? 1.0 : std::exp(-log_sum / static_cast<double>(tokens));
}

std::string NgramModel::Serialize() const {
  std::vector<const std::pair<const std::u32string, std::uint64_t>*> entries;
  entries.reserve(ngram_counts_.size());
  for (const auto& entry : ngram_counts_) entries.push_back(&entry);
  std::sort(entries.begin(), entries.end(),
            [](auto* a, auto* b) { return a->first < b->first; });

  std::string out(kNgramFormatHeader);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "\norder %d\nk %.17g\nvocabulary %zu\n",
                order_, k_, vocabulary_size_);
  out += buf;
  for (const auto* entry : entries) {
    for (std::size_t i = 0; i < entry->first.size(); ++i) {
      if (i) out.push_back(' ');
      AppendSymbol(out, entry->first[i]);
    }
    out.push_back('\t');
    out += std::to_string(entry->second);
    out.push_back('\n');
  }
  return out;
}

NgramModel NgramModel::Deserialize(std::string_view text,
                                   const std::string& source_name) {
  auto lines = SplitLines(text);
  if (lines.size() < 4 || lines[0] != kNgramFormatHeader) {
    throw ParseError(source_name, 1,
                     "expected header '" + std::string(kNgramFormatHeader) + "'");
  }
  NgramModel model;
  auto field = [&](std::size_t index, std::string_view name) -> std::string {
    std::string_view line = lines[index];
    if (!line.starts_with(name) || line.size() <= name.size() ||
        line[name.size()] != ' ') {
      throw ParseError(source_name, index + 1,
                       "expected '" + std::string(name) + " <value>'");
    }
    return std::string(line.substr(name.size() + 1));
  };
  std::string order = field(1, "order");
  std::string k = field(2, "k");
  std::string vocabulary = field(3, "vocabulary");
  char* end = nullptr;
  model.order_ = static_cast<int>(std::strtol(order.c_str(), &end, 10));
  if (*end || model.order_ < 1 || model.order_ > 3) {
    throw ParseError(source_name, 2, "order must be 1, 2 or 3");
  }
  model.k_ = std::strtod(k.c_str(), &end);
  if (*end || !(model.k_ > 0.0)) {
    throw ParseError(source_name, 3, "k must be positive");
  }
  model.vocabulary_size_ =
      static_cast<std::size_t>(std::strtoull(vocabulary.c_str(), &end, 10));
  if (*end) throw ParseError(source_name, 4, "bad vocabulary size");

  std::set<Symbol> predicted;
  for (std::size_t i = 4; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (line.empty()) continue;
    auto fields = SplitTabs(line);
    if (fields.size() != 2) {
      throw ParseError(source_name, i + 1, "expected symbols<TAB>count");
    }
    std::u32string ngram;
    std::string_view symbols = fields[0];
    while (!symbols.empty()) {
      auto space = symbols.find(' ');
      auto token = symbols.substr(0, space);
      symbols.remove_prefix(space == std::string_view::npos ? symbols.size()
                                                            : space + 1);
      auto symbol = ParseSymbol(token);
      if (!symbol) {
        throw ParseError(source_name, i + 1,
                         "bad symbol '" + std::string(token) + "'");
      }
      ngram.push_back(*symbol);
    }
    std::uint64_t count = 0;
    auto [ptr, ec] = std::from_chars(
        fields[1].data(), fields[1].data() + fields[1].size(), count);
    if (ec != std::errc() || ptr != fields[1].data() + fields[1].size() ||
        count == 0 || ngram.size() != static_cast<std::size_t>(model.order_)) {
      throw ParseError(source_name, i + 1, "bad n-gram entry");
    }
    predicted.insert(ngram.back());
    model.AddCount(std::move(ngram), count);
  }
  if (predicted.size() != model.vocabulary_size_) {
    throw ParseError(source_name, 4,
                     "vocabulary size does not match the stored n-grams");
  }
  return model;
}

}  // namespace zhbraille
