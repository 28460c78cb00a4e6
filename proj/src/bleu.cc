#include "zhbraille/bleu.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "zhbraille/error.h"
#include "zhbraille/io.h"
#include "zhbraille/utf8.h"

namespace zhbraille {

namespace {

bool IsSingleToken(char32_t c) {
  return IsHanCharacter(c) || (c >= 0x3000 && c <= 0x303F) ||
         (c >= 0xFF00 && c <= 0xFFEF);
}

using NgramCounts = std::map<std::vector<std::string_view>, std::size_t>;

NgramCounts CountNgrams(const TokenSequence& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::vector<std::string_view> key(tokens.begin() + i,
                                      tokens.begin() + i + n);
    ++counts[std::move(key)];
  }
  return counts;
}

std::size_t ClippedMatches(const TokenSequence& candidate,
                           const TokenSequence& reference, std::size_t n) {
  NgramCounts ref = CountNgrams(reference, n);
  std::size_t matches = 0;
  for (const auto& [gram, count] : CountNgrams(candidate, n)) {
    auto it = ref.find(gram);
    if (it != ref.end()) matches += std::min(count, it->second);
  }
  return matches;
}

}  // namespace

TokenSequence TokenizeChinese(std::string_view text) {
  TokenSequence tokens;
  std::string run;
  auto flush = [&] {
    if (!run.empty()) tokens.push_back(std::move(run));
    run.clear();
  };
  for (char32_t c : DecodeUtf8(text)) {
    if (IsSpace(c)) {
      flush();
    } else if (IsSingleToken(c)) {
      flush();
      tokens.push_back(EncodeUtf8(c));
    } else {
      AppendUtf8(run, c);
    }
  }
  flush();
  return tokens;
}

BleuReport CorpusBleu(const std::vector<TokenSequence>& candidates,
                      const std::vector<TokenSequence>& references,
                      int max_n) {
  if (candidates.size() != references.size()) {
    throw Error(ErrorKind::kPairedInput,
                std::to_string(candidates.size()) + " candidates vs " +
                    std::to_string(references.size()) + " references");
  }
  if (candidates.empty()) {
    throw Error(ErrorKind::kPairedInput, "BLEU needs at least one pair");
  }
  if (max_n < 1) throw Error(ErrorKind::kParse, "max n-gram order must be >= 1");

  BleuReport report;
  report.max_n = max_n;
  report.matches.assign(static_cast<std::size_t>(max_n), 0);
  report.totals.assign(static_cast<std::size_t>(max_n), 0);
  for (std::size_t s = 0; s < candidates.size(); ++s) {
    report.candidate_length += candidates[s].size();
    report.reference_length += references[s].size();
    for (std::size_t n = 1; n <= static_cast<std::size_t>(max_n); ++n) {
      report.matches[n - 1] += ClippedMatches(candidates[s], references[s], n);
      if (candidates[s].size() >= n) {
        report.totals[n - 1] += candidates[s].size() + 1 - n;
      }
    }
  }

  double log_sum = 0;
  int orders = 0;
  bool zero = false;
  for (int n = 0; n < max_n; ++n) {
    if (report.totals[n] == 0) {
      report.precisions.push_back(0.0);
      continue;
    }
    double p = static_cast<double>(report.matches[n]) /
               static_cast<double>(report.totals[n]);
    report.precisions.push_back(p);
    if (report.matches[n] == 0) {
      zero = true;
    } else {
      log_sum += std::log(p);
    }
    ++orders;
  }

  const double c = static_cast<double>(report.candidate_length);
  const double r = static_cast<double>(report.reference_length);
  report.brevity_penalty = c < r ? (c == 0 ? 0.0 : std::exp(1.0 - r / c)) : 1.0;
  if (zero || orders == 0) {
    report.score = 0.0;
  } else {
    report.score = 100.0 * report.brevity_penalty * std::exp(log_sum / orders);
  }
  return report;
}

double SmoothedSentenceBleu(const TokenSequence& candidate,
                            const TokenSequence& reference, int max_n) {
  if (candidate.empty()) return 0.0;
  double log_sum = 0;
  for (std::size_t n = 1; n <= static_cast<std::size_t>(max_n); ++n) {
    double matches = static_cast<double>(ClippedMatches(candidate, reference, n));
    double total = candidate.size() >= n
                       ? static_cast<double>(candidate.size() + 1 - n)
                       : 0.0;
    if (n >= 2) {
      matches += 1;
      total += 1;
    }
    if (matches == 0 || total == 0) return 0.0;
    log_sum += std::log(matches / total);
  }
  const double c = static_cast<double>(candidate.size());
  const double r = static_cast<double>(reference.size());
  const double bp = c < r ? std::exp(1.0 - r / c) : 1.0;
  return 100.0 * bp * std::exp(log_sum / max_n);
}

SplitEvaluation EvaluateSplit(std::string_view hypotheses,
                              std::string_view references, int max_n) {
  auto hyp_lines = SplitLines(hypotheses);
  auto ref_lines = SplitLines(references);
  if (hyp_lines.size() != ref_lines.size()) {
    throw Error(ErrorKind::kPairedInput,
                "hypotheses have " + std::to_string(hyp_lines.size()) +
                    " lines, references " + std::to_string(ref_lines.size()));
  }
  std::vector<TokenSequence> hyps, refs;
  for (auto line : hyp_lines) hyps.push_back(TokenizeChinese(line));
  for (auto line : ref_lines) refs.push_back(TokenizeChinese(line));
  SplitEvaluation eval;
  eval.corpus = CorpusBleu(hyps, refs, max_n);
  eval.sentence_scores.reserve(hyps.size());
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    eval.sentence_scores.push_back(SmoothedSentenceBleu(hyps[i], refs[i], max_n));
  }
  return eval;
}

std::string FormatBleuReport(const BleuReport& report) {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "BLEU = %.2f, ", report.score);
  out += buf;
  for (std::size_t n = 0; n < report.precisions.size(); ++n) {
    std::snprintf(buf, sizeof(buf), "%s%.1f", n ? "/" : "",
                  100.0 * report.precisions[n]);
    out += buf;
  }
  const double ratio =
      report.reference_length == 0
          ? 0.0
          : static_cast<double>(report.candidate_length) /
                static_cast<double>(report.reference_length);
  std::snprintf(buf, sizeof(buf),
                " (BP=%.3f, ratio=%.3f, hyp_len=%zu, ref_len=%zu)",
                report.brevity_penalty, ratio, report.candidate_length,
                report.reference_length);
  out += buf;
  return out;
}

}  // namespace zhbraille
