#include "zhbraille/transcoder.h"

#include <cstdio>
#include <cstdlib>

#include "zhbraille/braille_text.h"
#include "zhbraille/error.h"
#include "zhbraille/random.h"
#include "zhbraille/utf8.h"

namespace zhbraille {

TonePolicy::TonePolicy(double retain_probability, std::uint64_t seed)
    : retain_probability_(retain_probability), seed_(seed) {
  if (!(retain_probability >= 0.0 && retain_probability <= 1.0)) {
    throw Error(ErrorKind::kParse, "tone retention probability must be in [0, 1]");
  }
}

TonePolicy TonePolicy::Parse(std::string_view text, std::uint64_t seed) {
  if (text == "full") return FullTone(seed);
  if (text == "none") return NoTone(seed);
  if (text == "ten") return TenPercent(seed);
  if (text.starts_with("p=")) {
    // from_chars for double is missing from older libstdc++.
    std::string value(text.substr(2));
    char* end = nullptr;
    double p = std::strtod(value.c_str(), &end);
    if (!value.empty() && end == value.c_str() + value.size()) {
      return TonePolicy(p, seed);
    }
  }
  throw Error(ErrorKind::kParse, "unknown tone policy '" + std::string(text) +
                                     "' (expected full, none or p=<prob>)");
}

double TonePolicy::Draw(std::uint64_t sentence_index,
                        std::uint64_t syllable_index) const {
  return ToUnitInterval(CounterHash(seed_, sentence_index, syllable_index));
}

std::string TonePolicy::name() const {
  if (retain_probability_ == 1.0) return "full";
  if (retain_probability_ == 0.0) return "none";
  // Shortest form that parses back to the same double.
  char buf[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, retain_probability_);
    if (std::strtod(buf, nullptr) == retain_probability_) break;
  }
  return std::string("p=") + buf;
}

std::vector<std::u32string> Segment(std::u32string_view text,
                                    const Lexicon& lexicon) {
  std::u32string compact;
  compact.reserve(text.size());
  for (char32_t c : text) {
    if (!IsSpace(c)) compact.push_back(c);
  }
  std::vector<std::u32string> words;
  std::size_t pos = 0;
  const std::size_t longest = lexicon.max_word_length();
  while (pos < compact.size()) {
    std::size_t len = std::min(longest, compact.size() - pos);
    for (; len > 1; --len) {
      if (lexicon.contains_word(std::u32string_view(compact).substr(pos, len))) {
        break;
      }
    }
    words.push_back(compact.substr(pos, len));
    pos += len;
  }
  return words;
}

std::vector<PinyinSyllable> AnnotatePinyin(std::u32string_view word,
                                           const Lexicon& lexicon) {
  if (word.size() > 1) {
    if (const auto* syllables = lexicon.word_pronunciation(word)) {
      return *syllables;
    }
  }
  std::vector<PinyinSyllable> out;
  out.reserve(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) {
    const auto& readings = lexicon.character_readings(word[i]);
    if (readings.empty()) throw UnknownCharacterError(word[i], i);
    out.push_back(readings.front().syllable);
  }
  return out;
}

std::size_t Transcription::retained_tones() const {
  std::size_t n = 0;
  for (const auto& s : syllables) n += s.tone_emitted ? 1 : 0;
  return n;
}

Transcription TranscodeSentence(std::string_view text,
                                const BrailleScheme& scheme,
                                const Lexicon& lexicon,
                                const TonePolicy& policy,
                                std::uint64_t sentence_index) {
  const std::u32string source = DecodeUtf8(text);
  Transcription result;
  std::uint64_t syllable_index = 0;

  auto emit_run = [&](std::size_t begin, std::size_t end) {
    if (begin == end) return;
    std::size_t word_start = begin;
    for (auto& word :
         Segment(std::u32string_view(source).substr(begin, end - begin),
                 lexicon)) {
      std::vector<PinyinSyllable> syllables;
      try {
        syllables = AnnotatePinyin(word, lexicon);
      } catch (const UnknownCharacterError& e) {
        throw UnknownCharacterError(e.character(), word_start + e.offset());
      }
      if (!result.braille.empty()) result.braille.push_back(' ');
      for (const auto& syllable : syllables) {
        bool keep = syllable.tone != kNeutralTone &&
                    policy.Retain(sentence_index, syllable_index);
        for (BrailleCell cell : SyllableToCells(syllable, scheme, keep)) {
          AppendUtf8(result.braille, cell.codepoint());
        }
        result.syllables.push_back({syllable, keep});
        ++syllable_index;
      }
      word_start += word.size();
      result.words.push_back(std::move(word));
    }
  };

  std::size_t run_begin = 0;
  for (std::size_t i = 0; i <= source.size(); ++i) {
    if (i < source.size() && IsHanCharacter(source[i])) continue;
    emit_run(run_begin, i);
    if (i < source.size() && !IsSpace(source[i])) ++result.dropped_characters;
    run_begin = i + 1;
  }
  return result;
}

ToneCount CountRetainedTones(std::string_view braille,
                             const BrailleScheme& scheme) {
  ToneCount count;
  for (const auto& group : ParseBrailleSyllables(braille, scheme)) {
    ++count.total_syllables;
    if (group.has_tone) ++count.retained;
  }
  return count;
}

}  // namespace zhbraille
