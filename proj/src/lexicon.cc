#include "zhbraille/lexicon.h"

#include <algorithm>
#include <charconv>

#include "zhbraille/error.h"
#include "zhbraille/io.h"
#include "zhbraille/utf8.h"

namespace zhbraille {

Lexicon::HomophoneKey Lexicon::Key(Initial i, Final f, int tone) {
  return (static_cast<HomophoneKey>(i) << 16) |
         (static_cast<HomophoneKey>(f) << 8) | static_cast<HomophoneKey>(tone);
}

const std::vector<PinyinSyllable>* Lexicon::word_pronunciation(
    std::u32string_view word) const {
  auto it = word_pron_.find(std::u32string(word));
  return it == word_pron_.end() ? nullptr : &it->second.syllables;
}

bool Lexicon::contains_word(std::u32string_view word) const {
  if (word.size() == 1) return knows_character(word[0]);
  return word_pron_.count(std::u32string(word)) != 0;
}

const std::vector<Reading>& Lexicon::character_readings(char32_t c) const {
  static const std::vector<Reading> kNone;
  auto it = char_pron_.find(c);
  return it == char_pron_.end() ? kNone : it->second;
}

const std::vector<HomophoneEntry>& Lexicon::homophones(Initial initial,
                                                       Final final,
                                                       int tone) const {
  static const std::vector<HomophoneEntry> kNone;
  auto it = homophones_.find(Key(initial, final, tone));
  return it == homophones_.end() ? kNone : it->second;
}

void Lexicon::AddEntry(std::u32string word,
                       std::vector<PinyinSyllable> syllables,
                       std::uint64_t frequency) {
  for (const auto& s : syllables) inventory_.insert(s.initial, s.final);
  if (word.size() == 1) {
    auto& readings = char_pron_[word[0]];
    for (auto& r : readings) {
      if (r.syllable == syllables[0]) {
        r.frequency += frequency;
        return;
      }
    }
    readings.push_back({syllables[0], frequency});
    return;
  }
  max_word_length_ = std::max(max_word_length_, word.size());
  auto [it, inserted] = word_pron_.try_emplace(std::move(word));
  if (inserted || frequency > it->second.frequency) {
    it->second = {std::move(syllables), frequency};
  }
}

void Lexicon::Finalize() {
  homophones_.clear();
  for (auto& [c, readings] : char_pron_) {
    // Stable: equal frequencies keep file order.
    std::stable_sort(readings.begin(), readings.end(),
                     [](const Reading& a, const Reading& b) {
                       return a.frequency > b.frequency;
                     });
    for (const auto& r : readings) {
      homophones_[Key(r.syllable.initial, r.syllable.final, r.syllable.tone)]
          .push_back({c, r.frequency});
    }
  }
  for (auto& [key, entries] : homophones_) {
    std::sort(entries.begin(), entries.end(),
              [](const HomophoneEntry& a, const HomophoneEntry& b) {
                return a.character < b.character;
              });
  }
}

Lexicon LoadLexicon(std::string_view text, const std::string& source_name) {
  Lexicon lexicon;
  std::size_t line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    if (StripSpace(line).empty() || line.front() == '#') continue;
    auto fields = SplitTabs(line);
    if (fields.size() != 3) {
      throw ParseError(source_name, line_no,
                       "expected word<TAB>pinyin<TAB>frequency");
    }
    std::u32string word = DecodeUtf8(StripSpace(fields[0]));
    if (word.empty()) throw ParseError(source_name, line_no, "empty word");
    for (char32_t c : word) {
      if (!IsHanCharacter(c)) {
        throw ParseError(source_name, line_no,
                         "word contains a non-Han character");
      }
    }

    std::vector<PinyinSyllable> syllables;
    std::string_view pinyin = StripSpace(fields[1]);
    while (!pinyin.empty()) {
      auto space = pinyin.find(' ');
      auto token = pinyin.substr(0, space);
      pinyin.remove_prefix(space == std::string_view::npos ? pinyin.size()
                                                           : space + 1);
      if (token.empty()) continue;
      auto syllable = ParsePinyin(token);
      if (!syllable ||
          !SyllableInventory::Standard().contains(syllable->initial,
                                                  syllable->final)) {
        throw ParseError(source_name, line_no,
                         "invalid pinyin syllable '" + std::string(token) + "'");
      }
      syllables.push_back(*syllable);
    }
    if (syllables.size() != word.size()) {
      throw ParseError(source_name, line_no,
                       "word has " + std::to_string(word.size()) +
                           " characters but " +
                           std::to_string(syllables.size()) + " syllables");
    }

    std::string_view freq_text = StripSpace(fields[2]);
    std::uint64_t frequency = 0;
    auto [end, ec] = std::from_chars(
        freq_text.data(), freq_text.data() + freq_text.size(), frequency);
    if (ec != std::errc() || end != freq_text.data() + freq_text.size()) {
      throw ParseError(source_name, line_no,
                       "frequency must be a non-negative integer");
    }
    lexicon.AddEntry(std::move(word), std::move(syllables), frequency);
  }
  lexicon.Finalize();
  return lexicon;
}

Lexicon LoadLexiconFile(const std::string& path) {
  return LoadLexicon(ReadTextFile(path), path);
}

}  // namespace zhbraille
