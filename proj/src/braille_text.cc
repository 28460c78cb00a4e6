#include "zhbraille/braille_text.h"

#include "zhbraille/error.h"
#include "zhbraille/utf8.h"

namespace zhbraille {

std::vector<SyllableGroup> ParseBrailleSyllables(std::string_view braille,
                                                 const BrailleScheme& scheme) {
  const std::u32string text = DecodeUtf8(braille);
  std::vector<SyllableGroup> groups;
  std::size_t word_index = 0;
  bool word_open = false;
  // Current group: has an initial waiting for its final, or a final that may
  // still take a tone.
  enum class State { kIdle, kAfterInitial, kAfterFinal } state = State::kIdle;

  auto close_word = [&] {
    if (state == State::kAfterInitial) {
      throw MalformedSyllableError(groups.back().offset,
                                   "initial without a final");
    }
    state = State::kIdle;
    if (word_open) {
      ++word_index;
      word_open = false;
    }
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char32_t c = text[i];
    if (IsSpace(c)) {
      close_word();
      continue;
    }
    if (!IsBrailleCellChar(c)) {
      throw MalformedSyllableError(i, "not a braille cell");
    }
    BrailleCell cell = CharToCell(c);
    switch (scheme.role(cell)) {
      case CellRole::kInitial:
        if (state == State::kAfterInitial) {
          throw MalformedSyllableError(i, "two initials in a row");
        }
        groups.push_back({{cell}, word_index, i, false});
        word_open = true;
        state = State::kAfterInitial;
        break;
      case CellRole::kFinal:
        if (state == State::kAfterInitial) {
          groups.back().cells.push_back(cell);
        } else {
          groups.push_back({{cell}, word_index, i, false});
          word_open = true;
        }
        state = State::kAfterFinal;
        break;
      case CellRole::kTone:
        if (state != State::kAfterFinal) {
          throw MalformedSyllableError(i, "tone cell without a final");
        }
        groups.back().cells.push_back(cell);
        groups.back().has_tone = true;
        state = State::kIdle;
        break;
      case CellRole::kNone:
        throw MalformedSyllableError(i, "cell " + EncodeUtf8(c) +
                                            " is not in the scheme");
    }
  }
  close_word();
  return groups;
}

}  // namespace zhbraille
