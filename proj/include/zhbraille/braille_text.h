#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "zhbraille/cell.h"
#include "zhbraille/scheme.h"

namespace zhbraille {

// One syllable's cells as read back from braille text.
struct SyllableGroup {
  std::vector<BrailleCell> cells;  // (initial?)(final)(tone?)
  std::size_t word_index = 0;
  std::size_t offset = 0;  // codepoint offset of the first cell
  bool has_tone = false;
};

// Greedy left-to-right grouping. Cells are classified by which scheme table
// they belong to; any run of whitespace ends a word. Throws
// MalformedSyllableError with the codepoint offset of the offending cell.
std::vector<SyllableGroup> ParseBrailleSyllables(std::string_view braille,
                                                 const BrailleScheme& scheme);

}  // namespace zhbraille
