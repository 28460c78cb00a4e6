#include "zhbraille/cell.h"

#include <cstdio>
#include <string>

#include "zhbraille/error.h"

namespace zhbraille {

BrailleCell BrailleCell::FromValue(unsigned value) {
  if (value >= kCellCount) {
    throw Error(ErrorKind::kInvalidDot,
                "cell value " + std::to_string(value) + " exceeds six dots");
  }
  return BrailleCell(static_cast<std::uint8_t>(value));
}

BrailleCell EncodeCell(std::span<const int> dots) {
  unsigned value = 0;
  for (int dot : dots) {
    if (dot < 1 || dot > 6) {
      throw Error(ErrorKind::kInvalidDot,
                  "dot " + std::to_string(dot) + " is outside 1..6");
    }
    value |= 1u << (dot - 1);
  }
  return BrailleCell::FromValue(value);
}

BrailleCell EncodeCell(std::initializer_list<int> dots) {
  return EncodeCell(std::span<const int>(dots.begin(), dots.size()));
}

char32_t CellToChar(BrailleCell cell) { return cell.codepoint(); }

bool IsBrailleCellChar(char32_t c) {
  return c >= kBrailleBlockStart && c <= kBrailleBlockEnd;
}

BrailleCell CharToCell(char32_t c) {
  if (!IsBrailleCellChar(c)) {
    char code[16];
    std::snprintf(code, sizeof(code), "U+%04X", static_cast<unsigned>(c));
    throw Error(ErrorKind::kNotBraille,
                std::string(code) + " is not a six-dot braille pattern");
  }
  return BrailleCell::FromValue(c - kBrailleBlockStart);
}

}  // namespace zhbraille
