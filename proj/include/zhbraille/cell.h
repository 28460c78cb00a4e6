#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>

namespace zhbraille {

inline constexpr char32_t kBrailleBlockStart = 0x2800;
inline constexpr char32_t kBrailleBlockEnd = 0x283F;  // last six-dot pattern

// One six-dot braille pattern. Dot k (1..6) is bit k-1 of the value.
class BrailleCell {
 public:
  constexpr BrailleCell() = default;

  // Throws Error(kInvalidDot) for values above 63.
  static BrailleCell FromValue(unsigned value);

  constexpr std::uint8_t value() const { return value_; }
  constexpr bool has_dot(int dot) const {
    return dot >= 1 && dot <= 6 && (value_ >> (dot - 1)) & 1u;
  }
  constexpr char32_t codepoint() const { return kBrailleBlockStart + value_; }

  friend constexpr auto operator<=>(BrailleCell, BrailleCell) = default;

 private:
  constexpr explicit BrailleCell(std::uint8_t value) : value_(value) {}
  std::uint8_t value_ = 0;
};

inline constexpr int kCellCount = 64;

// Throws Error(kInvalidDot) when a dot is outside 1..6. Repeated dots are
// harmless.
BrailleCell EncodeCell(std::span<const int> dots);
BrailleCell EncodeCell(std::initializer_list<int> dots);

char32_t CellToChar(BrailleCell cell);

// Throws Error(kNotBraille) outside U+2800..U+283F.
BrailleCell CharToCell(char32_t c);

bool IsBrailleCellChar(char32_t c);

}  // namespace zhbraille
