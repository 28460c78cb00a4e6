#pragma once

#include <bitset>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zhbraille {

enum class Initial : std::uint8_t {
  kZero,
  kB, kP, kM, kF, kD, kT, kN, kL, kG, kK, kH,
  kJ, kQ, kX, kZh, kCh, kSh, kR, kZ, kC, kS,
};
inline constexpr int kInitialCount = 22;

// Finals in their underlying (pre-spelling-rule) form: kIu is iou, kUi is
// uei, kUn is uen, kV* are the u-umlaut finals.
enum class Final : std::uint8_t {
  kA, kO, kE, kI, kU, kV, kEr,
  kAi, kEi, kAo, kOu,
  kIa, kIe, kIao, kIu,
  kUa, kUo, kUai, kUi, kVe,
  kAn, kEn, kAng, kEng, kOng,
  kIan, kIn, kIang, kIng, kIong,
  kUan, kUn, kUang, kUeng, kVan, kVn,
};
inline constexpr int kFinalCount = 36;

inline constexpr int kNeutralTone = 5;

// Key used in scheme tables and diagnostics: "zh", "" for the zero initial.
std::string_view InitialKey(Initial initial);
// Scheme-table key: "iu", "ve", "van", ...
std::string_view FinalKey(Final final);
std::optional<Initial> InitialFromKey(std::string_view key);
std::optional<Final> FinalFromKey(std::string_view key);

struct PinyinSyllable {
  Initial initial = Initial::kZero;
  Final final = Final::kA;
  int tone = kNeutralTone;  // 1..4, 5 = neutral

  friend auto operator<=>(const PinyinSyllable&,
                          const PinyinSyllable&) = default;
};

// Parses tone-number pinyin such as "zhong1", "lv4", "lu:e4", "nüe4", "yuan2".
// A missing tone digit is neutral. Returns nullopt for anything that is not a
// well-formed Mandarin syllable.
std::optional<PinyinSyllable> ParsePinyin(std::string_view text);

// Splits the toneless part only; tone is left neutral.
std::optional<PinyinSyllable> ParsePinyinBase(std::string_view base);

// Standard orthography with tone digit: {kZero, kIu, 3} -> "you3".
std::string FormatPinyin(const PinyinSyllable& syllable);
std::string FormatPinyinBase(Initial initial, Final final);

// Set of (initial, final) pairs.
class SyllableInventory {
 public:
  SyllableInventory() = default;

  // The Mandarin syllable inventory (415 bases).
  static const SyllableInventory& Standard();

  void insert(Initial initial, Final final) { bits_.set(Index(initial, final)); }
  bool contains(Initial initial, Final final) const {
    return bits_.test(Index(initial, final));
  }
  bool contains_initial(Initial initial) const;
  bool contains_final(Final final) const;
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  struct Pair {
    Initial initial;
    Final final;
  };
  std::vector<Pair> pairs() const;

  friend bool operator==(const SyllableInventory&,
                         const SyllableInventory&) = default;

 private:
  static std::size_t Index(Initial initial, Final final) {
    return static_cast<std::size_t>(initial) * kFinalCount +
           static_cast<std::size_t>(final);
  }
  std::bitset<kInitialCount * kFinalCount> bits_;
};

}  // namespace zhbraille
