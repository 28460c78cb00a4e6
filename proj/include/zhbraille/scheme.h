#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zhbraille/cell.h"
#include "zhbraille/pinyin.h"

namespace zhbraille {

enum class CellRole { kNone, kInitial, kFinal, kTone };

// Initial/final/tone -> cell tables for a one-cell-per-component scheme.
//
// The zero initial never emits a cell and tone 5 has no entry. When a scheme
// has no row for j, q or x, those initials borrow the g, k and h cells; the
// two series never share a final, so the inventory keeps decoding unique.
class BrailleScheme {
 public:
  // Cell as listed in the table, without the palatal fallback.
  std::optional<BrailleCell> listed_initial_cell(Initial initial) const;
  // Cell actually emitted for the initial (nullopt for the zero initial).
  std::optional<BrailleCell> initial_cell(Initial initial) const;
  std::optional<BrailleCell> final_cell(Final final) const;
  std::optional<BrailleCell> tone_cell(int tone) const;

  CellRole role(BrailleCell cell) const { return roles_[cell.value()]; }

  // Initials whose emitted cell is `cell`.
  const std::vector<Initial>& initials_for(BrailleCell cell) const {
    return initials_by_cell_[cell.value()];
  }
  const std::vector<Final>& finals_for(BrailleCell cell) const {
    return finals_by_cell_[cell.value()];
  }
  std::optional<int> tone_for(BrailleCell cell) const;

  bool is_tone_cell(BrailleCell cell) const { return role(cell) == CellRole::kTone; }

  const SyllableInventory& inventory() const { return inventory_; }

  std::size_t initial_entries() const { return initial_entries_; }
  std::size_t final_entries() const { return final_entries_; }
  std::size_t tone_entries() const { return tone_entries_; }

 private:
  friend BrailleScheme LoadScheme(std::string_view, const SyllableInventory&,
                                  const std::string&);

  std::array<std::optional<BrailleCell>, kInitialCount> initials_{};
  std::array<std::optional<BrailleCell>, kFinalCount> finals_{};
  std::array<std::optional<BrailleCell>, 5> tones_{};  // index 1..4
  std::array<CellRole, kCellCount> roles_{};
  std::array<std::vector<Initial>, kCellCount> initials_by_cell_;
  std::array<std::vector<Final>, kCellCount> finals_by_cell_;
  SyllableInventory inventory_;
  std::size_t initial_entries_ = 0;
  std::size_t final_entries_ = 0;
  std::size_t tone_entries_ = 0;
};

// Parses a scheme table (see data/scheme/current_braille.tsv):
//
//   [initials]
//   b<TAB>⠃
//   [finals]
//   a<TAB>⠔
//   [tones]
//   1<TAB>⠁
//
// Every initial and final used by `inventory`, and tones 1..4, must have a
// cell. Throws ParseError for syntax, Error(kDuplicateEntry), Error(kInjectivity)
// for a shared initial or tone cell, Error(kRoleConflict) for a cell used in
// two sections, and Error(kIncompleteScheme).
BrailleScheme LoadScheme(
    std::string_view text,
    const SyllableInventory& inventory = SyllableInventory::Standard(),
    const std::string& source_name = "<scheme>");

BrailleScheme LoadSchemeFile(
    const std::string& path,
    const SyllableInventory& inventory = SyllableInventory::Standard());

// [initial cell if any] ++ [final cell] ++ [tone cell if include_tone and the
// tone is 1..4]. Throws Error(kIncompleteScheme) when a component has no cell.
std::vector<BrailleCell> SyllableToCells(const PinyinSyllable& syllable,
                                         const BrailleScheme& scheme,
                                         bool include_tone);

// Every inventory syllable whose encoding equals `cells`. Without a tone cell
// each (initial, final) match is returned with tones 1..5. Throws
// MalformedSyllableError when the cells do not follow (initial?)(final)(tone?).
std::vector<PinyinSyllable> CellsToSyllableCandidates(
    std::span<const BrailleCell> cells, const BrailleScheme& scheme);

}  // namespace zhbraille
