#include "zhbraille/scheme.h"

#include <algorithm>

#include "zhbraille/error.h"
#include "zhbraille/io.h"
#include "zhbraille/utf8.h"

namespace zhbraille {

namespace {

enum class Section { kNone, kInitials, kFinals, kTones };

std::optional<Initial> PalatalFallback(Initial initial) {
  switch (initial) {
    case Initial::kJ: return Initial::kG;
    case Initial::kQ: return Initial::kK;
    case Initial::kX: return Initial::kH;
    default: return std::nullopt;
  }
}

const char* RoleName(CellRole role) {
  switch (role) {
    case CellRole::kInitial: return "initials";
    case CellRole::kFinal: return "finals";
    case CellRole::kTone: return "tones";
    case CellRole::kNone: break;
  }
  return "none";
}

}  // namespace

std::optional<BrailleCell> BrailleScheme::listed_initial_cell(
    Initial initial) const {
  return initials_[static_cast<std::size_t>(initial)];
}

std::optional<BrailleCell> BrailleScheme::initial_cell(Initial initial) const {
  if (initial == Initial::kZero) return std::nullopt;
  if (auto cell = listed_initial_cell(initial)) return cell;
  if (auto fallback = PalatalFallback(initial)) {
    return listed_initial_cell(*fallback);
  }
  return std::nullopt;
}

std::optional<BrailleCell> BrailleScheme::final_cell(Final final) const {
  return finals_[static_cast<std::size_t>(final)];
}

std::optional<BrailleCell> BrailleScheme::tone_cell(int tone) const {
  if (tone < 1 || tone > 4) return std::nullopt;
  return tones_[tone];
}

std::optional<int> BrailleScheme::tone_for(BrailleCell cell) const {
  for (int t = 1; t <= 4; ++t) {
    if (tones_[t] == cell) return t;
  }
  return std::nullopt;
}

BrailleScheme LoadScheme(std::string_view text,
                         const SyllableInventory& inventory,
                         const std::string& source_name) {
  BrailleScheme scheme;
  scheme.inventory_ = inventory;
  Section section = Section::kNone;
  std::size_t line_no = 0;

  for (std::string_view raw : SplitLines(text)) {
    ++line_no;
    std::string_view line = StripSpace(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line == "[initials]") {
        section = Section::kInitials;
      } else if (line == "[finals]") {
        section = Section::kFinals;
      } else if (line == "[tones]") {
        section = Section::kTones;
      } else {
        throw ParseError(source_name, line_no,
                         "unknown section " + std::string(line));
      }
      continue;
    }
    if (section == Section::kNone) {
      throw ParseError(source_name, line_no, "row before any section header");
    }

    auto fields = SplitTabs(line);
    if (fields.size() < 2 ||
        (fields.size() > 2 && !StripSpace(fields[2]).starts_with("#"))) {
      throw ParseError(source_name, line_no, "expected key<TAB>braille-cell");
    }
    std::string key(StripSpace(fields[0]));
    std::u32string glyph = DecodeUtf8(StripSpace(fields[1]));
    if (glyph.size() != 1 || !IsBrailleCellChar(glyph[0])) {
      throw ParseError(source_name, line_no,
                       "'" + std::string(fields[1]) +
                           "' is not a single braille cell U+2800..U+283F");
    }
    BrailleCell cell = CharToCell(glyph[0]);

    CellRole role = CellRole::kNone;
    std::optional<BrailleCell>* slot = nullptr;
    bool injective = false;
    switch (section) {
      case Section::kInitials: {
        auto initial = InitialFromKey(key);
        if (!initial) {
          throw ParseError(source_name, line_no, "unknown initial '" + key + "'");
        }
        slot = &scheme.initials_[static_cast<std::size_t>(*initial)];
        role = CellRole::kInitial;
        injective = true;
        break;
      }
      case Section::kFinals: {
        auto final = FinalFromKey(key);
        if (!final) {
          throw ParseError(source_name, line_no, "unknown final '" + key + "'");
        }
        slot = &scheme.finals_[static_cast<std::size_t>(*final)];
        role = CellRole::kFinal;
        break;
      }
      case Section::kTones: {
        if (key.size() != 1 || key[0] < '1' || key[0] > '4') {
          throw ParseError(source_name, line_no,
                           "tone key must be 1..4, got '" + key + "'");
        }
        slot = &scheme.tones_[key[0] - '0'];
        role = CellRole::kTone;
        injective = true;
        break;
      }
      case Section::kNone:
        break;
    }

    if (slot->has_value()) {
      throw Error(ErrorKind::kDuplicateEntry,
                  source_name + ":" + std::to_string(line_no) +
                      ": duplicate entry for '" + key + "' in [" +
                      RoleName(role) + "]");
    }
    CellRole existing = scheme.roles_[cell.value()];
    if (existing == role && injective) {
      throw Error(ErrorKind::kInjectivity,
                  source_name + ":" + std::to_string(line_no) + ": cell " +
                      EncodeUtf8(cell.codepoint()) + " already used in [" +
                      RoleName(role) + "]");
    }
    if (existing != CellRole::kNone && existing != role) {
      throw Error(ErrorKind::kRoleConflict,
                  source_name + ":" + std::to_string(line_no) + ": cell " +
                      EncodeUtf8(cell.codepoint()) + " is already used in [" +
                      RoleName(existing) + "]");
    }
    *slot = cell;
    scheme.roles_[cell.value()] = role;
    switch (role) {
      case CellRole::kInitial: ++scheme.initial_entries_; break;
      case CellRole::kFinal: ++scheme.final_entries_; break;
      case CellRole::kTone: ++scheme.tone_entries_; break;
      case CellRole::kNone: break;
    }
  }

  std::vector<std::string> missing;
  for (int i = 1; i < kInitialCount; ++i) {
    auto initial = static_cast<Initial>(i);
    if (inventory.contains_initial(initial) && !scheme.initial_cell(initial)) {
      missing.push_back("initial '" + std::string(InitialKey(initial)) + "'");
    }
  }
  for (int f = 0; f < kFinalCount; ++f) {
    auto final = static_cast<Final>(f);
    if (inventory.contains_final(final) && !scheme.final_cell(final)) {
      missing.push_back("final '" + std::string(FinalKey(final)) + "'");
    }
  }
  for (int t = 1; t <= 4; ++t) {
    if (!scheme.tones_[t]) missing.push_back("tone " + std::to_string(t));
  }
  if (!missing.empty()) {
    std::string message = source_name + ": scheme has no cell for ";
    for (std::size_t i = 0; i < missing.size(); ++i) {
      if (i) message += ", ";
      message += missing[i];
    }
    throw Error(ErrorKind::kIncompleteScheme, message);
  }

  for (int i = 1; i < kInitialCount; ++i) {
    auto initial = static_cast<Initial>(i);
    if (auto cell = scheme.initial_cell(initial)) {
      scheme.initials_by_cell_[cell->value()].push_back(initial);
    }
  }
  for (int f = 0; f < kFinalCount; ++f) {
    auto final = static_cast<Final>(f);
    if (auto cell = scheme.final_cell(final)) {
      scheme.finals_by_cell_[cell->value()].push_back(final);
    }
  }
  return scheme;
}

BrailleScheme LoadSchemeFile(const std::string& path,
                             const SyllableInventory& inventory) {
  return LoadScheme(ReadTextFile(path), inventory, path);
}

std::vector<BrailleCell> SyllableToCells(const PinyinSyllable& syllable,
                                         const BrailleScheme& scheme,
                                         bool include_tone) {
  std::vector<BrailleCell> cells;
  cells.reserve(3);
  if (syllable.initial != Initial::kZero) {
    auto cell = scheme.initial_cell(syllable.initial);
    if (!cell) {
      throw Error(ErrorKind::kIncompleteScheme,
                  "no cell for initial '" +
                      std::string(InitialKey(syllable.initial)) + "'");
    }
    cells.push_back(*cell);
  }
  auto final = scheme.final_cell(syllable.final);
  if (!final) {
    throw Error(ErrorKind::kIncompleteScheme,
                "no cell for final '" + std::string(FinalKey(syllable.final)) +
                    "'");
  }
  cells.push_back(*final);
  if (include_tone && syllable.tone >= 1 && syllable.tone <= 4) {
    auto tone = scheme.tone_cell(syllable.tone);
    if (!tone) {
      throw Error(ErrorKind::kIncompleteScheme,
                  "no cell for tone " + std::to_string(syllable.tone));
    }
    cells.push_back(*tone);
  }
  return cells;
}

std::vector<PinyinSyllable> CellsToSyllableCandidates(
    std::span<const BrailleCell> cells, const BrailleScheme& scheme) {
  if (cells.empty() || cells.size() > 3) {
    throw MalformedSyllableError(
        0, "a syllable has 1 to 3 cells, got " + std::to_string(cells.size()));
  }
  static const std::vector<Initial> kZeroOnly = {Initial::kZero};
  std::size_t pos = 0;
  const std::vector<Initial>* initials = &kZeroOnly;
  if (scheme.role(cells[pos]) == CellRole::kInitial) {
    initials = &scheme.initials_for(cells[pos]);
    ++pos;
  }
  if (pos >= cells.size() || scheme.role(cells[pos]) != CellRole::kFinal) {
    throw MalformedSyllableError(pos, "expected a final cell");
  }
  const auto& finals = scheme.finals_for(cells[pos]);
  ++pos;
  std::optional<int> tone;
  if (pos < cells.size()) {
    tone = scheme.tone_for(cells[pos]);
    if (!tone) throw MalformedSyllableError(pos, "expected a tone cell");
    ++pos;
  }
  if (pos != cells.size()) {
    throw MalformedSyllableError(pos, "trailing cells after the tone");
  }

  std::vector<PinyinSyllable> out;
  for (Initial i : *initials) {
    for (Final f : finals) {
      if (!scheme.inventory().contains(i, f)) continue;
      if (tone) {
        out.push_back({i, f, *tone});
      } else {
        for (int t = 1; t <= kNeutralTone; ++t) out.push_back({i, f, t});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace zhbraille
