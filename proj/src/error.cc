#include "zhbraille/error.h"

#include <cstdio>

#include "zhbraille/utf8.h"

namespace zhbraille {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidDot: return "invalid-dot";
    case ErrorKind::kNotBraille: return "not-braille";
    case ErrorKind::kDuplicateEntry: return "duplicate-entry";
    case ErrorKind::kInjectivity: return "injectivity";
    case ErrorKind::kRoleConflict: return "role-conflict";
    case ErrorKind::kIncompleteScheme: return "incomplete-scheme";
    case ErrorKind::kMalformedSyllable: return "malformed-syllable";
    case ErrorKind::kUnknownCharacter: return "unknown-character";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kInsufficientData: return "insufficient-data";
    case ErrorKind::kEmptySplit: return "empty-split";
    case ErrorKind::kUndecodablePosition: return "undecodable-position";
    case ErrorKind::kPairedInput: return "paired-input";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

namespace {

std::string UnknownCharacterMessage(char32_t c, std::size_t offset) {
  char code[16];
  std::snprintf(code, sizeof(code), "U+%04X", static_cast<unsigned>(c));
  return "unknown character '" + EncodeUtf8(c) + "' (" + code + ") at offset " +
         std::to_string(offset);
}

std::string PositionList(const std::vector<std::size_t>& positions) {
  std::string out;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(positions[i]);
  }
  return out;
}

}  // namespace

UnknownCharacterError::UnknownCharacterError(char32_t character,
                                             std::size_t offset)
    : Error(ErrorKind::kUnknownCharacter,
            UnknownCharacterMessage(character, offset)),
      character_(character),
      offset_(offset) {}

MalformedSyllableError::MalformedSyllableError(std::size_t offset,
                                               const std::string& detail)
    : Error(ErrorKind::kMalformedSyllable,
            "malformed syllable at offset " + std::to_string(offset) + ": " +
                detail),
      offset_(offset) {}

UndecodablePositionError::UndecodablePositionError(
    std::vector<std::size_t> positions)
    : Error(ErrorKind::kUndecodablePosition,
            "no candidate characters at position(s) " + PositionList(positions)),
      positions_(std::move(positions)) {}

ParseError::ParseError(std::string source, std::size_t line,
                       const std::string& detail)
    : Error(ErrorKind::kParse,
            source + ":" + std::to_string(line) + ": " + detail),
      source_(std::move(source)),
      line_(line) {}

}  // namespace zhbraille
