#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace zhbraille {

enum class ErrorKind {
  kInvalidDot,
  kNotBraille,
  kDuplicateEntry,
  kInjectivity,
  kRoleConflict,
  kIncompleteScheme,
  kMalformedSyllable,
  kUnknownCharacter,
  kParse,
  kInsufficientData,
  kEmptySplit,
  kUndecodablePosition,
  kPairedInput,
  kIo,
};

const char* ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Character absent from both the word and the character pronunciation tables.
class UnknownCharacterError : public Error {
 public:
  UnknownCharacterError(char32_t character, std::size_t offset);
  char32_t character() const { return character_; }
  // Offset in characters within the annotated word.
  std::size_t offset() const { return offset_; }

 private:
  char32_t character_;
  std::size_t offset_;
};

class MalformedSyllableError : public Error {
 public:
  MalformedSyllableError(std::size_t offset, const std::string& detail);
  // Offset in codepoints within the braille input.
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class UndecodablePositionError : public Error {
 public:
  explicit UndecodablePositionError(std::vector<std::size_t> positions);
  const std::vector<std::size_t>& positions() const { return positions_; }

 private:
  std::vector<std::size_t> positions_;
};

class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& detail);
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

}  // namespace zhbraille
