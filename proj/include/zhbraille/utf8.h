#pragma once

#include <string>
#include <string_view>

namespace zhbraille {

// Decodes UTF-8; malformed sequences become U+FFFD.
std::u32string DecodeUtf8(std::string_view text);

std::string EncodeUtf8(std::u32string_view text);
std::string EncodeUtf8(char32_t codepoint);
void AppendUtf8(std::string& out, char32_t codepoint);

// CJK unified ideographs, including the extension blocks.
bool IsHanCharacter(char32_t c);

bool IsSpace(char32_t c);

std::u32string_view StripSpace(std::u32string_view text);
std::string_view StripSpace(std::string_view text);

}  // namespace zhbraille
