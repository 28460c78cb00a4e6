#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace zhbraille {

// Whole-file helpers; failures throw Error(kIo) naming the path.
std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view contents);

// Splits on '\n', dropping one trailing '\r' per line. A final empty line
// after the last newline is not returned.
std::vector<std::string_view> SplitLines(std::string_view text);

std::vector<std::string_view> SplitTabs(std::string_view line);

std::string Sha256Hex(std::string_view data);
std::string Sha256FileHex(const std::string& path);

}  // namespace zhbraille
