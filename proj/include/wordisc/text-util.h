// include/wordisc/text-util.h

// Copyright 2026  wordisc authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef WORDISC_TEXT_UTIL_H_
#define WORDISC_TEXT_UTIL_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace wordisc {

// Splits on every occurrence of `sep`; empty fields are kept.
std::vector<std::string> SplitOn(std::string_view line, char sep);

// Splits on runs of ASCII whitespace; empty fields are dropped.
std::vector<std::string> SplitAsciiWhitespace(std::string_view text);

std::string Join(const std::vector<std::string> &parts, std::string_view sep);

// Decodes UTF-8 into code points. Throws DataError on invalid sequences.
std::vector<char32_t> DecodeUtf8(std::string_view text);
void AppendUtf8(char32_t cp, std::string *out);
std::size_t Utf8Length(std::string_view text);

bool IsUnicodeSpace(char32_t cp);

// Formats a real with `digits` significant digits, shortest form.
std::string FormatReal(double value, int digits = 6);
// Fixed-point formatting with `decimals` digits after the point.
std::string FormatFixed(double value, int decimals);

}  // namespace wordisc

#endif  // WORDISC_TEXT_UTIL_H_
