// include/wordisc/error.h

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

#ifndef WORDISC_ERROR_H_
#define WORDISC_ERROR_H_

#include <stdexcept>
#include <string>

namespace wordisc {

// Thrown for malformed input files and violated data preconditions. The CLI
// maps it to exit status 1.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string &msg) : std::runtime_error(msg) {}
};

}  // namespace wordisc

#endif  // WORDISC_ERROR_H_
