// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef SANTA_ERRORS_H_
#define SANTA_ERRORS_H_

#include <stdexcept>
#include <string>

namespace santa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input or a violated structural invariant.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Input text that does not follow the file schema.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

// An enumeration budget would be exceeded; the oracle refuses.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// Iteration or retry cap reached without success.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

// A lift-time flow shortfall fell below the configured floor.
class ResampleNeeded : public Error {
 public:
  using Error::Error;
};

}  // namespace santa

#endif  // SANTA_ERRORS_H_
