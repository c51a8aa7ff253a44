// Copyright 2026 The graphsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GRAPHSYNTH_ERROR_HPP_
#define GRAPHSYNTH_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace graphsynth {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (tables, dictionaries, distributions).
class DataError : public Error {
 public:
  using Error::Error;
};

// A generator or algorithm was configured with parameters it cannot honour.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace graphsynth

#endif  // GRAPHSYNTH_ERROR_HPP_
