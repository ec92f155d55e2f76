// Copyright 2026 The Moralscope Authors.
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

#ifndef MORALSCOPE_ERRORS_HPP_
#define MORALSCOPE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace moralscope {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters, configuration or command-line usage.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Unreadable, malformed or semantically unusable input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// A pipeline stage was invoked before the stage that produces its inputs.
class PrerequisiteError : public ConfigError {
 public:
  PrerequisiteError(const std::string& missing, const std::string& stage)
      : ConfigError("missing artifact '" + missing + "'; run stage '" + stage +
                    "' first"),
        stage_(stage) {}

  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace moralscope

#endif  // MORALSCOPE_ERRORS_HPP_
