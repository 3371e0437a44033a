// Copyright 2026 The mraug Authors
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

#ifndef MRAUG_ERROR_HPP_
#define MRAUG_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mraug {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed meaning-representation text. Carries the byte offset of the
// first offending character.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class EmptyBackground : public Error {
 public:
  EmptyBackground() : Error("background corpus is empty") {}
};

class InsufficientPool : public Error {
 public:
  using Error::Error;
};

class EmptyClassInput : public Error {
 public:
  using Error::Error;
};

class UntrainedModel : public Error {
 public:
  UntrainedModel() : Error("intent model has no trained intents") {}
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class NoSlots : public Error {
 public:
  NoSlots() : Error("meaning representation has no slots; error rate undefined") {}
};

class EmptyTest : public Error {
 public:
  EmptyTest() : Error("test set is empty") {}
};

class EmptyTraining : public Error {
 public:
  EmptyTraining() : Error("training corpus is empty") {}
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("corpus is empty") {}
};

}  // namespace mraug

#endif  // MRAUG_ERROR_HPP_
