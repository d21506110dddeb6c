// Copyright 2026 The kfou Authors.
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

#ifndef KFOU_ERRORS_HPP_
#define KFOU_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace kfou {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters or configuration supplied by the caller.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// The operation is not defined for this input (e.g. differentiating a delta).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation at a point where the density is not finite, or where the
// requested accuracy cannot be reached because of a singularity.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// No closed form is available for the requested parameter combination.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace kfou

#endif  // KFOU_ERRORS_HPP_
