// Copyright 2026 The eflows Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eflows {

/// Fatal CSV problem (header mismatch). Row-level problems are RowErrors instead.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for the two data-sufficiency gates of threshold computation.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientSample : public InsufficientData {
 public:
  InsufficientSample(std::size_t n, std::size_t min_sample)
      : InsufficientData("insufficient sample: n = " + std::to_string(n) +
                         " < min_sample = " + std::to_string(min_sample)),
        n_(n),
        min_sample_(min_sample) {}

  std::size_t n() const noexcept { return n_; }
  std::size_t min_sample() const noexcept { return min_sample_; }

 private:
  std::size_t n_;
  std::size_t min_sample_;
};

class InsufficientCoverage : public InsufficientData {
 public:
  InsufficientCoverage(double coverage, double min_coverage)
      : InsufficientData("insufficient coverage: " + std::to_string(coverage) +
                         " < min_coverage = " + std::to_string(min_coverage)),
        coverage_(coverage),
        min_coverage_(min_coverage) {}

  double coverage() const noexcept { return coverage_; }
  double min_coverage() const noexcept { return min_coverage_; }

 private:
  double coverage_;
  double min_coverage_;
};

class EmptyGroup : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Machine-readable error categories shared by reports and the HTTP API.
enum class ErrorCode { not_found, bad_request, insufficient_data, internal };

std::string_view to_string(ErrorCode code);

/// HTTP status for `code`: 404, 400, 422 or 500.
int http_status(ErrorCode code);

/// Maps the exception currently being handled to an ErrorCode. Must be called
/// from inside a catch block.
ErrorCode classify_current_exception();

}  // namespace eflows
