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

#include "eflows/errors.hpp"

#include <exception>

namespace eflows {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::bad_request: return "bad_request";
    case ErrorCode::insufficient_data: return "insufficient_data";
    case ErrorCode::internal: return "internal";
  }
  return "internal";
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_found: return 404;
    case ErrorCode::bad_request: return 400;
    case ErrorCode::insufficient_data: return 422;
    case ErrorCode::internal: return 500;
  }
  return 500;
}

ErrorCode classify_current_exception() {
  try {
    throw;
  } catch (const NotFound&) {
    return ErrorCode::not_found;
  } catch (const InsufficientData&) {
    return ErrorCode::insufficient_data;
  } catch (const std::invalid_argument&) {
    return ErrorCode::bad_request;
  } catch (const FormatError&) {
    return ErrorCode::bad_request;
  } catch (...) {
    return ErrorCode::internal;
  }
}

}  // namespace eflows
