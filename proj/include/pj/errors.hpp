/*
Copyright 2026 The PJ Codec Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pj {

/// Category of a failed call. The CLI maps each kind onto an exit code.
enum class ErrorKind {
  kRange,     // value outside the representable domain
  kCapacity,  // index space or payload too small for the input
  kLayout,    // strand layout / primer inconsistent with the codec config
  kConfig,    // bad option, preset, profile or manifest value
  kShape,     // dimension or length mismatch between operands
  kFormat,    // malformed file contents
  kIo,        // file could not be opened, read or written
  kEmpty,     // file parsed but held no usable records
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kRange: return "range";
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kLayout: return "layout";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kFormat: return "format";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kEmpty: return "empty";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pj
