// Copyright 2026 The gkpforge Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace gkpforge {

enum class ErrorCode {
    InvalidArgument = 1,
    InvalidDimension,
    UnsupportedGate,
    CutoffTooSmall,
    NotConverged,
    Configuration,
    ResourceLimit,
    GridResolution,
    Io,
};

/// Base for every failure raised by the library. The C API maps `code()` onto
/// its status enum one-to-one.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}
    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

class CutoffTooSmallError : public Error {
  public:
    CutoffTooSmallError(const std::string &what, int required)
        : Error(ErrorCode::CutoffTooSmall, what), required_cutoff_(required) {}
    /// Estimated smallest cutoff meeting the leakage tolerance.
    [[nodiscard]] int required_cutoff() const noexcept { return required_cutoff_; }

  private:
    int required_cutoff_;
};

class NotConvergedError : public Error {
  public:
    NotConvergedError(const std::string &what, double coarse, double fine)
        : Error(ErrorCode::NotConverged, what), coarse_(coarse), fine_(fine) {}
    [[nodiscard]] double coarse() const noexcept { return coarse_; }
    [[nodiscard]] double fine() const noexcept { return fine_; }

  private:
    double coarse_;
    double fine_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string &what) {
    if (!condition) {
        fail(code, what);
    }
}

} // namespace gkpforge
