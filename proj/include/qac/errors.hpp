// Copyright 2026 The QAC Engine Authors
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

/**
 * @file
 * Exception hierarchy shared by every engine module.
 *
 * All engine failures derive from qac::Error and carry an ErrorKind so that
 * front ends (REPL, OSC service) can report them uniformly without RTTI.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qac {

enum class ErrorKind {
    Argument,
    Range,
    Name,
    Unitarity,
    NoMeasure,
    NoClbits,
    Composition,
    Parse,
    UnsupportedExport,
    Unsupported,
    Proportion,
    Resample,
    Wire,
    Timeout,
    Io,
    Remote,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

#define QAC_DEFINE_ERROR(Name, Kind)                                          \
    class Name : public Error {                                               \
      public:                                                                 \
        explicit Name(const std::string &what) : Error(ErrorKind::Kind, what) {} \
    }

QAC_DEFINE_ERROR(ArgumentError, Argument);
QAC_DEFINE_ERROR(RangeError, Range);
QAC_DEFINE_ERROR(NameError, Name);
QAC_DEFINE_ERROR(UnitarityError, Unitarity);
QAC_DEFINE_ERROR(NoMeasureError, NoMeasure);
QAC_DEFINE_ERROR(NoClbitsError, NoClbits);
QAC_DEFINE_ERROR(CompositionError, Composition);
QAC_DEFINE_ERROR(UnsupportedExportError, UnsupportedExport);
QAC_DEFINE_ERROR(UnsupportedError, Unsupported);
QAC_DEFINE_ERROR(ProportionError, Proportion);
QAC_DEFINE_ERROR(WireError, Wire);
QAC_DEFINE_ERROR(TimeoutError, Timeout);
QAC_DEFINE_ERROR(IoError, Io);
/// A service answered a request with an error message.
QAC_DEFINE_ERROR(RemoteError, Remote);

#undef QAC_DEFINE_ERROR

/// Raised by the BMA winner selection when a padded (label-less) state wins.
/// The sequencer catches it and resamples.
class ResampleSignal : public Error {
  public:
    ResampleSignal(const std::string &what, std::size_t state_index)
        : Error(ErrorKind::Resample, what), state_index_(state_index) {}

    [[nodiscard]] std::size_t state_index() const noexcept { return state_index_; }

  private:
    std::size_t state_index_;
};

/// Syntax error with a 1-based source position. `line` is 0 when the input
/// was a single message rather than a multi-line document.
class ParseError : public Error {
  public:
    ParseError(const std::string &message, std::string token, std::size_t line,
               std::size_t column);

    [[nodiscard]] const std::string &token() const noexcept { return token_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

  private:
    std::string token_;
    std::size_t line_;
    std::size_t column_;
};

} // namespace qac
