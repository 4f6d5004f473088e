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

#include "qac/errors.hpp"

namespace qac {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Argument: return "ArgumentError";
    case ErrorKind::Range: return "RangeError";
    case ErrorKind::Name: return "NameError";
    case ErrorKind::Unitarity: return "UnitarityError";
    case ErrorKind::NoMeasure: return "NoMeasureError";
    case ErrorKind::NoClbits: return "NoClbitsError";
    case ErrorKind::Composition: return "CompositionError";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::UnsupportedExport: return "UnsupportedExportError";
    case ErrorKind::Unsupported: return "UnsupportedError";
    case ErrorKind::Proportion: return "ProportionError";
    case ErrorKind::Resample: return "ResampleSignal";
    case ErrorKind::Wire: return "WireError";
    case ErrorKind::Timeout: return "TimeoutError";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::Remote: return "RemoteError";
    }
    return "Error";
}

namespace {
std::string located(const std::string &message, std::size_t line, std::size_t column) {
    if (line == 0)
        return message + " (column " + std::to_string(column) + ")";
    return message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
}
} // namespace

ParseError::ParseError(const std::string &message, std::string token, std::size_t line,
                       std::size_t column)
    : Error(ErrorKind::Parse, located(message, line, column)), token_(std::move(token)),
      line_(line), column_(column) {}

} // namespace qac
