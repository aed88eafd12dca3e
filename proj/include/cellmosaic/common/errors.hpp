// Copyright 2026 The cellmosaic Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cellmosaic {

//! Root of every error the library throws.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

class ManifestFormatError : public Error {
  public:
    using Error::Error;
};

//! One or more manifest rows could not be parsed; lists the offending slide ids.
class ManifestRowError : public Error {
  public:
    ManifestRowError(const std::string& what, std::vector<std::string> slide_ids)
        : Error(what), slide_ids_(std::move(slide_ids)) {}
    [[nodiscard]] const std::vector<std::string>& slide_ids() const noexcept { return slide_ids_; }

  private:
    std::vector<std::string> slide_ids_;
};

class DuplicateIdError : public Error {
  public:
    using Error::Error;
};

class BoundsError : public Error {
  public:
    using Error::Error;
};

class SpecError : public Error {
  public:
    using Error::Error;
};

class DegenerateStainError : public Error {
  public:
    using Error::Error;
};

class EmptyCellMosaicError : public Error {
  public:
    using Error::Error;
};

class IncompatibleBarcodeError : public Error {
  public:
    using Error::Error;
};

//! Wrong magic, unsupported version or otherwise malformed header.
class FormatError : public Error {
  public:
    using Error::Error;
};

//! Truncated file or checksum mismatch.
class CorruptionError : public Error {
  public:
    using Error::Error;
};

class MetadataError : public Error {
  public:
    using Error::Error;
};

class EmptyIndexError : public Error {
  public:
    using Error::Error;
};

class UnknownSiteError : public Error {
  public:
    using Error::Error;
};

class ShapeError : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

}  // namespace cellmosaic
