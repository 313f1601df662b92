// Copyright 2026 The LODAS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lodas {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Value outside its mathematical domain (e.g. opinion 7).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Bad configuration: unknown scenario, invalid template, bad count map.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Chat or classifier backend failed after exhausting its retry budget.
class BackendError : public Error {
  public:
    BackendError(const std::string& what, int attempts)
        : Error(what + " (after " + std::to_string(attempts) + " attempt" + (attempts == 1 ? "" : "s") + ")"),
          attempts_(attempts) {}
    int attempts() const noexcept { return attempts_; }

  private:
    int attempts_;
};

/// No verdict token in a Discussant utterance.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// Fallacy metrics requested on a transcript that has not been annotated.
class AnnotationMissing : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

/// Corrupt or incompatible run directory. `record_index` is set when a specific
/// transcript line is at fault.
class LoadError : public Error {
  public:
    explicit LoadError(const std::string& what) : Error(what) {}
    LoadError(const std::string& what, std::size_t record_index)
        : Error("record " + std::to_string(record_index) + ": " + what), record_index_(record_index), has_index_(true) {}

    bool has_record_index() const noexcept { return has_index_; }
    std::size_t record_index() const noexcept { return record_index_; }

  private:
    std::size_t record_index_ = 0;
    bool has_index_ = false;
};

} // namespace lodas
