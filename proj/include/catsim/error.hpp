// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace catsim {

enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  not_hermitian,
  no_convergence,
  not_normalized,
  truncation,   // Fock truncation too small for the requested physics
  degenerate,   // e.g. the odd cat at beta = 0
  config,
  io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace catsim
