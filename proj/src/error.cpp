// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "catsim/error.hpp"

namespace catsim {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::dimension_mismatch: return "dimension mismatch";
    case ErrorCode::not_hermitian: return "not Hermitian";
    case ErrorCode::no_convergence: return "no convergence";
    case ErrorCode::not_normalized: return "not normalized";
    case ErrorCode::truncation: return "truncation too small";
    case ErrorCode::degenerate: return "degenerate state";
    case ErrorCode::config: return "config error";
    case ErrorCode::io: return "i/o error";
  }
  return "unknown error";
}

}  // namespace catsim
