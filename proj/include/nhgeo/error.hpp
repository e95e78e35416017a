// Copyright 2026 The nhgeo Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nhgeo {

enum class ErrorCode {
  invalid_argument,
  singular_matrix,
  evaluation_failure,
  non_finite_state,
  rank_deficient,
  not_phi_simple,
  non_closed_form,
  constraint_violated,
  singular_saddle,
  shooting_diverged,
  invalid_parameters,
  domain_error,
};

/// Stable machine-readable name, e.g. "SingularMatrix".
std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace nhgeo
