// Copyright (c) lzero contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace lzero {

// Every failure carries a stable kind string so the CLI can emit a
// machine-readable record and pick an exit code.
class Error : public std::runtime_error {
  public:
    Error(std::string kind, const std::string& what) : std::runtime_error(what), kind_(std::move(kind)) {}
    [[nodiscard]] const std::string& kind() const noexcept { return kind_; }

  private:
    std::string kind_;
};

#define LZERO_ERROR_TYPE(Name)                                                                                         \
    class Name : public Error {                                                                                        \
      public:                                                                                                          \
        explicit Name(const std::string& what) : Error(#Name, what) {}                                                 \
    }

LZERO_ERROR_TYPE(DomainError);
LZERO_ERROR_TYPE(BudgetExceeded);
LZERO_ERROR_TYPE(PoleProximity);
LZERO_ERROR_TYPE(NotPrimitive);
LZERO_ERROR_TYPE(NudgeNeeded);
LZERO_ERROR_TYPE(CompletenessFailure);
LZERO_ERROR_TYPE(RegimeMismatch);
LZERO_ERROR_TYPE(PreconditionFailure);
LZERO_ERROR_TYPE(SchemaMismatch);
LZERO_ERROR_TYPE(UnsortedInput);

#undef LZERO_ERROR_TYPE

} // namespace lzero
