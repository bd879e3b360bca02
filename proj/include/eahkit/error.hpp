// Copyright 2026 The eahkit Authors.
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

#ifndef EAHKIT_ERROR_HPP_
#define EAHKIT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace eahkit {

enum class ErrorCode {
  kDimensionMismatch,
  kParse,
  kUnboundedInput,
  kPointOutsideSet,
  kEmptyInputSet,
  kDimensionTooLarge,
  kOracleContractViolation,
  kGerContractViolation,
  kVerificationFailedAfterMaxEscalations,
  kGradientOracleFailure,
  kNoFixedPoint,
  kPurificationFailure,
  kCertificateFailure,
  kImperfectRecall,
  kMalformedTree,
  kInstanceTooLarge,
  kInvalidArgument,
  kInternal,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define EAHKIT_CHECK(cond, code, msg)          \
  do {                                         \
    if (!(cond)) throw ::eahkit::Error((code), (msg)); \
  } while (0)

}  // namespace eahkit

#endif  // EAHKIT_ERROR_HPP_
