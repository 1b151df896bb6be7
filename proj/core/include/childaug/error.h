// childaug/error.h

// Copyright 2026  The childaugment Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef CHILDAUG_ERROR_H_
#define CHILDAUG_ERROR_H_

#include <stdexcept>
#include <string>

namespace childaug {

/// Category of a failure. Each maps to one error class of the public API.
enum class ErrorKind {
  kIo,
  kFormat,
  kEmptyInput,
  kShape,
  kNumeric,
  kStability,
  kConvergence,
  kSymmetry,
  kDomain,
  kConfig,
  kUsage,
  kTraining,
};

const char *error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(error_kind_name(kind)) + " error: " +
                           what),
        kind_(kind),
        detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string &detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

#define CHILDAUG_DEFINE_ERROR(Name, Kind)                        \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string &what) : Error(Kind, what) {} \
  };

CHILDAUG_DEFINE_ERROR(IoError, ErrorKind::kIo)
CHILDAUG_DEFINE_ERROR(FormatError, ErrorKind::kFormat)
CHILDAUG_DEFINE_ERROR(EmptyInputError, ErrorKind::kEmptyInput)
CHILDAUG_DEFINE_ERROR(ShapeError, ErrorKind::kShape)
CHILDAUG_DEFINE_ERROR(NumericError, ErrorKind::kNumeric)
CHILDAUG_DEFINE_ERROR(StabilityError, ErrorKind::kStability)
CHILDAUG_DEFINE_ERROR(ConvergenceError, ErrorKind::kConvergence)
CHILDAUG_DEFINE_ERROR(SymmetryError, ErrorKind::kSymmetry)
CHILDAUG_DEFINE_ERROR(DomainError, ErrorKind::kDomain)
CHILDAUG_DEFINE_ERROR(ConfigError, ErrorKind::kConfig)
CHILDAUG_DEFINE_ERROR(UsageError, ErrorKind::kUsage)
CHILDAUG_DEFINE_ERROR(TrainingError, ErrorKind::kTraining)

#undef CHILDAUG_DEFINE_ERROR

}  // namespace childaug

#endif  // CHILDAUG_ERROR_H_
