// Copyright 2026 The nullweak Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace nullweak {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define NULLWEAK_DEFINE_ERROR(Name)          \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  };

// hilbert
NULLWEAK_DEFINE_ERROR(DimensionError)
NULLWEAK_DEFINE_ERROR(IndexError)
NULLWEAK_DEFINE_ERROR(NonUnitaryError)
NULLWEAK_DEFINE_ERROR(HermiticityError)
// pointer
NULLWEAK_DEFINE_ERROR(ZeroNormError)
// protocol
NULLWEAK_DEFINE_ERROR(UndefinedWeakValueError)
NULLWEAK_DEFINE_ERROR(SpectralError)
NULLWEAK_DEFINE_ERROR(BasisError)
NULLWEAK_DEFINE_ERROR(ProjectorError)
NULLWEAK_DEFINE_ERROR(ModeError)
// setups
NULLWEAK_DEFINE_ERROR(DomainError)
NULLWEAK_DEFINE_ERROR(NoPostselectionError)
NULLWEAK_DEFINE_ERROR(NoSolutionError)
// scenario files
NULLWEAK_DEFINE_ERROR(ParseError)
NULLWEAK_DEFINE_ERROR(ValidationError)

#undef NULLWEAK_DEFINE_ERROR

}  // namespace nullweak
