// Copyright 2026 The IQEC Authors
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

#ifndef IQEC_ERRORS_H
#define IQEC_ERRORS_H

#include <stdexcept>
#include <string>

namespace iqec {

/// Root of every exception thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed user input: configs, Pauli expressions, CLI arguments. The CLI maps these to exit code 2.
struct InputError : Error {
    using Error::Error;
};

/// A physical or mathematical precondition failed. The CLI maps these to exit code 3.
struct PhysicsError : Error {
    using Error::Error;
};

/// No admissible gate set or theorem check failed; reported with exit code 1.
struct NoSolution : Error {
    using Error::Error;
};

#define IQEC_DEFINE_ERROR(name, base) \
    struct name : base {              \
        using base::base;             \
    }

IQEC_DEFINE_ERROR(ConfigError, InputError);
IQEC_DEFINE_ERROR(ParseError, InputError);
IQEC_DEFINE_ERROR(UnknownLabel, InputError);
IQEC_DEFINE_ERROR(BadSite, InputError);
IQEC_DEFINE_ERROR(BadSubsystemIndex, InputError);
IQEC_DEFINE_ERROR(LengthMismatch, InputError);

IQEC_DEFINE_ERROR(DimensionMismatch, PhysicsError);
IQEC_DEFINE_ERROR(DimensionTooLarge, PhysicsError);
IQEC_DEFINE_ERROR(NonHermitianInput, PhysicsError);
IQEC_DEFINE_ERROR(ShortTimeViolation, PhysicsError);
IQEC_DEFINE_ERROR(IncompatibleGate, PhysicsError);
IQEC_DEFINE_ERROR(IrreversibleJump, PhysicsError);
IQEC_DEFINE_ERROR(TheoremThreeViolated, PhysicsError);
IQEC_DEFINE_ERROR(OutOfSubspace, PhysicsError);
IQEC_DEFINE_ERROR(UnnormalizedState, PhysicsError);
IQEC_DEFINE_ERROR(NonpositiveFisher, PhysicsError);
IQEC_DEFINE_ERROR(LeakageExceeded, PhysicsError);
IQEC_DEFINE_ERROR(NotGeneratable, PhysicsError);

#undef IQEC_DEFINE_ERROR

}  // namespace iqec

#endif
