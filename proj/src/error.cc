// Copyright 2026 The Multipass Authors
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

#include "multipass/error.h"

namespace multipass {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonUnitary:
            return "NonUnitary";
        case ErrorKind::Domain:
            return "DomainError";
        case ErrorKind::NumericalDrift:
            return "NumericalDrift";
        case ErrorKind::Ambiguous:
            return "Ambiguous";
        case ErrorKind::NoSolution:
            return "NoSolution";
        case ErrorKind::RegimeViolation:
            return "RegimeViolation";
        case ErrorKind::DegenerateDenominator:
            return "DegenerateDenominator";
        case ErrorKind::BranchAliasing:
            return "BranchAliasing";
        case ErrorKind::Inconsistent:
            return "Inconsistent";
        case ErrorKind::Config:
            return "ConfigError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {
}

void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

}  // namespace multipass
