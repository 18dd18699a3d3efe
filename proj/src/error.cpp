// Copyright 2026 The nlgate Authors
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

#include "nlgate/error.hpp"

namespace nlgate {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::NotNormalized:
            return "NotNormalized";
        case ErrorCode::NotUnitary:
            return "NotUnitary";
        case ErrorCode::UnknownLabel:
            return "UnknownLabel";
        case ErrorCode::ZeroProbabilityBranch:
            return "ZeroProbabilityBranch";
        case ErrorCode::InvalidMode:
            return "InvalidMode";
        case ErrorCode::QuadratureFailure:
            return "QuadratureFailure";
        case ErrorCode::NoValidCorrection:
            return "NoValidCorrection";
        case ErrorCode::AmbiguousCorrection:
            return "AmbiguousCorrection";
        case ErrorCode::InvalidParams:
            return "InvalidParams";
        case ErrorCode::DegenerateDenominator:
            return "DegenerateDenominator";
        case ErrorCode::InvalidRegime:
            return "InvalidRegime";
        case ErrorCode::ConfigError:
            return "ConfigError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message) : std::runtime_error(message), code_(code) {
}

}  // namespace nlgate
