// Copyright 2026 The epop Authors
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

#include "epop/error.hpp"

namespace epop {

const char *error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::AllZeroWeights: return "AllZeroWeights";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::DisjointSpectra: return "DisjointSpectra";
    case ErrorCode::ZeroSuccessProbability: return "ZeroSuccessProbability";
    case ErrorCode::NotTraceNonIncreasing: return "NotTraceNonIncreasing";
    case ErrorCode::InfeasibleProbability: return "InfeasibleProbability";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::NoFeasiblePartition: return "NoFeasiblePartition";
    case ErrorCode::SpectrumTooLarge: return "SpectrumTooLarge";
    case ErrorCode::RoundOutOfRange: return "RoundOutOfRange";
    case ErrorCode::NotBlockPositive: return "NotBlockPositive";
    case ErrorCode::NotOdd: return "NotOdd";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ParityMismatch: return "ParityMismatch";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidFilter: return "InvalidFilter";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace epop
