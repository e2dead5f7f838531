// Copyright 2026 The padiclab Authors
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

#include "padiclab/errors.hpp"

namespace padiclab {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::Usage: return "Usage";
    case Errc::NonUnit: return "NonUnit";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::HenselPreconditionFailed: return "HenselPreconditionFailed";
    case Errc::UnresolvedBranch: return "UnresolvedBranch";
    case Errc::NoRootInZp: return "NoRootInZp";
    case Errc::BoxExhausted: return "BoxExhausted";
    case Errc::ProfileUnavailable: return "ProfileUnavailable";
    case Errc::CommonFactor: return "CommonFactor";
    case Errc::Unsupported: return "Unsupported";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace padiclab
