// Copyright 2026 The lzx Authors
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

#include "lzx/units.hpp"

#include <cmath>
#include <string>

namespace lzx {

double thermal_energy(double temperature_K) {
    if (!(temperature_K > 0.0)) {
        throw DomainError("thermal_energy: temperature must be positive, got " +
                          std::to_string(temperature_K) + " K");
    }
    return PhysConstants::boltzmann_over_planck * temperature_K;
}

double persistent_current_energy(double i_p_uA, double flux_offset_phi0) {
    return 2.0 * i_p_uA * PhysConstants::current_to_freq * flux_offset_phi0;
}

}  // namespace lzx
