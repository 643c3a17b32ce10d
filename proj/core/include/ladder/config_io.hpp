#pragma once

#include <iosfwd>
#include <string>

#include "ladder/reservoir.hpp"

namespace ladder {

// Flat JSON config with keys
//   n_atoms, nbar1, nbar2, theta_deg, mode, gamma1, gamma2, omega12, omega23.
// nbar1/nbar2 accept a number, {"thermal":{"omega":..,"T":..}} or
// {"pump":{"R":..,"dipole":..,"gamma":..}}. Unknown keys are errors.
EnsembleConfig parse_config(std::istream& in);
EnsembleConfig parse_config_file(const std::string& path);

std::string mode_to_string(DipoleMode mode);
DipoleMode mode_from_string(const std::string& s);

}  // namespace ladder
