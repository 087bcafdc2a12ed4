#pragma once

#include <string>

#include "gbik/kinematics.hpp"

namespace gbik {

// Text format, one entry per line, '#' comments:
//   name <identifier>
//   joint <a> <alpha> <d> <delta>     (six times, in joint order; lengths in
//                                      mm as exact decimals, angles 0, pi/2,
//                                      -pi/2 or pi)
//   limits_deg <lo> <hi>              (applies to all joints)
//   limit_deg <joint 1..6> <lo> <hi>  (overrides one joint)
RobotGeometry parse_profile(const std::string& text);
RobotGeometry load_profile(const std::string& path);

std::string profile_to_string(const RobotGeometry& geom);

}  // namespace gbik
