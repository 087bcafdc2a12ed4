#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "gbik/kinematics.hpp"

namespace gbik {

struct SinCosPair {
    double s = 0.0, c = 0.0;

    double angle() const { return std::atan2(s, c); }
    double norm_defect() const { return std::abs(s * s + c * c - 1.0); }
};

// Wrist center: common point of the joint-4 and joint-5 axes, in base frame mm.
struct IntersectionPoint {
    double x = 0.0, y = 0.0, z = 0.0;
};

// All (s, c) on the unit circle with A*c + B*s = C; 0, 1 or 2 solutions.
std::vector<SinCosPair> solve_circle_line(double A, double B, double C);

// Tool-roll angle from the wrist center. The two defining projections
// overdetermine the pair; a unit-norm defect above `tol` rejects the point
// as inconsistent.
std::optional<SinCosPair> theta6_from_point(const RobotGeometry& geom, const Pose& pose,
                                            const IntersectionPoint& P, double tol = 1e-6);

// Wrist-bend and base angles for a tilted tool axis. Returns the two
// correlated sign branches as (theta5, theta1); empty when the shared
// radicand vanishes (horizontal-axis special case) or the point is
// inconsistent with the pose.
std::vector<std::pair<SinCosPair, SinCosPair>> theta5_theta1_generic(const RobotGeometry& geom,
                                                                     const Pose& pose,
                                                                     const IntersectionPoint& P);

// Elbow angle from the squared distance of the wrist center to the shoulder;
// empty when out of reach, one branch at the reach boundary, else two.
std::vector<SinCosPair> theta3_from_point(const RobotGeometry& geom,
                                          const IntersectionPoint& P);

// Shoulder angle from the wrist-center height, given an elbow branch.
std::vector<SinCosPair> theta2_from_point(const RobotGeometry& geom,
                                          const IntersectionPoint& P,
                                          const SinCosPair& theta3);

// Forearm-roll angle closing the theta2+theta3+theta4 sum against the tool
// orientation.
std::vector<SinCosPair> theta4_from_chain(const Pose& pose, const SinCosPair& theta2,
                                          const SinCosPair& theta3, const SinCosPair& theta6);

// Horizontal-axis special case: base angle from the wrist-center x equation,
// then wrist bend from a 2x2 linear solve; pairs returned as (theta1, theta5).
// Candidates with a singular system or off-circle solution are dropped.
std::vector<std::pair<SinCosPair, SinCosPair>> theta1_theta5_special(
    const RobotGeometry& geom, const Pose& pose, const IntersectionPoint& P,
    const SinCosPair& theta2, const SinCosPair& theta3, const SinCosPair& theta6);

}  // namespace gbik
