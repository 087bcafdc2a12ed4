#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gbik/rat.hpp"

namespace gbik {

// Homogeneous 4x4 transform, row-major.
struct Transform4 {
    double m[4][4];

    static Transform4 identity();
    Transform4 operator*(const Transform4& o) const;
};

// One row of the modified DH table. Twists and the extra z-rotation are
// quarter-turn multiples (value * pi/2), which keeps their sines and cosines
// exact; lengths are exact rationals in mm.
struct JointRow {
    Rat a;
    int alpha_q;
    Rat d;
    int delta_q;
};

struct RobotGeometry {
    std::string name;
    std::array<JointRow, 6> rows;
    std::array<std::pair<double, double>, 6> limits;  // rad, lo < hi

    std::uint64_t content_hash() const;
};

using JointConfig = std::array<double, 6>;

// End-effector frame: l, m, n are the rotation columns, p the position (mm).
struct Pose {
    std::array<double, 3> l{}, m{}, n{}, p{};
};

struct Rpy {
    double alpha, beta, gamma;
    bool gimbal_lock = false;
};

double normalize_angle(double t);  // into (-pi, pi]
bool within_limits(const RobotGeometry& geom, const JointConfig& q);

Transform4 joint_transform(const RobotGeometry& geom, int joint, double theta);

// Product of the first `upto` joint transforms (upto=6 gives the full chain).
Transform4 chain_transform(const RobotGeometry& geom, const JointConfig& q, int upto);

Pose pose_from_transform(const Transform4& t);
Pose forward_kinematics(const RobotGeometry& geom, const JointConfig& q);

// Columns of the roll-pitch-yaw rotation (z by gamma, y by beta, x by alpha);
// position is left zero.
Pose rpy_to_rotation(double alpha, double beta, double gamma);
Pose pose_from_rpy(const std::array<double, 3>& position, double alpha, double beta,
                   double gamma);

// Principal-branch angles (beta in [-pi/2, pi/2]). Near a pole the roll and
// yaw are not separable; alpha is set to 0 and gimbal_lock flagged.
Rpy rotation_to_rpy(const Pose& pose);

// Names of the nine orthonormality relations that fail at tolerance tol.
std::vector<std::string> validate_pose(const Pose& pose, double tol = 1e-9);

}  // namespace gbik
