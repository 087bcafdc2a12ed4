#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <vector>

#include "gbik/kinematics.hpp"
#include "gbik/ratfunc.hpp"

namespace gbik {

// Variable layout shared by all intersection-point systems: unknowns are the
// wrist-center coordinates x > y > z (lex), parameters are the tool z-axis
// n1 > n2 > n3 and the tool position p1 > p2 > p3.
struct SystemRing {
    VarId x, y, z;
    VarId n1, n2, n3, p1, p2, p3;
    std::shared_ptr<const MonoOrder> main;    // lex x > y > z
    std::shared_ptr<const MonoOrder> params;  // lex n1 > ... > p3
    std::shared_ptr<const MonoOrder> mixed;   // lex x > y > z > n1 > ... > p3

    static const SystemRing& get();
};

// Pose with every entry snapped onto a fixed rational grid, so branch tests
// (n3 = 0, coplanarity, solvability) are exact decisions instead of float
// comparisons.
struct RatPose {
    std::array<Rat, 3> l, m, n, p;

    static RatPose from_pose(const Pose& pose, std::int64_t den = 1000000000LL);
    Pose to_pose() const;
    std::map<VarId, Rat> param_point() const;  // n1..n3, p1..p3 values
};

// A pose that provably admits no wrist-center solution.
struct UnreachablePose : std::domain_error {
    using std::domain_error::domain_error;
};

// Generic orientation (n3 != 0): plane, sphere and the squared joint-1 offset
// quartic in the wrist center. Degrees 1, 2 and 4.
std::vector<QPoly> build_generic_system(const RobotGeometry& geom, const RatPose& pose);
std::vector<PPoly> build_generic_system_parametric(const RobotGeometry& geom);

// Horizontal tool axis with the wrist center in the vertical plane of the
// axis: plane, sphere and the coplanarity linear form. Requires n3 == 0.
std::vector<QPoly> build_parallel_special_system(const RobotGeometry& geom, const RatPose& pose);
std::vector<PPoly> build_parallel_special_system_parametric(const RobotGeometry& geom);

// Horizontal tool axis, wrist center off that plane: the generic system plus
// one more quartic pinning x (or y), chosen by whether n2 vanishes. Requires
// n3 == 0 and the solvability condition n1*p1 + n2*p2 - d6 = +-d4; throws
// UnreachablePose otherwise.
std::vector<QPoly> build_nonparallel_special_system(const RobotGeometry& geom,
                                                    const RatPose& pose);
std::vector<PPoly> build_nonparallel_special_system_parametric(const RobotGeometry& geom,
                                                               bool n2_nonzero);

}  // namespace gbik
