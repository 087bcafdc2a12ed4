#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gbik/cgs.hpp"
#include "gbik/chain.hpp"
#include "gbik/systems.hpp"

namespace gbik {

// How the wrist-center systems are solved at runtime. Direct runs Buchberger
// per pose; the other two consult precomputed parametric caches first and
// fall back to direct whenever a cache is missing, a coefficient denominator
// vanishes at the pose, or the specialized set misbehaves.
enum class SolveMode { direct, generic_basis, cgs_segment };

std::string to_string(SolveMode m);
std::optional<SolveMode> solve_mode_from_string(const std::string& s);

struct BranchRecord {
    // generic: tilted tool axis; parallel: horizontal axis with the wrist
    // center in its vertical plane; nonparallel: horizontal axis, center off
    // that plane (the self-motion circle).
    enum class Path { generic, parallel, nonparallel };

    Path path = Path::generic;
    int point_index = 0;   // which intersection point of the branch
    int sign_theta5 = 0;   // +1 upper / -1 lower wrist-bend sign branch
    int sign_theta3 = 0;   // +1 / -1 elbow sign branch, 0 at the reach boundary
    int slot_theta2 = 0;   // circle-line solution index
    int slot_theta4 = 0;
    int slot_theta1 = 0;   // special path: base-angle solution index
};

std::string to_string(BranchRecord::Path p);

struct IkCandidate {
    std::array<SinCosPair, 6> sc;
    std::array<double, 6> theta{};  // atan2(s, c), normalized to (-pi, pi]
    BranchRecord branch;
    IntersectionPoint source;
    bool in_limits = false;
};

struct RejectedCandidate {
    IkCandidate candidate;
    double fk_residual_mm = 0.0;
    std::string reason;
};

struct IkSolutionSet {
    std::vector<IkCandidate> verified;
    std::vector<RejectedCandidate> rejected;
    bool generic_fired = false;
    bool parallel_fired = false;
    bool nonparallel_fired = false;
    // the pose admits a continuum of wrist centers; `verified` holds
    // solutions through representative points only
    bool underdetermined = false;
    bool candidate_cap_hit = false;
    std::vector<std::string> notes;
};

// Immutable per-geometry caches, shareable across concurrent solves.
struct SolverTemplate {
    SolveMode mode = SolveMode::direct;
    std::uint64_t geometry_hash = 0;

    // generic branch: parametric basis valid off the recorded denominator
    // zeros (empty eqs/neqs: validity is checked by the specialization throw
    // and the exact residual filter downstream)
    std::optional<CgsSegment> generic;
    // special branches, parameters on the exact-unit horizontal slice
    std::vector<CgsSegment> parallel_segments;
    std::vector<CgsSegment> nonparallel_segments_xpin;  // n2 != 0 cell list
    std::vector<CgsSegment> nonparallel_segments_ypin;  // n2 == 0 cell list
    // precomputed sin/cos elimination basis (12 relations, 15 parameters)
    std::optional<std::vector<PPoly>> sincos_basis;

    // every attempted precomputation logs here: built sizes or the cap that
    // stopped it; never silent
    std::vector<std::string> build_notes;
};

struct SolveOptions {
    double fk_tol_mm = 0.1;          // position acceptance for verify_fk
    bool strict_orientation = true;  // also gate orientation columns at 1e-4
    double branch_epsilon = 1e-9;    // near-horizontal dual-routing band on n3
    double solvability_band_mm = 1e-6;  // off-plane special case: |reach -+ d4| gate
    bool filter_limits = false;      // drop out-of-limit solutions instead of marking
    int candidate_cap = 64;
    int continuum_samples = 4;       // representatives on a self-motion circle
    bool sincos_backsolve = false;   // per-point Groebner back-substitution
    long algebra_budget_ms = 10000;  // wall-clock cap per runtime algebra call
};

// Limits for one precomputation attempt; the known-hard parametric runs trip
// the wall clock and are reported in build_notes.
AlgLimits default_template_limits();

SolverTemplate build_template(const RobotGeometry& geom,
                              SolveMode mode = SolveMode::generic_basis,
                              const AlgLimits& lim = default_template_limits());

struct FkCheck {
    bool accepted = false;
    double position_error_mm = 0.0;
    double orientation_error = 0.0;
};

FkCheck verify_fk(const RobotGeometry& geom, const IkCandidate& cand, const Pose& pose,
                  double tol_mm = 0.1, bool strict = true);

// All wrist centers of the branch-appropriate systems for this pose, deduped.
// Empty for unreachable poses. For a self-motion pose the continuum is
// returned as representative circle points.
std::vector<IntersectionPoint> solve_intersection(const SolverTemplate& tmpl,
                                                  const RobotGeometry& geom, const Pose& pose,
                                                  const SolveOptions& opt = {});

IkSolutionSet solve_ik(const SolverTemplate& tmpl, const RobotGeometry& geom, const Pose& pose,
                       const SolveOptions& opt = {});

// Per-point sin/cos elimination: specialize the twelve sin/cos relations at
// (pose, P), compute the lex Groebner basis, back-solve, and assemble
// candidates. Sign fields of the branch records are inferred from the solved
// values. Throws CapExceeded when a resource cap trips; solve_ik falls back
// to the closed-form chain in that case.
std::vector<IkCandidate> sincos_groebner_mode(const RobotGeometry& geom, const Pose& pose,
                                              const IntersectionPoint& P,
                                              const AlgLimits& lim = {});

}  // namespace gbik
