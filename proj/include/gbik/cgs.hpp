#pragma once

#include "gbik/groebner.hpp"
#include "gbik/ratfunc.hpp"

namespace gbik {

// One cell of a comprehensive Groebner system. The cell is the parameter set
// { eqs = 0 } minus { any neq = 0 }. On it, specializing `basis` (and making
// it monic) yields a Groebner basis of the specialized input ideal.
struct CgsSegment {
    std::vector<QPoly> eqs;    // reduced GB over the parameter ring
    std::vector<QPoly> neqs;   // unit-normal, pairwise distinct
    std::vector<PPoly> basis;  // fraction-free parametric generators
    bool inconsistent = false;  // basis is {1}: the specialized system is unsolvable
};

struct CgsResult {
    std::vector<CgsSegment> segments;
    long spairs_processed = 0;
};

struct CgsOptions {
    bool first_segment_only = false;  // stop after the cell of generic parameters
    // parameter constraints assumed to hold for every point of interest
    std::vector<QPoly> assume_eqs;
};

CgsResult comprehensive_gb(const std::vector<PPoly>& gens,
                           std::shared_ptr<const MonoOrder> param_ord, const AlgLimits& lim = {},
                           const CgsOptions& opt = {});

bool segment_matches(const CgsSegment& seg, const std::map<VarId, Rat>& point);
const CgsSegment* match_segment(const CgsResult& cgs, const std::map<VarId, Rat>& point);

// Specialize a segment basis at a parameter point of that segment; the result
// is interreduced to the reduced Groebner basis of the specialized ideal.
std::vector<QPoly> specialize_basis(const CgsSegment& seg, const std::map<VarId, Rat>& point);

// 1 is in the radical of <eqs> extended by h... i.e. h vanishes on V(eqs):
// decided by adjoining 1 - t*h and testing for the unit ideal.
bool vanishes_on_variety(const QPoly& h, const std::vector<QPoly>& eqs_gb, const AlgLimits& lim);

}  // namespace gbik
