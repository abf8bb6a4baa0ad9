#pragma once

#include "tpmc/instance.hpp"
#include "tpmc/polytope.hpp"

namespace tpmc {

/// Bundled showcase cases used by `replay-examples` and the golden tests.

/// Example 1: a 3x3 bipartite perfect-matching system (degree equalities and
/// nonnegativity) plus the side constraint x14 + x25 <= 1, together with a
/// half-integral point that the side constraint pins down to a fractional
/// extreme point. Coordinates follow the edge list
/// (1,4),(1,5),(2,4),(2,5),(2,6),(3,5),(3,6).
struct Example1 {
    LinearSystem system;
    RationalPoint point;
};
Example1 example1();

/// Example 2: six unit suppliers, four markets with demands (2,2,2,3), nine
/// edges, unit costs and revenue 10 per market. With at most two rejections
/// the all-halves point lies in the relaxed region but outside the
/// restricted integer hull, showing why the demand <= 2 restriction in the
/// cardinality audit is sharp.
struct Example2 {
    TpmcInstance instance;
    RationalPoint point;
    Int k = 2;
};
Example2 example2();

} // namespace tpmc
