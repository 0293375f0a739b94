// Programmatic face posets for standard quotients.
#pragma once

#include "torusq/corners.hpp"

namespace torusq {

// Single open stratum of dimension `dim` (quotient of a free action).
FacePoset closed_poset(int dim, bool noncompact = false);
FacePoset circle_poset();                  // S^1
FacePoset line_poset();                    // R
FacePoset halfline_poset();                // [0, inf): facet "a"
FacePoset interval_poset();                // [-1, 1]: facets "a", "b"

// n-simplex; facets "f0".."fn", faces named by their facet sets ("f0_2").
FacePoset simplex_poset(int n);
// m-gon; edges "e0".."e{m-1}", vertex "v{i}" = e_i meets e_{i+1}.
FacePoset polygon_poset(int m);
// n-cube; faces are words over {0,1,*}, facets have one fixed coordinate.
FacePoset cube_poset(int n);
// Faces are pairs "a|b".
FacePoset product_poset(const FacePoset& p, const FacePoset& q);

}  // namespace torusq
