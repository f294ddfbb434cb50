#pragma once

// Small fixed constructions used by the demos and the acceptance suite.

#include <vector>

#include "gsep/cayley.hpp"
#include "gsep/gf2.hpp"
#include "gsep/vec_groupoid.hpp"

namespace gsep {

// 2x3 matrices over GF(2), flattened row-major (index row * 3 + col).
// alpha copies column 0 into column 1 and column 1 into column 2, beta
// copies row 0 into row 1, c has a single 1 in the top-left corner.
struct MatrixAffineExample {
  BitMatrix alpha;
  BitMatrix beta;
  BitVec c;
  VecGroupoid groupoid;  // x*y = alpha.x + beta.y + c
  Term s;                // ((v*w)*(x*y))*z
  Term t;                // ((v*(w*x))*y)*z
};

MatrixAffineExample matrix_affine_example();

// Flattened 2x3 matrix from its rows.
BitVec matrix2x3(const std::vector<std::vector<int>>& rows);

// x*y = x+1 on Z2 and x*y = y+1 on Z3.
CayleyGroupoid left_deranged_z2();
CayleyGroupoid right_deranged_z3();

// The pair whose separation needs a cycle of three variables.
Term cycle_example_s();
Term cycle_example_t();

// The pair with no cover and no cycle, and a hand-built separator for it.
Term search_example_s();
Term search_example_t();
std::vector<OpSpec> search_example_seed();

}  // namespace gsep
