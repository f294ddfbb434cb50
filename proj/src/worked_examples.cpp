#include "gsep/worked_examples.hpp"

namespace gsep {

BitVec matrix2x3(const std::vector<std::vector<int>>& rows) {
  BitVec v(6);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 3; ++c) v.set(r * 3 + c, rows.at(r).at(c) != 0);
  }
  return v;
}

MatrixAffineExample matrix_affine_example() {
  BitMatrix alpha(6, 6);
  BitMatrix beta(6, 6);
  for (std::size_t r = 0; r < 2; ++r) {
    alpha.set(r * 3 + 0, r * 3 + 0, true);
    alpha.set(r * 3 + 1, r * 3 + 0, true);
    alpha.set(r * 3 + 2, r * 3 + 1, true);
  }
  for (std::size_t c = 0; c < 3; ++c) {
    beta.set(c, c, true);
    beta.set(3 + c, c, true);
  }
  BitVec c = matrix2x3({{1, 0, 0}, {0, 0, 0}});
  VecGroupoid g = affine_groupoid(alpha, beta, c);
  return {std::move(alpha), std::move(beta), std::move(c), std::move(g),
          parse_term("((v*w)*(x*y))*z"), parse_term("((v*(w*x))*y)*z")};
}

CayleyGroupoid left_deranged_z2() {
  const Element f[] = {1, 0};
  return deranged_groupoid(2, f, Side::Left);
}

CayleyGroupoid right_deranged_z3() {
  const Element f[] = {1, 2, 0};
  return deranged_groupoid(3, f, Side::Right);
}

Term cycle_example_s() { return parse_term("(y0*y1)*(z0*(z1*y0))"); }
Term cycle_example_t() { return parse_term("((z2*y1)*y2)*(z3*y2)"); }

Term search_example_s() { return parse_term("(x*y)*(z*y)"); }
Term search_example_t() { return parse_term("z*((y*y)*(x*x))"); }

std::vector<OpSpec> search_example_seed() {
  return {{3, Path::parse("l"), 0, false},
          {3, Path::parse("rl"), 1, false},
          {4, Path::parse("rr"), 2, false},
          {4, Path::parse("l"), 3, false},
          {4, Path::parse("l"), 4, true}};
}

}  // namespace gsep
