// Walkthrough: build a three-point space, push an operator through the
// difference-quotient embedding, and watch the lifted matrix commute.
#include <cstdio>

#include "liplift/free_space.hpp"
#include "liplift/lipschitz.hpp"
#include "liplift/metric_space.hpp"
#include "liplift/operator_lifting.hpp"
#include "liplift/scalar.hpp"

using namespace liplift;

int main() {
  using R = Rational;
  auto space = new_space<R>({"0", "a", "b"},
                            {{R(0), R(1), R(1)}, {R(1), R(0), R(1)}, {R(1), R(1), R(0)}}, 0);

  // S scales the 'a' coordinate and mixes a bit of 'b' into it
  LipOperator<R> op(space, space, {{R(2), R(1, 2)}, {R(0), R(1)}});

  R norm = operator_norm(op);
  std::printf("operator norm        = %s\n", norm.to_string().c_str());

  LiftingMatrix<R> lift = build_lifting(op, R(0));
  std::printf("lifting norm         = %s\n", lifting_norm(lift).to_string().c_str());
  std::printf("lifting rank         = %d\n", lifting_rank(lift));

  CommutationCheck<R> check = verify_commutation(op, lift);
  std::printf("commutation residual = %s\n", check.residual.to_string().c_str());

  // the rows are minimum-l1 molecular representations of S*(m_pq)
  PairSet pairs = lift.codomain_pairs();
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    std::printf("row (%s,%s): l1 = %s\n", space->label(pairs[r].x).c_str(),
                space->label(pairs[r].y).c_str(), lift.row_l1(r).to_string().c_str());
  }
  return check.residual == R(0) ? 0 : 1;
}
