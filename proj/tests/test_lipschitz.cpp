#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liplift/lipschitz.hpp"
#include "liplift/random.hpp"

using namespace liplift;

namespace {

SpacePtr<double> two_point(double d = 1.0) {
  return new_space<double>({"0", "a"}, {{0.0, d}, {d, 0.0}}, 0);
}

SpacePtr<double> equilateral3() {
  return new_space<double>({"0", "a", "b"}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, 0);
}

}  // namespace

TEST_CASE("lip_norm basics") {
  auto s = two_point();
  CHECK(lip_norm(LipschitzFunction<double>(s, {1.0})) == 1.0);
  CHECK(lip_norm(LipschitzFunction<double>::zero(s)) == 0.0);
  // max over the six quotients, attained at (a,b)
  CHECK(lip_norm(LipschitzFunction<double>(equilateral3(), {1.0, -1.0})) == 2.0);
  auto one = new_space<double>({"o"}, {{0.0}}, 0);
  CHECK(lip_norm(LipschitzFunction<double>::zero(one)) == 0.0);
}

TEST_CASE("de Leeuw matrix on the two-point space") {
  auto m = de_leeuw_matrix(two_point());
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 1);
  // pair order: (0,a) then (a,0)
  CHECK(m.entry(0, 0) == -1.0);
  CHECK(m.entry(1, 0) == 1.0);
}

TEST_CASE("de Leeuw rows carry +-1/d at the pair's columns") {
  auto s = equilateral3();
  auto m = de_leeuw_matrix(s);
  PairSet pairs = pair_set(s);
  int r = pairs.row(1, 2);  // (a, b)
  CHECK(m.entry(r, 0) == 1.0);
  CHECK(m.entry(r, 1) == -1.0);

  auto far = two_point(2.0);
  auto m2 = de_leeuw_matrix(far);
  int r2 = PairSet(2).row(1, 0);  // (a, 0)
  CHECK(m2.entry(r2, 0) == 0.5);
}

TEST_CASE("one-point space yields an empty embedding, not an error") {
  auto one = new_space<double>({"o"}, {{0.0}}, 0);
  auto m = de_leeuw_matrix(one);
  CHECK(m.rows() == 0);
  CHECK(m.cols() == 0);
}

TEST_CASE("apply_de_leeuw evaluates difference quotients") {
  auto s = two_point();
  auto v = apply_de_leeuw(LipschitzFunction<double>(s, {1.0}));
  REQUIRE(v.size() == 2);
  CHECK(v[0] == -1.0);  // pair (0,a): (f(0)-f(a))/1
  CHECK(v[1] == 1.0);   // pair (a,0)

  auto z = apply_de_leeuw(LipschitzFunction<double>::zero(s));
  CHECK(z == std::vector<double>{0.0, 0.0});

  // f(a)=1, f(b)=0 on the equilateral space: direct evaluation of 6 quotients
  auto e = equilateral3();
  auto w = apply_de_leeuw(LipschitzFunction<double>(e, {1.0, 0.0}));
  PairSet p = pair_set(e);
  CHECK(w[p.row(1, 0)] == 1.0);
  CHECK(w[p.row(0, 1)] == -1.0);
  CHECK(w[p.row(1, 2)] == 1.0);
  CHECK(w[p.row(2, 1)] == -1.0);
  CHECK(w[p.row(2, 0)] == 0.0);
  CHECK(w[p.row(0, 2)] == 0.0);
}

TEST_CASE("space mismatch is rejected") {
  auto f = LipschitzFunction<double>(two_point(), {1.0});
  auto m = de_leeuw_matrix(two_point(2.0));
  CHECK_THROWS_WITH_AS(apply_de_leeuw(m, f), doctest::Contains("SpaceMismatch"), error);
}

TEST_CASE("isometry: embedded sup equals lip_norm on the same arithmetic path") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    auto s = random_space<double>(rng, static_cast<int>(rng.next_int(1, 6)));
    auto f = random_function(rng, s);
    double sup = 0.0;
    for (double v : apply_de_leeuw(f)) sup = std::max(sup, std::fabs(v));
    CHECK(sup == lip_norm(f));  // exact equality, zero tolerance
  }
}

TEST_CASE("linearity of the embedding") {
  Rng rng(12);
  for (int t = 0; t < 50; ++t) {
    auto s = random_space<double>(rng, 4);
    auto f = random_function(rng, s);
    auto g = random_function(rng, s);
    double alpha = static_cast<double>(rng.next_int(-8, 8)) / 4.0;
    double beta = static_cast<double>(rng.next_int(-8, 8)) / 4.0;
    std::vector<double> combo(f.values());
    for (std::size_t i = 0; i < combo.size(); ++i) {
      combo[i] = alpha * f.values()[i] + beta * g.values()[i];
    }
    auto lhs = apply_de_leeuw(LipschitzFunction<double>(s, combo));
    auto vf = apply_de_leeuw(f);
    auto vg = apply_de_leeuw(g);
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      double rhs = alpha * vf[i] + beta * vg[i];
      double scale = std::max({1.0, std::fabs(lhs[i]), std::fabs(rhs)});
      CHECK(std::fabs(lhs[i] - rhs) / scale <= 1e-12);
    }
  }
}

TEST_CASE("antisymmetry: (x,y) and (y,x) components are exact negatives") {
  Rng rng(13);
  auto s = random_space<double>(rng, 5);
  auto f = random_function(rng, s);
  auto v = apply_de_leeuw(f);
  PairSet pairs = pair_set(s);
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    int mirror = pairs.row(pairs[r].y, pairs[r].x);
    CHECK(v[r] == -v[mirror]);
  }
}

TEST_CASE("lip_norm vanishes only at zero") {
  Rng rng(14);
  for (int t = 0; t < 50; ++t) {
    auto s = random_space<double>(rng, 4);
    auto f = random_function(rng, s);
    bool zero = true;
    for (double v : f.values()) zero = zero && v == 0.0;
    CHECK((lip_norm(f) == 0.0) == zero);
  }
}

TEST_CASE("dense matrix action agrees with the quotient path") {
  Rng rng(15);
  auto s = random_space<Rational>(rng, 4);
  auto f = random_function(rng, s);
  auto m = de_leeuw_matrix(s);
  auto dense = m.dense();
  auto quotients = apply_de_leeuw(f);
  for (int r = 0; r < m.rows(); ++r) {
    Rational acc(0);
    for (int c = 0; c < m.cols(); ++c) acc += dense[r][c] * f.values()[c];
    CHECK(acc == quotients[r]);  // exact in rational arithmetic
  }
}

TEST_CASE("composition of functions along a point map") {
  auto s = equilateral3();
  LipschitzFunction<double> f(s, {2.0, 3.0});

  BasePointMap<double> ident(s, s, {0, 1, 2});
  auto same = composition_function_map(ident, 1.0, f);
  CHECK(same.values() == f.values());
  auto doubled = composition_function_map(ident, 2.0, f);
  CHECK(doubled.values() == std::vector<double>{4.0, 6.0});

  BasePointMap<double> to_base(s, s, {0, 0, 0});
  auto collapsed = composition_function_map(to_base, 5.0, f);
  CHECK(collapsed.values() == std::vector<double>{0.0, 0.0});
}

TEST_CASE("maps that move the base point are rejected") {
  auto s = equilateral3();
  CHECK_THROWS_WITH_AS(BasePointMap<double>(s, s, {1, 0, 2}),
                       doctest::Contains("BaseNotPreserved"), error);
}
