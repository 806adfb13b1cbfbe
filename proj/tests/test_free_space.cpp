#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liplift/free_space.hpp"
#include "liplift/random.hpp"
#include "oracles.hpp"

using namespace liplift;

namespace {

template <class T>
SpacePtr<T> two_point() {
  const T z = scalar_traits<T>::zero();
  const T one = scalar_traits<T>::one();
  return new_space<T>({"0", "a"}, {{z, one}, {one, z}}, 0);
}

template <class T>
SpacePtr<T> equilateral3() {
  const T z = scalar_traits<T>::zero();
  const T one = scalar_traits<T>::one();
  return new_space<T>({"0", "a", "b"}, {{z, one, one}, {one, z, one}, {one, one, z}}, 0);
}

// the LP constraint data of the Lipschitz unit ball, for the vertex oracle
template <class T>
void lip_ball(const SpacePtr<T>& s, Matrix<T>& g, std::vector<T>& h) {
  PairSet pairs(s->size());
  g.assign(pairs.size(), std::vector<T>(s->non_base_count(), scalar_traits<T>::zero()));
  h.assign(pairs.size(), scalar_traits<T>::zero());
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    int cx = s->coord_of(pairs[r].x);
    int cy = s->coord_of(pairs[r].y);
    if (cx >= 0) g[r][cx] = scalar_traits<T>::one();
    if (cy >= 0) g[r][cy] = -scalar_traits<T>::one();
    h[r] = s->dist(pairs[r].x, pairs[r].y);
  }
}

}  // namespace

TEST_CASE("molecule coefficients") {
  auto s = two_point<double>();
  CHECK(molecule(s, 1, 0).coeffs() == std::vector<double>{1.0});
  CHECK(molecule(s, 0, 1).coeffs() == std::vector<double>{-1.0});
  auto e = equilateral3<double>();
  CHECK(molecule(e, 1, 2).coeffs() == std::vector<double>{1.0, -1.0});
  CHECK_THROWS_WITH_AS(molecule(s, 1, 1), doctest::Contains("EqualPoints"), error);
}

TEST_CASE("pairing is the bilinear evaluation") {
  auto s = two_point<double>();
  LipschitzFunction<double> f(s, {1.0});
  CHECK(pairing(molecule(s, 1, 0), f) == 1.0);
  CHECK(pairing(FreeVector<double>::zero(s), f) == 0.0);

  auto e = equilateral3<double>();
  LipschitzFunction<double> g(e, {2.0, 3.0});
  auto mu = FreeVector<double>::dirac(e, 1) + FreeVector<double>::dirac(e, 2);
  CHECK(pairing(mu, g) == 5.0);

  CHECK_THROWS_WITH_AS(pairing(molecule(s, 1, 0), g), doctest::Contains("SpaceMismatch"), error);
}

TEST_CASE("free norm of molecules is exactly 1") {
  // witness f(z) = d(z,y) - d(0,y) attains 1; the LP certifies <= 1
  std::vector<SpacePtr<Rational>> fixtures = {
      two_point<Rational>(), equilateral3<Rational>(), gen_ultrametric_cube<Rational>(2)};
  Rng rng(21);
  fixtures.push_back(random_space<Rational>(rng, 4));
  for (const auto& s : fixtures) {
    PairSet pairs(s->size());
    for (std::size_t r = 0; r < pairs.size(); ++r) {
      CHECK(free_norm(molecule(s, pairs[r].x, pairs[r].y)) == Rational(1));
    }
  }
}

TEST_CASE("free norm of molecules in float stays within 1e-9 of 1") {
  Rng rng(22);
  for (int t = 0; t < 5; ++t) {
    auto s = random_space<double>(rng, static_cast<int>(rng.next_int(2, 5)));
    PairSet pairs(s->size());
    for (std::size_t r = 0; r < pairs.size(); ++r) {
      CHECK(std::fabs(free_norm(molecule(s, pairs[r].x, pairs[r].y)) - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("free norm of a dirac is the distance to base") {
  Rng rng(23);
  for (int t = 0; t < 8; ++t) {
    auto s = random_space<Rational>(rng, static_cast<int>(rng.next_int(2, 4)));
    for (int z = 0; z < s->size(); ++z) {
      if (z == s->base()) continue;
      CHECK(free_norm(FreeVector<Rational>::dirac(s, z)) == s->dist(z, s->base()));
    }
  }
  CHECK(free_norm(FreeVector<double>::zero(two_point<double>())) == 0.0);
}

TEST_CASE("free norm witness lies in the unit ball and attains the value") {
  Rng rng(24);
  for (int t = 0; t < 10; ++t) {
    auto s = random_space<Rational>(rng, 4);
    auto mu = random_free_vector(rng, s);
    auto res = free_norm_witness(mu);
    CHECK(lip_norm(res.witness) <= Rational(1));
    CHECK(pairing(mu, res.witness) == res.value);
  }
}

TEST_CASE("optimal representation reconstructs the target") {
  auto e = equilateral3<Rational>();
  auto mu = molecule(e, 1, 2);
  auto rep = optimal_representation(mu);
  CHECK(rep.l1_value == Rational(1));
  CHECK(rep.reconstruct().coeffs() == mu.coeffs());

  auto s = two_point<Rational>();
  auto rep2 = optimal_representation(FreeVector<Rational>::dirac(s, 1));
  CHECK(rep2.l1_value == Rational(1));
  CHECK(rep2.reconstruct().coeffs() == FreeVector<Rational>::dirac(s, 1).coeffs());

  // delta_a + delta_b on the equilateral space: dual witness f == 1 on {a,b}
  auto mu3 = FreeVector<Rational>::dirac(e, 1) + FreeVector<Rational>::dirac(e, 2);
  auto rep3 = optimal_representation(mu3);
  CHECK(rep3.l1_value == Rational(2));
  CHECK(free_norm(mu3) == Rational(2));
}

TEST_CASE("duality gap vanishes") {
  CHECK(duality_gap(FreeVector<Rational>::zero(two_point<Rational>())) == Rational(0));
  auto e = equilateral3<Rational>();
  CHECK(duality_gap(molecule(e, 1, 2)) == Rational(0));

  Rng rng(25);
  for (int t = 0; t < 10; ++t) {
    auto s = random_space<Rational>(rng, 4);
    CHECK(duality_gap(random_free_vector(rng, s)) == Rational(0));
  }
  for (int t = 0; t < 10; ++t) {
    auto s = random_space<double>(rng, 4);
    CHECK(duality_gap(random_free_vector(rng, s)) <= 1e-9);
  }
}

TEST_CASE("free norm is a norm: homogeneity and triangle inequality") {
  Rng rng(26);
  for (int t = 0; t < 12; ++t) {
    auto s = random_space<double>(rng, static_cast<int>(rng.next_int(2, 5)));
    auto mu = random_free_vector(rng, s);
    auto nu = random_free_vector(rng, s);
    double alpha = static_cast<double>(rng.next_int(-8, 8)) / 4.0;
    CHECK(std::fabs(free_norm(alpha * mu) - std::fabs(alpha) * free_norm(mu)) <= 1e-9);
    CHECK(free_norm(mu + nu) <= free_norm(mu) + free_norm(nu) + 1e-9);
  }
}

TEST_CASE("pairing is bounded by the product of norms") {
  Rng rng(27);
  for (int t = 0; t < 20; ++t) {
    auto s = random_space<double>(rng, static_cast<int>(rng.next_int(2, 5)));
    auto mu = random_free_vector(rng, s);
    auto f = random_function(rng, s);
    CHECK(pairing(mu, f) <= free_norm(mu) * lip_norm(f) + 1e-9);
  }
}

TEST_CASE("free norm matches exhaustive vertex enumeration") {
  // all fixture spaces with at most 3 non-base points, exact arithmetic
  std::vector<SpacePtr<Rational>> fixtures = {two_point<Rational>(), equilateral3<Rational>(),
                                              gen_ultrametric_cube<Rational>(2)};
  Rng rng(28);
  fixtures.push_back(random_space<Rational>(rng, 4));
  fixtures.push_back(random_space<Rational>(rng, 3));
  for (const auto& s : fixtures) {
    Matrix<Rational> g;
    std::vector<Rational> h;
    lip_ball(s, g, h);
    std::vector<FreeVector<Rational>> targets;
    PairSet pairs(s->size());
    for (std::size_t r = 0; r < std::min<std::size_t>(pairs.size(), 4); ++r) {
      targets.push_back(molecule(s, pairs[r].x, pairs[r].y));
    }
    targets.push_back(random_free_vector(rng, s));
    targets.push_back(random_free_vector(rng, s));
    for (const auto& mu : targets) {
      auto oracle = testing::max_over_vertices(mu.coeffs(), g, h);
      REQUIRE(oracle.has_value());
      CHECK(free_norm(mu) == *oracle);
    }
  }
}

TEST_CASE("one-point space structures are empty") {
  auto one = new_space<Rational>({"o"}, {{Rational(0)}}, 0);
  auto mu = FreeVector<Rational>::zero(one);
  CHECK(free_norm(mu) == Rational(0));
  auto rep = optimal_representation(mu);
  CHECK(rep.l1_value == Rational(0));
  CHECK(rep.coefficients.empty());
}
