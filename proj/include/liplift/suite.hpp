#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "liplift/free_space.hpp"
#include "liplift/lipschitz.hpp"
#include "liplift/metric_space.hpp"
#include "liplift/operator_lifting.hpp"
#include "liplift/random.hpp"
#include "liplift/scalar.hpp"

namespace liplift {

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::vector<int> sizes = {2, 3, 4, 5};
  int trials = 200;
  std::string inject_fault;  // property name to corrupt, for negative tests
};

struct PropertyResult {
  std::string name;
  bool pass = true;
  long checks = 0;
  std::string witness;  // description of the first failing instance
};

// Randomized property battery over generated fixtures. Stops at the first
// failing property; the returned list carries one entry per property run.
template <class T>
std::vector<PropertyResult> run_suite(const SuiteConfig& cfg) {
  const T tol = scalar_traits<T>::exact ? scalar_traits<T>::zero()
                                        : scalar_traits<T>::from_ratio(1, 1000000000);
  const T residual_tol = scalar_traits<T>::exact ? scalar_traits<T>::zero()
                                                 : scalar_traits<T>::from_ratio(1, 100000000);
  Rng rng(cfg.seed);
  std::vector<PropertyResult> out;

  std::vector<SpacePtr<T>> pool;
  for (int s : cfg.sizes) {
    if (s < 1) continue;
    pool.push_back(random_space<T>(rng, s));
    pool.push_back(random_space<T>(rng, s));
  }
  if (pool.empty()) pool.push_back(random_space<T>(rng, 2));

  auto fail = [&](PropertyResult& r, const std::string& witness) {
    r.pass = false;
    r.witness = witness;
  };

  auto describe = [](const SpacePtr<T>& sp) {
    return std::to_string(sp->size()) + " points";
  };

  // de_leeuw_isometry: sup of the embedded vector equals the Lipschitz norm
  // on the same arithmetic path.
  {
    PropertyResult r;
    r.name = "de_leeuw_isometry";
    int per_space = cfg.trials / static_cast<int>(pool.size()) + 1;
    for (const auto& sp : pool) {
      for (int t = 0; t < per_space && r.pass; ++t) {
        LipschitzFunction<T> f = random_function(rng, sp);
        T sup = scalar_traits<T>::zero();
        for (const T& v : apply_de_leeuw(f)) {
          T a = scalar_traits<T>::abs(v);
          if (a > sup) sup = a;
        }
        ++r.checks;
        if (!(sup == lip_norm(f))) {
          fail(r, "embedded sup differs from lip_norm on a space with " + describe(sp));
        }
      }
    }
    out.push_back(r);
    if (!r.pass) return out;
  }

  // free_norm_duality: primal LP value matches the min-l1 representation.
  {
    PropertyResult r;
    r.name = "free_norm_duality";
    int per_space = cfg.trials / static_cast<int>(pool.size()) + 1;
    for (const auto& sp : pool) {
      for (int t = 0; t < per_space && r.pass; ++t) {
        FreeVector<T> mu = random_free_vector(rng, sp);
        ++r.checks;
        if (!(duality_gap(mu) <= tol)) {
          fail(r, "duality gap above tolerance on a space with " + describe(sp));
        }
      }
    }
    out.push_back(r);
    if (!r.pass) return out;
  }

  // molecule_norm: every normalized molecule has free norm 1.
  {
    PropertyResult r;
    r.name = "molecule_norm";
    for (const auto& sp : pool) {
      if (sp->size() > 5) continue;
      PairSet pairs(sp->size());
      for (std::size_t p = 0; p < pairs.size() && r.pass; ++p) {
        ++r.checks;
        T v = free_norm(molecule(sp, pairs[p].x, pairs[p].y));
        if (!(scalar_traits<T>::abs(v - scalar_traits<T>::one()) <= tol)) {
          fail(r, "free_norm(m_xy) != 1 at pair (" + sp->label(pairs[p].x) + "," +
                      sp->label(pairs[p].y) + ") on a space with " + describe(sp));
        }
      }
    }
    out.push_back(r);
    if (!r.pass) return out;
  }

  // lifting_bound and verify_commutation over random operators.
  {
    PropertyResult bound;
    bound.name = "lifting_bound";
    PropertyResult comm;
    comm.name = "verify_commutation";
    bool injected = false;
    int nops = cfg.trials / 20 + 1;
    for (int t = 0; t < nops && bound.pass && comm.pass; ++t) {
      const auto& dom = pool[static_cast<std::size_t>(rng.next_int(0, pool.size() - 1))];
      const auto& cod = pool[static_cast<std::size_t>(rng.next_int(0, pool.size() - 1))];
      if (dom->size() < 2 || cod->size() < 2) continue;
      LipOperator<T> op = random_operator(rng, dom, cod);
      T norm = operator_norm(op);
      LiftingMatrix<T> lift = build_lifting(op, scalar_traits<T>::zero());
      ++bound.checks;
      if (!(scalar_traits<T>::abs(lifting_norm(lift) - norm) <= tol)) {
        fail(bound, "lifting norm differs from operator norm, |M|=" + describe(dom) +
                        " |N|=" + describe(cod));
      }
      if (cfg.inject_fault == "verify_commutation" && !injected) {
        injected = true;
        Matrix<T> rows = lift.rows();
        rows[0][0] += scalar_traits<T>::one();
        lift = LiftingMatrix<T>(op.domain(), op.codomain(), std::move(rows));
      }
      ++comm.checks;
      T res = verify_commutation(op, lift).residual;
      if (!(res <= residual_tol)) {
        fail(comm, "commutation residual " + scalar_traits<T>::to_string(res) +
                       " above tolerance, operator " + std::to_string(t) + ", |M| " +
                       describe(dom) + ", |N| " + describe(cod));
      }
    }
    out.push_back(bound);
    if (!bound.pass) return out;
    out.push_back(comm);
    if (!comm.pass) return out;
  }

  // continuity_modulus: the adjoint molecule map obeys its explicit modulus.
  {
    PropertyResult r;
    r.name = "continuity_modulus";
    for (const auto& sp : pool) {
      if (sp->size() < 2) continue;
      const auto& dom = pool[static_cast<std::size_t>(rng.next_int(0, pool.size() - 1))];
      LipOperator<T> op = random_operator(rng, dom, sp);
      ++r.checks;
      T worst = continuity_modulus_check(op, cfg.trials / 4 + 1, rng.next_u64());
      if (!(worst <= tol)) {
        fail(r, "modulus violated by " + scalar_traits<T>::to_string(worst) +
                    " on a codomain with " + describe(sp));
      }
      if (!r.pass) break;
    }
    out.push_back(r);
    if (!r.pass) return out;
  }

  // composition_cross_check: explicit composition lifting commutes and its
  // norm matches the distance-ratio formula; the LP lifting never beats it.
  {
    PropertyResult r;
    r.name = "composition_cross_check";
    int done = 0;
    for (const auto& sp : pool) {
      if (sp->size() < 2 || done >= 8) continue;
      ++done;
      std::vector<int> perm = random_permutation(rng, sp->size(), sp->base());
      BasePointMap<T> gamma(sp, sp, perm);
      T r_scale = scalar_traits<T>::from_ratio(rng.next_int(1, 32), 16);
      if (rng.next_int(0, 1) == 1) r_scale = -r_scale;
      LipOperator<T> op = composition_operator(gamma, r_scale);
      LiftingMatrix<T> lift = composition_lifting(gamma, r_scale);
      ++r.checks;
      T res = verify_commutation(op, lift).residual;
      if (!(res <= residual_tol)) {
        fail(r, "composition lifting fails to commute on a space with " + describe(sp));
        break;
      }
      T expected = scalar_traits<T>::zero();
      PairSet pairs(sp->size());
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        T v = scalar_traits<T>::abs(r_scale) * sp->dist(perm[pairs[p].x], perm[pairs[p].y]) /
              sp->dist(pairs[p].x, pairs[p].y);
        if (v > expected) expected = v;
      }
      if (!(scalar_traits<T>::abs(lifting_norm(lift) - expected) <= tol)) {
        fail(r, "composition lifting norm differs from the distance-ratio formula");
        break;
      }
      T built = lifting_norm(build_lifting(op, scalar_traits<T>::zero()));
      if (!(built <= expected + tol)) {
        fail(r, "LP lifting norm exceeds the composition norm");
        break;
      }
    }
    out.push_back(r);
    if (!r.pass) return out;
  }

  // degenerate_paths: the one-point space flows through every operation.
  {
    PropertyResult r;
    r.name = "degenerate_paths";
    bool has_one = false;
    for (int s : cfg.sizes) has_one = has_one || s == 1;
    if (has_one) {
      SpacePtr<T> one = new_space<T>({"o"}, {{scalar_traits<T>::zero()}}, 0);
      ++r.checks;
      bool ok = pair_set(one).size() == 0 &&
                lip_norm(LipschitzFunction<T>::zero(one)) == scalar_traits<T>::zero() &&
                free_norm(FreeVector<T>::zero(one)) == scalar_traits<T>::zero() &&
                operator_norm(LipOperator<T>::zero(one, one)) == scalar_traits<T>::zero();
      if (!ok) fail(r, "one-point space produced nonempty or nonzero structures");
    }
    out.push_back(r);
    if (!r.pass) return out;
  }

  return out;
}

}  // namespace liplift
