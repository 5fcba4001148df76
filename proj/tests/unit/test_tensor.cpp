#include "doctest.h"

#include <cmath>

#include "emte/rng.hpp"
#include "emte/tensor.hpp"

using namespace emte;

namespace {

// Independent brute-force products used as oracles below.
Ten2 oracle_contract_single(const Ten3& t, const Vec3& v) {
  Ten2 r;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) r(a, b) += t.at(a, b, c) * v[c];
  return r;
}

Ten2 oracle_contract_leg(const Ten4& t, const Ten2& x) {
  Ten2 r;
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i)
      for (int b = 0; b < 3; ++b)
        for (int j = 0; j < 3; ++j) r(a, i) += t.at(a, i, b, j) * x(j, b);
  return r;
}

Ten3 random_ten3(Rng& rng, Ten3Split split) {
  Ten3 t(split);
  for (double& x : t.m) x = rng.uniform(-2.0, 2.0);
  return t;
}

Ten4 random_ten4(Rng& rng) {
  Ten4 t;
  for (double& x : t.m) x = rng.uniform(-2.0, 2.0);
  return t;
}

} // namespace

TEST_CASE("vector basics") {
  const Vec3 a{1.0, 2.0, 3.0}, b{-2.0, 0.5, 4.0};
  CHECK(dot(a, b) == doctest::Approx(-2.0 + 1.0 + 12.0));
  CHECK(norm(Vec3{3.0, 4.0, 0.0}) == doctest::Approx(5.0));

  const Vec3 c = cross(Vec3{1, 0, 0}, Vec3{0, 1, 0});
  CHECK(c[0] == 0.0);
  CHECK(c[1] == 0.0);
  CHECK(c[2] == 1.0);

  // a x b is orthogonal to both factors and antisymmetric.
  Rng rng(11);
  for (int k = 0; k < 20; ++k) {
    const Vec3 u = rng.vec(-3, 3), w = rng.vec(-3, 3);
    const Vec3 x = cross(u, w);
    CHECK(std::abs(dot(x, u)) < 1e-13);
    CHECK(std::abs(dot(x, w)) < 1e-13);
    CHECK(norm_inf(x + cross(w, u)) < 1e-15);
  }

  CHECK_THROWS_AS((void)normalized(Vec3{0, 0, 0}), Error);
}

TEST_CASE("matrix product, transpose, trace, det") {
  Ten2 A, B;
  int v = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) A(i, j) = v++;
  v = 9;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) B(i, j) = v--;

  // Row-by-column oracle.
  Ten2 P;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) P(i, j) += A(i, k) * B(k, j);
  const Ten2 Q = A * B;
  for (int i = 0; i < 9; ++i) CHECK(Q.m[i] == doctest::Approx(P.m[i]));

  CHECK(trace(A) == doctest::Approx(15.0));
  CHECK(det(Ten2::identity()) == doctest::Approx(1.0));
  CHECK(det(Ten2::diag(2, 3, 4)) == doctest::Approx(24.0));

  const Ten2 At = transpose(A);
  CHECK(At(0, 1) == A(1, 0));
  CHECK(At(2, 1) == A(1, 2));

  const Vec3 x{1, -1, 2};
  const Vec3 y = transpose_apply(A, x);
  const Vec3 y2 = transpose(A) * x;
  CHECK(norm_inf(y - y2) < 1e-15);
}

TEST_CASE("double contraction uses the transposed pairing") {
  // sum_ij A_ij B_ji for A = 1..9 row-major, B = 9..1 row-major equals 189.
  Ten2 A, B;
  int v = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) A(i, j) = v++;
  v = 9;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) B(i, j) = v--;
  CHECK(double_contract(A, B) == doctest::Approx(189.0));

  // tau : Gamma with tau = e1 (x) e2 and Gamma = e2 (x) e1 picks T_12 G_21 = 1.
  const Ten2 tau = outer(Vec3{1, 0, 0}, Vec3{0, 1, 0});
  const Ten2 gma = outer(Vec3{0, 1, 0}, Vec3{1, 0, 0});
  CHECK(double_contract(tau, gma) == doctest::Approx(1.0));
  // The plain (non-transposed) pairing would give 0 here.
  CHECK(double_contract(tau, tau) == doctest::Approx(0.0));
}

TEST_CASE("permutation contraction and hat") {
  // eps_ijk T_jk on e1 (x) e2: only eps_312 T_12 contributes, giving +1 in slot 3.
  const Vec3 p = perm_contract(outer(Vec3{1, 0, 0}, Vec3{0, 1, 0}));
  CHECK(p[0] == 0.0);
  CHECK(p[1] == 0.0);
  CHECK(p[2] == 1.0);

  // Antisymmetry: symmetric tensors map to zero.
  Rng rng(7);
  for (int k = 0; k < 10; ++k) {
    const Ten2 s = sym(rng.ten2(-2, 2));
    CHECK(norm_inf(perm_contract(s)) < 1e-15);
  }

  // perm_contract(a (x) b) = -(a x b): eps_ijk a_j b_k with the pairing above.
  for (int k = 0; k < 10; ++k) {
    const Vec3 a = rng.vec(-2, 2), b = rng.vec(-2, 2);
    CHECK(norm_inf(perm_contract(outer(a, b)) - cross(a, b)) < 1e-14);
    CHECK(norm_inf(hat(a) * b - cross(a, b)) < 1e-15);
  }
}

TEST_CASE("inverse: cofactor formula and singularity guard") {
  const Ten2 D = Ten2::diag(2, 4, 5);
  const Ten2 Di = inverse(D);
  CHECK(Di(0, 0) == doctest::Approx(0.5));
  CHECK(Di(1, 1) == doctest::Approx(0.25));
  CHECK(Di(2, 2) == doctest::Approx(0.2));

  Rng rng(23);
  for (int k = 0; k < 25; ++k) {
    const Ten2 F = rng.deformation(0.4);
    const Ten2 Fi = inverse(F);
    CHECK(norm_inf(F * Fi - Ten2::identity()) < 1e-13);
    CHECK(norm_inf(Fi * F - Ten2::identity()) < 1e-13);
  }

  Ten2 singular = outer(Vec3{1, 2, 3}, Vec3{4, 5, 6}); // rank one
  CHECK_THROWS_AS((void)inverse(singular), Error);
  CHECK_THROWS_AS((void)inverse(Ten2{}), Error);

  // Threshold scales with the entries: a well-conditioned tiny matrix inverts.
  const Ten2 tiny = 1e-8 * Ten2::identity();
  CHECK(norm_inf(inverse(tiny) - 1e8 * Ten2::identity()) < 1.0);
}

TEST_CASE("third-order contractions against brute force") {
  Rng rng(31);
  for (int k = 0; k < 20; ++k) {
    const Ten3 t = random_ten3(rng, Ten3Split::PairFirst);
    const Vec3 v = rng.vec(-2, 2);
    const Ten2 x = rng.ten2(-2, 2);

    const Ten2 r1 = contract_single(t, v);
    const Ten2 r1o = oracle_contract_single(t, v);
    CHECK(norm_inf(r1 - r1o) < 1e-13);

    // r_c = T_ab|c X_ba
    Vec3 r2o;
    for (int c = 0; c < 3; ++c)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) r2o[c] += t.at(a, b, c) * x(b, a);
    CHECK(norm_inf(contract_pair(t, x) - r2o) < 1e-13);

    // Transposition exchanges the slot blocks and is involutive.
    const Ten3 s = transpose3(t);
    CHECK(s.split == Ten3Split::SingleFirst);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) CHECK(s.at(c, a, b) == t.at(a, b, c));
    const Ten3 tt = transpose3(s);
    CHECK(tt.split == Ten3Split::PairFirst);
    CHECK(norm_inf(tt - t) < 1e-15);

    // contract_pair agrees across the two storage orders.
    CHECK(norm_inf(contract_pair(s, x) - r2o) < 1e-13);

    // Pair-second contraction for single-first storage.
    const Ten2 r3 = contract_pair_second(s, v);
    Ten2 r3o;
    for (int cs = 0; cs < 3; ++cs)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) r3o(cs, a) += s.at(cs, a, b) * v[b];
    CHECK(norm_inf(r3 - r3o) < 1e-13);
  }

  const Ten3 wrong = random_ten3(rng, Ten3Split::SingleFirst);
  CHECK_THROWS_AS((void)contract_single(wrong, Vec3{1, 0, 0}), Error);
}

TEST_CASE("fourth-order contraction and major transpose") {
  Rng rng(41);
  for (int k = 0; k < 20; ++k) {
    const Ten4 t = random_ten4(rng);
    const Ten2 x = rng.ten2(-2, 2);
    CHECK(norm_inf(contract_leg(t, x) - oracle_contract_leg(t, x)) < 1e-13);

    const Ten4 mt = major_transpose(t);
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 3; ++i)
        for (int b = 0; b < 3; ++b)
          for (int j = 0; j < 3; ++j) CHECK(mt.at(b, j, a, i) == t.at(a, i, b, j));
  }
}

TEST_CASE("deterministic random streams") {
  Rng a(123), b(123);
  for (int i = 0; i < 10; ++i) CHECK(a.uniform(0, 1) == b.uniform(0, 1));
  Rng c(124);
  bool any_diff = false;
  for (int i = 0; i < 10; ++i) any_diff = any_diff || (Rng(123).raw() != c.raw());
  CHECK(any_diff);
}
