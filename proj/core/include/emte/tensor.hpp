// SPDX-License-Identifier: MIT
//
// Dense 3D tensor algebra up to fourth order, sized for pointwise continuum
// mechanics work.  Conventions used throughout:
//   - Vec3, Ten2 are plain aggregates over double[3] / double[9] (row-major).
//   - double_contract(A, B) = A_ij B_ji  (transposed pairing).
//   - perm_contract(T)_i    = eps_ijk T_jk with eps_123 = +1.
//   - Ten3 carries a runtime tag telling whether the index pair sits first
//     (T_ab|c) or last (T_s|ab); contractions check the tag.
//   - Ten4 is indexed A(a,i,b,j) as used for second derivatives with respect
//     to two second-order arguments.
#pragma once

#include <array>
#include <cmath>
#include <iosfwd>

#include "emte/error.hpp"

namespace emte {

struct Vec3 {
  std::array<double, 3> c{0.0, 0.0, 0.0};

  constexpr Vec3() = default;
  constexpr Vec3(double x, double y, double z) : c{x, y, z} {}

  constexpr double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  constexpr double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  Vec3& operator+=(const Vec3& o);
  Vec3& operator-=(const Vec3& o);
  Vec3& operator*=(double s);
};

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a);
Vec3 operator*(double s, const Vec3& a);
Vec3 operator*(const Vec3& a, double s);
Vec3 operator/(const Vec3& a, double s);

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);
double norm_inf(const Vec3& a);
Vec3 normalized(const Vec3& a); // throws Error on (near-)zero input

// Second-order tensor, row-major: m[3*r + c].
struct Ten2 {
  std::array<double, 9> m{};

  constexpr Ten2() = default;

  constexpr double& operator()(int r, int c) { return m[static_cast<std::size_t>(3 * r + c)]; }
  constexpr double operator()(int r, int c) const { return m[static_cast<std::size_t>(3 * r + c)]; }

  static Ten2 identity();
  static Ten2 diag(double a, double b, double c);

  Ten2& operator+=(const Ten2& o);
  Ten2& operator-=(const Ten2& o);
  Ten2& operator*=(double s);
};

Ten2 operator+(const Ten2& a, const Ten2& b);
Ten2 operator-(const Ten2& a, const Ten2& b);
Ten2 operator-(const Ten2& a);
Ten2 operator*(double s, const Ten2& a);
Ten2 operator*(const Ten2& a, double s);
Ten2 operator*(const Ten2& a, const Ten2& b); // matrix product
Vec3 operator*(const Ten2& a, const Vec3& v); // (A v)_i = A_ij v_j

Ten2 transpose(const Ten2& a);
Vec3 transpose_apply(const Ten2& a, const Vec3& v); // (A^T v)_i = A_ji v_j
double trace(const Ten2& a);
double det(const Ten2& a);
Ten2 sym(const Ten2& a);
Ten2 skew(const Ten2& a);
Ten2 outer(const Vec3& a, const Vec3& b); // (a (x) b)_ij = a_i b_j
double norm_inf(const Ten2& a);
double norm_fro(const Ten2& a);

// Cofactor inverse.  Throws Error when |det A| <= 1e-12 * max|A_ij|^3,
// so the test scales with the entries and a zero matrix is always rejected.
Ten2 inverse(const Ten2& a);

// A_ij B_ji.
double double_contract(const Ten2& a, const Ten2& b);

// (eps : T)_i = eps_ijk T_jk.  perm_contract(outer(e1, e2)) = (0, 0, +1).
Vec3 perm_contract(const Ten2& t);

// hat(a) v = a x v.
Ten2 hat(const Vec3& a);

// Third-order tensor with a distinguished index pair and a single index.
// PairFirst stores T_{ab|c} at m[(3a+b)*3+c]; SingleFirst stores T_{s|ab}
// at m[(3s+a)*3+b].  at(...) always takes indices in storage order.
enum class Ten3Split { PairFirst, SingleFirst };

struct Ten3 {
  std::array<double, 27> m{};
  Ten3Split split = Ten3Split::PairFirst;

  constexpr Ten3() = default;
  explicit constexpr Ten3(Ten3Split s) : split(s) {}

  constexpr double& at(int i, int j, int k) {
    return m[static_cast<std::size_t>((3 * i + j) * 3 + k)];
  }
  constexpr double at(int i, int j, int k) const {
    return m[static_cast<std::size_t>((3 * i + j) * 3 + k)];
  }

  Ten3& operator+=(const Ten3& o); // throws on split mismatch
  Ten3& operator-=(const Ten3& o);
  Ten3& operator*=(double s);
};

Ten3 operator+(const Ten3& a, const Ten3& b);
Ten3 operator-(const Ten3& a, const Ten3& b);
Ten3 operator-(const Ten3& a);
Ten3 operator*(double s, const Ten3& a);

// Contract the single slot with a vector: PairFirst gives R_ab = T_ab|c v_c.
// Requires PairFirst; throws otherwise.
Ten2 contract_single(const Ten3& t, const Vec3& v);

// Contract the pair against a transposed second-order tensor:
//   PairFirst:   r_c = T_ab|c X_ba
//   SingleFirst: r_s = T_s|ab X_ba
Vec3 contract_pair(const Ten3& t, const Ten2& x);

// Contract the second pair slot with a vector for SingleFirst data:
//   R_sa = T_s|ab v_b.  Throws on PairFirst.
Ten2 contract_pair_second(const Ten3& t, const Vec3& v);

// Exchange pair and single: transpose3(T_ab|c) = S_c|ab (and back).
// Involutive together with the split flip.
Ten3 transpose3(const Ten3& t);

double norm_inf(const Ten3& t);

// Fourth-order tensor A(a,i,b,j), two second-order legs.
struct Ten4 {
  std::array<double, 81> m{};

  constexpr double& at(int a, int i, int b, int j) {
    return m[static_cast<std::size_t>(((3 * a + i) * 3 + b) * 3 + j)];
  }
  constexpr double at(int a, int i, int b, int j) const {
    return m[static_cast<std::size_t>(((3 * a + i) * 3 + b) * 3 + j)];
  }

  Ten4& operator+=(const Ten4& o);
  Ten4& operator-=(const Ten4& o);
  Ten4& operator*=(double s);
};

Ten4 operator+(const Ten4& a, const Ten4& b);
Ten4 operator-(const Ten4& a, const Ten4& b);
Ten4 operator*(double s, const Ten4& a);

// R_ai = A_aibj X_jb (second leg contracted against the transpose).
Ten2 contract_leg(const Ten4& a, const Ten2& x);

// Swap the two legs: S(b,j,a,i) = A(a,i,b,j).
Ten4 major_transpose(const Ten4& a);

double norm_inf(const Ten4& a);

std::ostream& operator<<(std::ostream& os, const Vec3& v);
std::ostream& operator<<(std::ostream& os, const Ten2& t);

} // namespace emte
