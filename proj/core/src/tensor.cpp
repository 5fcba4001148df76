// SPDX-License-Identifier: MIT
#include "emte/tensor.hpp"

#include <algorithm>
#include <ostream>

namespace emte {

Vec3& Vec3::operator+=(const Vec3& o) {
  for (int i = 0; i < 3; ++i) c[i] += o.c[i];
  return *this;
}
Vec3& Vec3::operator-=(const Vec3& o) {
  for (int i = 0; i < 3; ++i) c[i] -= o.c[i];
  return *this;
}
Vec3& Vec3::operator*=(double s) {
  for (double& x : c) x *= s;
  return *this;
}

Vec3 operator+(const Vec3& a, const Vec3& b) { Vec3 r = a; r += b; return r; }
Vec3 operator-(const Vec3& a, const Vec3& b) { Vec3 r = a; r -= b; return r; }
Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
Vec3 operator*(double s, const Vec3& a) { Vec3 r = a; r *= s; return r; }
Vec3 operator*(const Vec3& a, double s) { return s * a; }
Vec3 operator/(const Vec3& a, double s) { return (1.0 / s) * a; }

double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1],
          a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const Vec3& a) {
  return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  if (!(n > 0.0) || !std::isfinite(n)) throw Error("normalized: zero or non-finite vector");
  return a / n;
}

Ten2 Ten2::identity() {
  Ten2 t;
  t(0, 0) = t(1, 1) = t(2, 2) = 1.0;
  return t;
}

Ten2 Ten2::diag(double a, double b, double c) {
  Ten2 t;
  t(0, 0) = a;
  t(1, 1) = b;
  t(2, 2) = c;
  return t;
}

Ten2& Ten2::operator+=(const Ten2& o) {
  for (int i = 0; i < 9; ++i) m[i] += o.m[i];
  return *this;
}
Ten2& Ten2::operator-=(const Ten2& o) {
  for (int i = 0; i < 9; ++i) m[i] -= o.m[i];
  return *this;
}
Ten2& Ten2::operator*=(double s) {
  for (double& x : m) x *= s;
  return *this;
}

Ten2 operator+(const Ten2& a, const Ten2& b) { Ten2 r = a; r += b; return r; }
Ten2 operator-(const Ten2& a, const Ten2& b) { Ten2 r = a; r -= b; return r; }
Ten2 operator-(const Ten2& a) { Ten2 r = a; r *= -1.0; return r; }
Ten2 operator*(double s, const Ten2& a) { Ten2 r = a; r *= s; return r; }
Ten2 operator*(const Ten2& a, double s) { return s * a; }

Ten2 operator*(const Ten2& a, const Ten2& b) {
  Ten2 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

Vec3 operator*(const Ten2& a, const Vec3& v) {
  Vec3 r;
  for (int i = 0; i < 3; ++i) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) s += a(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

Ten2 transpose(const Ten2& a) {
  Ten2 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(j, i);
  return r;
}

Vec3 transpose_apply(const Ten2& a, const Vec3& v) {
  Vec3 r;
  for (int i = 0; i < 3; ++i) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) s += a(j, i) * v[j];
    r[i] = s;
  }
  return r;
}

double trace(const Ten2& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

double det(const Ten2& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

Ten2 sym(const Ten2& a) { return 0.5 * (a + transpose(a)); }
Ten2 skew(const Ten2& a) { return 0.5 * (a - transpose(a)); }

Ten2 outer(const Vec3& a, const Vec3& b) {
  Ten2 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a[i] * b[j];
  return r;
}

double norm_inf(const Ten2& a) {
  double m = 0.0;
  for (double x : a.m) m = std::max(m, std::abs(x));
  return m;
}

double norm_fro(const Ten2& a) {
  double s = 0.0;
  for (double x : a.m) s += x * x;
  return std::sqrt(s);
}

Ten2 inverse(const Ten2& a) {
  const double d = det(a);
  const double scale = norm_inf(a);
  if (!(std::abs(d) > 1e-12 * scale * scale * scale)) {
    throw Error("inverse: tensor is singular or near-singular");
  }
  Ten2 r;
  r(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  r(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
  r(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
  r(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
  r(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
  r(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
  r(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
  r(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
  r(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  r *= 1.0 / d;
  return r;
}

double double_contract(const Ten2& a, const Ten2& b) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += a(i, j) * b(j, i);
  return s;
}

Vec3 perm_contract(const Ten2& t) {
  return {t(1, 2) - t(2, 1), t(2, 0) - t(0, 2), t(0, 1) - t(1, 0)};
}

Ten2 hat(const Vec3& a) {
  Ten2 r;
  r(0, 1) = -a[2];
  r(0, 2) = a[1];
  r(1, 0) = a[2];
  r(1, 2) = -a[0];
  r(2, 0) = -a[1];
  r(2, 1) = a[0];
  return r;
}

static void check_split(const Ten3& a, const Ten3& b, const char* op) {
  if (a.split != b.split) throw Error(std::string("Ten3 ") + op + ": split mismatch");
}

Ten3& Ten3::operator+=(const Ten3& o) {
  check_split(*this, o, "+=");
  for (int i = 0; i < 27; ++i) m[i] += o.m[i];
  return *this;
}
Ten3& Ten3::operator-=(const Ten3& o) {
  check_split(*this, o, "-=");
  for (int i = 0; i < 27; ++i) m[i] -= o.m[i];
  return *this;
}
Ten3& Ten3::operator*=(double s) {
  for (double& x : m) x *= s;
  return *this;
}

Ten3 operator+(const Ten3& a, const Ten3& b) { Ten3 r = a; r += b; return r; }
Ten3 operator-(const Ten3& a, const Ten3& b) { Ten3 r = a; r -= b; return r; }
Ten3 operator-(const Ten3& a) { Ten3 r = a; r *= -1.0; return r; }
Ten3 operator*(double s, const Ten3& a) { Ten3 r = a; r *= s; return r; }

Ten2 contract_single(const Ten3& t, const Vec3& v) {
  if (t.split != Ten3Split::PairFirst) {
    throw Error("contract_single: requires the index pair stored first");
  }
  Ten2 r;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double s = 0.0;
      for (int c = 0; c < 3; ++c) s += t.at(a, b, c) * v[c];
      r(a, b) = s;
    }
  return r;
}

Vec3 contract_pair(const Ten3& t, const Ten2& x) {
  Vec3 r;
  if (t.split == Ten3Split::PairFirst) {
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) s += t.at(a, b, c) * x(b, a);
      r[c] = s;
    }
  } else {
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) s += t.at(c, a, b) * x(b, a);
      r[c] = s;
    }
  }
  return r;
}

Ten2 contract_pair_second(const Ten3& t, const Vec3& v) {
  if (t.split != Ten3Split::SingleFirst) {
    throw Error("contract_pair_second: requires the single index stored first");
  }
  Ten2 r;
  for (int s = 0; s < 3; ++s)
    for (int a = 0; a < 3; ++a) {
      double acc = 0.0;
      for (int b = 0; b < 3; ++b) acc += t.at(s, a, b) * v[b];
      r(s, a) = acc;
    }
  return r;
}

Ten3 transpose3(const Ten3& t) {
  if (t.split == Ten3Split::PairFirst) {
    Ten3 r(Ten3Split::SingleFirst);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) r.at(c, a, b) = t.at(a, b, c);
    return r;
  }
  Ten3 r(Ten3Split::PairFirst);
  for (int s = 0; s < 3; ++s)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) r.at(a, b, s) = t.at(s, a, b);
  return r;
}

double norm_inf(const Ten3& t) {
  double m = 0.0;
  for (double x : t.m) m = std::max(m, std::abs(x));
  return m;
}

Ten4& Ten4::operator+=(const Ten4& o) {
  for (int i = 0; i < 81; ++i) m[i] += o.m[i];
  return *this;
}
Ten4& Ten4::operator-=(const Ten4& o) {
  for (int i = 0; i < 81; ++i) m[i] -= o.m[i];
  return *this;
}
Ten4& Ten4::operator*=(double s) {
  for (double& x : m) x *= s;
  return *this;
}

Ten4 operator+(const Ten4& a, const Ten4& b) { Ten4 r = a; r += b; return r; }
Ten4 operator-(const Ten4& a, const Ten4& b) { Ten4 r = a; r -= b; return r; }
Ten4 operator*(double s, const Ten4& a) { Ten4 r = a; r *= s; return r; }

Ten2 contract_leg(const Ten4& t, const Ten2& x) {
  Ten2 r;
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i) {
      double s = 0.0;
      for (int b = 0; b < 3; ++b)
        for (int j = 0; j < 3; ++j) s += t.at(a, i, b, j) * x(j, b);
      r(a, i) = s;
    }
  return r;
}

Ten4 major_transpose(const Ten4& t) {
  Ten4 r;
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i)
      for (int b = 0; b < 3; ++b)
        for (int j = 0; j < 3; ++j) r.at(b, j, a, i) = t.at(a, i, b, j);
  return r;
}

double norm_inf(const Ten4& t) {
  double m = 0.0;
  for (double x : t.m) m = std::max(m, std::abs(x));
  return m;
}

std::ostream& operator<<(std::ostream& os, const Vec3& v) {
  return os << "[" << v[0] << ", " << v[1] << ", " << v[2] << "]";
}

std::ostream& operator<<(std::ostream& os, const Ten2& t) {
  os << "[";
  for (int i = 0; i < 3; ++i) {
    os << "[" << t(i, 0) << ", " << t(i, 1) << ", " << t(i, 2) << "]";
    if (i < 2) os << ", ";
  }
  return os << "]";
}

} // namespace emte
