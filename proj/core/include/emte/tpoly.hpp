// SPDX-License-Identifier: MIT
//
// Space-time test functions of the form
//     sum_k  c_k * p0^a p1^b p2^c * cos(omega_k t + phase_k)
// (a constant time factor is cos with omega = phase = 0).  The family is
// closed under +, scaling, spatial derivatives, and time derivatives, which
// makes it possible to build manufactured fields whose residuals and hooks
// are exact to roundoff.
#pragma once

#include <cmath>
#include <vector>

#include "emte/fields.hpp"
#include "emte/motion.hpp"
#include "emte/tensor.hpp"

namespace emte {

struct PolyTerm {
  double coef = 0.0;
  int px = 0, py = 0, pz = 0;
  double omega = 0.0, phase = 0.0;
};

class TPoly {
public:
  TPoly() = default;
  explicit TPoly(double c) {
    if (c != 0.0) terms_.push_back({c, 0, 0, 0, 0.0, 0.0});
  }
  static TPoly term(double coef, int px, int py, int pz, double omega = 0.0,
                    double phase = 0.0) {
    TPoly p;
    if (coef != 0.0) p.terms_.push_back({coef, px, py, pz, omega, phase});
    return p;
  }

  double eval(const Vec3& p, double t) const {
    double s = 0.0;
    for (const PolyTerm& m : terms_) {
      s += m.coef * ipow(p[0], m.px) * ipow(p[1], m.py) * ipow(p[2], m.pz) *
           std::cos(m.omega * t + m.phase);
    }
    return s;
  }

  TPoly dx(int axis) const {
    TPoly r;
    for (PolyTerm m : terms_) {
      int& e = (axis == 0) ? m.px : (axis == 1) ? m.py : m.pz;
      if (e == 0) continue;
      m.coef *= e;
      e -= 1;
      r.terms_.push_back(m);
    }
    return r;
  }

  // d/dt cos(w t + f) = w cos(w t + f + pi/2)
  TPoly dt() const {
    TPoly r;
    for (PolyTerm m : terms_) {
      if (m.omega == 0.0) continue;
      m.coef *= m.omega;
      m.phase += 1.5707963267948966;
      r.terms_.push_back(m);
    }
    return r;
  }

  TPoly operator+(const TPoly& o) const {
    TPoly r = *this;
    r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
    return r;
  }
  TPoly operator-(const TPoly& o) const { return *this + (-1.0) * o; }
  friend TPoly operator*(double s, const TPoly& p) {
    TPoly r = p;
    for (PolyTerm& m : r.terms_) m.coef *= s;
    return r;
  }

private:
  static double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
  }
  std::vector<PolyTerm> terms_;
};

struct TPolyVec {
  TPoly x, y, z;

  const TPoly& comp(int i) const { return (i == 0) ? x : (i == 1) ? y : z; }
  TPoly& comp(int i) { return (i == 0) ? x : (i == 1) ? y : z; }

  TPolyVec operator+(const TPolyVec& o) const { return {x + o.x, y + o.y, z + o.z}; }
  TPolyVec operator-(const TPolyVec& o) const { return {x - o.x, y - o.y, z - o.z}; }
  friend TPolyVec operator*(double s, const TPolyVec& v) {
    return {s * v.x, s * v.y, s * v.z};
  }

  Vec3 eval(const Vec3& p, double t) const {
    return {x.eval(p, t), y.eval(p, t), z.eval(p, t)};
  }
  TPolyVec dt() const { return {x.dt(), y.dt(), z.dt()}; }
  TPoly div() const { return x.dx(0) + y.dx(1) + z.dx(2); }
  TPolyVec curl() const {
    return {z.dx(1) - y.dx(2), x.dx(2) - z.dx(0), y.dx(0) - x.dx(1)};
  }
  TPolyVec grad_comp(int i) const { // gradient of component i
    const TPoly& c = comp(i);
    return {c.dx(0), c.dx(1), c.dx(2)};
  }
};

// Second-order tensor of space-time polynomials.
struct TPolyTen {
  std::array<TPoly, 9> e{};

  TPoly& at(int i, int j) { return e[static_cast<std::size_t>(3 * i + j)]; }
  const TPoly& at(int i, int j) const { return e[static_cast<std::size_t>(3 * i + j)]; }
};

// Field adapters with fully exact hooks.

inline SField field_of(const TPoly& s, Chart chart, bool label_param) {
  SField f;
  f.chart = chart;
  f.label_param = label_param;
  const TPoly gx = s.dx(0), gy = s.dx(1), gz = s.dx(2), d = s.dt();
  f.val = [s](const Vec3& p, double t) { return s.eval(p, t); };
  f.grad = [gx, gy, gz](const Vec3& p, double t) {
    return Vec3{gx.eval(p, t), gy.eval(p, t), gz.eval(p, t)};
  };
  f.dt = [d](const Vec3& p, double t) { return d.eval(p, t); };
  return f;
}

inline VField field_of(const TPolyVec& v, Chart chart, bool label_param) {
  VField f;
  f.chart = chart;
  f.label_param = label_param;
  std::array<TPoly, 9> g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[static_cast<std::size_t>(3 * i + j)] = v.comp(i).dx(j);
  const TPolyVec d = v.dt();
  f.val = [v](const Vec3& p, double t) { return v.eval(p, t); };
  f.grad = [g](const Vec3& p, double t) {
    Ten2 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = g[static_cast<std::size_t>(3 * i + j)].eval(p, t);
    return m;
  };
  f.dt = [d](const Vec3& p, double t) { return d.eval(p, t); };
  return f;
}

inline TField field_of(const TPolyTen& m, Chart chart, bool label_param) {
  TField f;
  f.chart = chart;
  f.label_param = label_param;
  std::array<TPoly, 27> g;
  std::array<TPoly, 9> d;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      d[static_cast<std::size_t>(3 * i + j)] = m.at(i, j).dt();
      for (int c = 0; c < 3; ++c)
        g[static_cast<std::size_t>((3 * i + j) * 3 + c)] = m.at(i, j).dx(c);
    }
  f.val = [m](const Vec3& p, double t) {
    Ten2 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = m.at(i, j).eval(p, t);
    return r;
  };
  f.grad = [g](const Vec3& p, double t) {
    Ten3 r(Ten3Split::PairFirst);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int c = 0; c < 3; ++c)
          r.at(i, j, c) = g[static_cast<std::size_t>((3 * i + j) * 3 + c)].eval(p, t);
    return r;
  };
  f.dt = [d](const Vec3& p, double t) {
    Ten2 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = d[static_cast<std::size_t>(3 * i + j)].eval(p, t);
    return r;
  };
  return f;
}

// Motion whose placement map is componentwise polynomial; every kinematic
// hook (F, Grad F, F-rate, velocity, acceleration) is exact.
inline Motion motion_of(const TPolyVec& chi) {
  Motion m;
  TPolyTen F;
  std::array<TPoly, 27> Fg;
  TPolyTen Fd;
  TPolyVec v = chi.dt();
  TPolyVec a = v.dt();
  for (int i = 0; i < 3; ++i)
    for (int b = 0; b < 3; ++b) {
      F.at(i, b) = chi.comp(i).dx(b);
      Fd.at(i, b) = F.at(i, b).dt();
      for (int c = 0; c < 3; ++c)
        Fg[static_cast<std::size_t>((3 * i + b) * 3 + c)] = F.at(i, b).dx(c);
    }
  m.chi = [chi](const Vec3& X, double t) { return chi.eval(X, t); };
  m.F = [F](const Vec3& X, double t) {
    Ten2 r;
    for (int i = 0; i < 3; ++i)
      for (int b = 0; b < 3; ++b) r(i, b) = F.at(i, b).eval(X, t);
    return r;
  };
  m.F_grad = [Fg](const Vec3& X, double t) {
    Ten3 r(Ten3Split::PairFirst);
    for (int i = 0; i < 3; ++i)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
          r.at(i, b, c) = Fg[static_cast<std::size_t>((3 * i + b) * 3 + c)].eval(X, t);
    return r;
  };
  m.F_dot = [Fd](const Vec3& X, double t) {
    Ten2 r;
    for (int i = 0; i < 3; ++i)
      for (int b = 0; b < 3; ++b) r(i, b) = Fd.at(i, b).eval(X, t);
    return r;
  };
  m.v = [v](const Vec3& X, double t) { return v.eval(X, t); };
  m.a = [a](const Vec3& X, double t) { return a.eval(X, t); };
  return m;
}

// Gradient of a TPoly vector as a tensor field, again with exact hooks
// (second derivatives of the underlying components).
inline TField grad_field_of(const TPolyVec& v, Chart chart, bool label_param) {
  TField f;
  f.chart = chart;
  f.label_param = label_param;
  std::array<TPoly, 9> g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[static_cast<std::size_t>(3 * i + j)] = v.comp(i).dx(j);
  std::array<TPoly, 27> gg;
  std::array<TPoly, 9> gd;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const TPoly& base = g[static_cast<std::size_t>(3 * i + j)];
      gd[static_cast<std::size_t>(3 * i + j)] = base.dt();
      for (int c = 0; c < 3; ++c)
        gg[static_cast<std::size_t>((3 * i + j) * 3 + c)] = base.dx(c);
    }
  f.val = [g](const Vec3& p, double t) {
    Ten2 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = g[static_cast<std::size_t>(3 * i + j)].eval(p, t);
    return m;
  };
  f.grad = [gg](const Vec3& p, double t) {
    Ten3 m(Ten3Split::PairFirst);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int c = 0; c < 3; ++c)
          m.at(i, j, c) = gg[static_cast<std::size_t>((3 * i + j) * 3 + c)].eval(p, t);
    return m;
  };
  f.dt = [gd](const Vec3& p, double t) {
    Ten2 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = gd[static_cast<std::size_t>(3 * i + j)].eval(p, t);
    return m;
  };
  return f;
}

} // namespace emte
