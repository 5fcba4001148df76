// SPDX-License-Identifier: MIT
#include "emte/fields.hpp"

#include <cmath>
#include <memory>

namespace emte {

// --- finite differences ----------------------------------------------------

static double fd_once(const std::function<double(double)>& f, double h, int order) {
  if (order == 2) return (f(h) - f(-h)) / (2.0 * h);
  return (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * h);
}

double fd_derivative(const std::function<double(double)>& f, double h, int order,
                     bool richardson) {
  if (order != 2 && order != 4) throw Error("fd_derivative: order must be 2 or 4");
  const double d1 = fd_once(f, h, order);
  if (!richardson) return d1;
  const double d2 = fd_once(f, 0.5 * h, order);
  const double w = (order == 2) ? 4.0 : 16.0;
  return (w * d2 - d1) / (w - 1.0);
}

static double fd2_once(const std::function<double(double)>& f, double h, int order) {
  if (order == 2) return (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
  return (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h)) /
         (12.0 * h * h);
}

double fd_second_derivative(const std::function<double(double)>& f, double h, int order,
                            bool richardson) {
  if (order != 2 && order != 4) throw Error("fd_second_derivative: order must be 2 or 4");
  const double d1 = fd2_once(f, h, order);
  if (!richardson) return d1;
  const double d2 = fd2_once(f, 0.5 * h, order);
  const double w = (order == 2) ? 4.0 : 16.0;
  return (w * d2 - d1) / (w - 1.0);
}

// --- helpers ----------------------------------------------------------------

namespace {

template <class F>
bool can_fd(const F& f) {
  // Numeric differentiation steps the parameter, so the parameter must be
  // the chart coordinate.
  return (f.chart == Chart::Referential) == f.label_param;
}

template <class F>
void require_compatible(const F& a, const F& b, const char* op) {
  if (a.chart != b.chart || a.label_param != b.label_param) {
    throw Error(std::string("field ") + op + ": chart/parameter mismatch");
  }
}

template <class A, class B>
void require_compatible2(const A& a, const B& b, const char* op) {
  if (a.chart != b.chart || a.label_param != b.label_param) {
    throw Error(std::string("field ") + op + ": chart/parameter mismatch");
  }
}

Vec3 axis_step(int j, double h) {
  Vec3 e;
  e[j] = h;
  return e;
}

// Composite fields capture their operands through shared handles.  A field's
// closures own whatever they capture, so capturing operands by value would
// make every copy of a composite clone its entire operand tree; the handle
// keeps copies O(1) regardless of depth.
template <class F>
std::shared_ptr<const F> share(const F& f) {
  return std::make_shared<const F>(f);
}

} // namespace

// --- evaluation --------------------------------------------------------------

double value(const SField& f, const Vec3& p, double t) {
  if (!f.val) throw Error("scalar field: missing value closure");
  return f.val(p, t);
}
Vec3 value(const VField& f, const Vec3& p, double t) {
  if (!f.val) throw Error("vector field: missing value closure");
  return f.val(p, t);
}
Ten2 value(const TField& f, const Vec3& p, double t) {
  if (!f.val) throw Error("tensor field: missing value closure");
  return f.val(p, t);
}

Vec3 grad_of(const SField& f, const Vec3& p, double t, const FdConfig& fd) {
  if (f.grad) return f.grad(p, t);
  if (!can_fd(f)) throw Error("scalar field: gradient hook required for this chart/parameter");
  Vec3 g;
  for (int j = 0; j < 3; ++j) {
    g[j] = fd_derivative([&](double s) { return value(f, p + axis_step(j, s), t); }, /*unit s*/
                         fd.step_x(), fd.order, fd.richardson);
  }
  return g;
}

Ten2 grad_of(const VField& f, const Vec3& p, double t, const FdConfig& fd) {
  if (f.grad) return f.grad(p, t);
  if (!can_fd(f)) throw Error("vector field: gradient hook required for this chart/parameter");
  Ten2 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      g(i, j) = fd_derivative([&](double s) { return value(f, p + axis_step(j, s), t)[i]; },
                              fd.step_x(), fd.order, fd.richardson);
    }
  return g;
}

Ten3 grad_of(const TField& f, const Vec3& p, double t, const FdConfig& fd) {
  if (f.grad) return f.grad(p, t);
  if (!can_fd(f)) throw Error("tensor field: gradient hook required for this chart/parameter");
  Ten3 g(Ten3Split::PairFirst);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        g.at(a, b, c) =
            fd_derivative([&](double s) { return value(f, p + axis_step(c, s), t)(a, b); },
                          fd.step_x(), fd.order, fd.richardson);
      }
  return g;
}

double dt_of(const SField& f, const Vec3& p, double t, const FdConfig& fd) {
  if (f.dt) return f.dt(p, t);
  return fd_derivative([&](double s) { return value(f, p, t + s); }, fd.step_t(), fd.order,
                       fd.richardson);
}

Vec3 dt_of(const VField& f, const Vec3& p, double t, const FdConfig& fd) {
  if (f.dt) return f.dt(p, t);
  Vec3 r;
  for (int i = 0; i < 3; ++i) {
    r[i] = fd_derivative([&](double s) { return value(f, p, t + s)[i]; }, fd.step_t(), fd.order,
                         fd.richardson);
  }
  return r;
}

Ten2 dt_of(const TField& f, const Vec3& p, double t, const FdConfig& fd) {
  if (f.dt) return f.dt(p, t);
  Ten2 r;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      r(a, b) = fd_derivative([&](double s) { return value(f, p, t + s)(a, b); }, fd.step_t(),
                              fd.order, fd.richardson);
    }
  return r;
}

double div_of(const VField& f, const Vec3& p, double t, const FdConfig& fd) {
  return trace(grad_of(f, p, t, fd));
}

Vec3 curl_of(const VField& f, const Vec3& p, double t, const FdConfig& fd) {
  return perm_contract(transpose(grad_of(f, p, t, fd)));
}

Vec3 div_first(const TField& f, const Vec3& p, double t, const FdConfig& fd) {
  const Ten3 g = grad_of(f, p, t, fd);
  Vec3 r;
  for (int i = 0; i < 3; ++i) {
    double s = 0.0;
    for (int a = 0; a < 3; ++a) s += g.at(a, i, a);
    r[i] = s;
  }
  return r;
}

// --- constants ---------------------------------------------------------------

SField const_field(Chart chart, bool label_param, double v) {
  SField f;
  f.chart = chart;
  f.label_param = label_param;
  f.val = [v](const Vec3&, double) { return v; };
  f.grad = [](const Vec3&, double) { return Vec3{}; };
  f.dt = [](const Vec3&, double) { return 0.0; };
  return f;
}

VField const_field(Chart chart, bool label_param, const Vec3& v) {
  VField f;
  f.chart = chart;
  f.label_param = label_param;
  f.val = [v](const Vec3&, double) { return v; };
  f.grad = [](const Vec3&, double) { return Ten2{}; };
  f.dt = [](const Vec3&, double) { return Vec3{}; };
  return f;
}

TField const_field(Chart chart, bool label_param, const Ten2& v) {
  TField f;
  f.chart = chart;
  f.label_param = label_param;
  f.val = [v](const Vec3&, double) { return v; };
  f.grad = [](const Vec3&, double) { return Ten3(Ten3Split::PairFirst); };
  f.dt = [](const Vec3&, double) { return Ten2{}; };
  return f;
}

// --- linear ops ----------------------------------------------------------------

SField add(const SField& a, const SField& b) {
  require_compatible(a, b, "add");
  const auto pa = share(a);
  const auto pb = share(b);
  SField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [pa, pb](const Vec3& p, double t) { return pa->val(p, t) + pb->val(p, t); };
  if (a.grad && b.grad)
    r.grad = [pa, pb](const Vec3& p, double t) { return pa->grad(p, t) + pb->grad(p, t); };
  if (a.dt && b.dt)
    r.dt = [pa, pb](const Vec3& p, double t) { return pa->dt(p, t) + pb->dt(p, t); };
  return r;
}

VField add(const VField& a, const VField& b) {
  require_compatible(a, b, "add");
  const auto pa = share(a);
  const auto pb = share(b);
  VField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [pa, pb](const Vec3& p, double t) { return pa->val(p, t) + pb->val(p, t); };
  if (a.grad && b.grad)
    r.grad = [pa, pb](const Vec3& p, double t) { return pa->grad(p, t) + pb->grad(p, t); };
  if (a.dt && b.dt)
    r.dt = [pa, pb](const Vec3& p, double t) { return pa->dt(p, t) + pb->dt(p, t); };
  return r;
}

TField add(const TField& a, const TField& b) {
  require_compatible(a, b, "add");
  const auto pa = share(a);
  const auto pb = share(b);
  TField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [pa, pb](const Vec3& p, double t) { return pa->val(p, t) + pb->val(p, t); };
  if (a.grad && b.grad)
    r.grad = [pa, pb](const Vec3& p, double t) { return pa->grad(p, t) + pb->grad(p, t); };
  if (a.dt && b.dt)
    r.dt = [pa, pb](const Vec3& p, double t) { return pa->dt(p, t) + pb->dt(p, t); };
  return r;
}

SField scale(double s, const SField& a) {
  const auto pa = share(a);
  SField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [s, pa](const Vec3& p, double t) { return s * pa->val(p, t); };
  if (a.grad) r.grad = [s, pa](const Vec3& p, double t) { return s * pa->grad(p, t); };
  if (a.dt) r.dt = [s, pa](const Vec3& p, double t) { return s * pa->dt(p, t); };
  return r;
}

VField scale(double s, const VField& a) {
  const auto pa = share(a);
  VField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [s, pa](const Vec3& p, double t) { return s * pa->val(p, t); };
  if (a.grad) r.grad = [s, pa](const Vec3& p, double t) { return s * pa->grad(p, t); };
  if (a.dt) r.dt = [s, pa](const Vec3& p, double t) { return s * pa->dt(p, t); };
  return r;
}

TField scale(double s, const TField& a) {
  const auto pa = share(a);
  TField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [s, pa](const Vec3& p, double t) { return s * pa->val(p, t); };
  if (a.grad) r.grad = [s, pa](const Vec3& p, double t) { return s * pa->grad(p, t); };
  if (a.dt) r.dt = [s, pa](const Vec3& p, double t) { return s * pa->dt(p, t); };
  return r;
}

SField neg(const SField& a) { return scale(-1.0, a); }
VField neg(const VField& a) { return scale(-1.0, a); }
TField neg(const TField& a) { return scale(-1.0, a); }

SField sub(const SField& a, const SField& b) { return add(a, neg(b)); }
VField sub(const VField& a, const VField& b) { return add(a, neg(b)); }
TField sub(const TField& a, const TField& b) { return add(a, neg(b)); }

// --- products -------------------------------------------------------------------

SField mul(const SField& a, const SField& b) {
  require_compatible(a, b, "mul");
  const auto pa = share(a);
  const auto pb = share(b);
  SField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [pa, pb](const Vec3& p, double t) { return pa->val(p, t) * pb->val(p, t); };
  if (a.grad && b.grad) {
    r.grad = [pa, pb](const Vec3& p, double t) {
      return pa->val(p, t) * pb->grad(p, t) + pb->val(p, t) * pa->grad(p, t);
    };
  }
  if (a.dt && b.dt) {
    r.dt = [pa, pb](const Vec3& p, double t) {
      return pa->dt(p, t) * pb->val(p, t) + pa->val(p, t) * pb->dt(p, t);
    };
  }
  return r;
}

VField mul(const SField& s, const VField& a) {
  require_compatible2(s, a, "mul");
  const auto ps = share(s);
  const auto pa = share(a);
  VField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [ps, pa](const Vec3& p, double t) { return ps->val(p, t) * pa->val(p, t); };
  if (s.grad && a.grad) {
    r.grad = [ps, pa](const Vec3& p, double t) {
      return ps->val(p, t) * pa->grad(p, t) + outer(pa->val(p, t), ps->grad(p, t));
    };
  }
  if (s.dt && a.dt) {
    r.dt = [ps, pa](const Vec3& p, double t) {
      return ps->dt(p, t) * pa->val(p, t) + ps->val(p, t) * pa->dt(p, t);
    };
  }
  return r;
}

TField mul(const SField& s, const TField& a) {
  require_compatible2(s, a, "mul");
  const auto ps = share(s);
  const auto pa = share(a);
  TField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [ps, pa](const Vec3& p, double t) { return ps->val(p, t) * pa->val(p, t); };
  if (s.grad && a.grad) {
    r.grad = [ps, pa](const Vec3& p, double t) {
      const double sv = ps->val(p, t);
      const Vec3 sg = ps->grad(p, t);
      const Ten2 av = pa->val(p, t);
      Ten3 g = pa->grad(p, t);
      g *= sv;
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
          for (int c = 0; c < 3; ++c) g.at(x, y, c) += av(x, y) * sg[c];
      return g;
    };
  }
  if (s.dt && a.dt) {
    r.dt = [ps, pa](const Vec3& p, double t) {
      return ps->dt(p, t) * pa->val(p, t) + ps->val(p, t) * pa->dt(p, t);
    };
  }
  return r;
}

SField recip(const SField& a) {
  const auto pa = share(a);
  SField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [pa](const Vec3& p, double t) { return 1.0 / pa->val(p, t); };
  if (a.grad) {
    r.grad = [pa](const Vec3& p, double t) {
      const double s = pa->val(p, t);
      return (-1.0 / (s * s)) * pa->grad(p, t);
    };
  }
  if (a.dt) {
    r.dt = [pa](const Vec3& p, double t) {
      const double s = pa->val(p, t);
      return -pa->dt(p, t) / (s * s);
    };
  }
  return r;
}

SField dot(const VField& a, const VField& b) {
  require_compatible(a, b, "dot");
  const auto pa = share(a);
  const auto pb = share(b);
  SField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [pa, pb](const Vec3& p, double t) { return dot(pa->val(p, t), pb->val(p, t)); };
  if (a.grad && b.grad) {
    r.grad = [pa, pb](const Vec3& p, double t) {
      return transpose_apply(pa->grad(p, t), pb->val(p, t)) +
             transpose_apply(pb->grad(p, t), pa->val(p, t));
    };
  }
  if (a.dt && b.dt) {
    r.dt = [pa, pb](const Vec3& p, double t) {
      return dot(pa->dt(p, t), pb->val(p, t)) + dot(pa->val(p, t), pb->dt(p, t));
    };
  }
  return r;
}

static Vec3 column(const Ten2& m, int j) { return {m(0, j), m(1, j), m(2, j)}; }

VField cross(const VField& a, const VField& b) {
  require_compatible(a, b, "cross");
  const auto pa = share(a);
  const auto pb = share(b);
  VField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [pa, pb](const Vec3& p, double t) { return cross(pa->val(p, t), pb->val(p, t)); };
  if (a.grad && b.grad) {
    r.grad = [pa, pb](const Vec3& p, double t) {
      const Vec3 av = pa->val(p, t), bv = pb->val(p, t);
      const Ten2 ag = pa->grad(p, t), bg = pb->grad(p, t);
      Ten2 g;
      for (int j = 0; j < 3; ++j) {
        const Vec3 d = cross(column(ag, j), bv) + cross(av, column(bg, j));
        for (int i = 0; i < 3; ++i) g(i, j) = d[i];
      }
      return g;
    };
  }
  if (a.dt && b.dt) {
    r.dt = [pa, pb](const Vec3& p, double t) {
      return cross(pa->dt(p, t), pb->val(p, t)) + cross(pa->val(p, t), pb->dt(p, t));
    };
  }
  return r;
}

TField outer(const VField& a, const VField& b) {
  require_compatible(a, b, "outer");
  const auto pa = share(a);
  const auto pb = share(b);
  TField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [pa, pb](const Vec3& p, double t) { return outer(pa->val(p, t), pb->val(p, t)); };
  if (a.grad && b.grad) {
    r.grad = [pa, pb](const Vec3& p, double t) {
      const Vec3 av = pa->val(p, t), bv = pb->val(p, t);
      const Ten2 ag = pa->grad(p, t), bg = pb->grad(p, t);
      Ten3 g(Ten3Split::PairFirst);
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
          for (int c = 0; c < 3; ++c) g.at(x, y, c) = ag(x, c) * bv[y] + av[x] * bg(y, c);
      return g;
    };
  }
  if (a.dt && b.dt) {
    r.dt = [pa, pb](const Vec3& p, double t) {
      return outer(pa->dt(p, t), pb->val(p, t)) + outer(pa->val(p, t), pb->dt(p, t));
    };
  }
  return r;
}

static Ten2 slice_third(const Ten3& g, int c) {
  Ten2 m;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) m(x, y) = g.at(x, y, c);
  return m;
}

VField apply(const TField& a, const VField& v) {
  require_compatible2(a, v, "apply");
  const auto pa = share(a);
  const auto pv = share(v);
  VField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [pa, pv](const Vec3& p, double t) { return pa->val(p, t) * pv->val(p, t); };
  if (a.grad && v.grad) {
    r.grad = [pa, pv](const Vec3& p, double t) {
      const Ten2 av = pa->val(p, t);
      const Vec3 vv = pv->val(p, t);
      const Ten3 ag = pa->grad(p, t);
      const Ten2 vg = pv->grad(p, t);
      Ten2 g;
      for (int c = 0; c < 3; ++c) {
        const Vec3 d = slice_third(ag, c) * vv + av * column(vg, c);
        for (int i = 0; i < 3; ++i) g(i, c) = d[i];
      }
      return g;
    };
  }
  if (a.dt && v.dt) {
    r.dt = [pa, pv](const Vec3& p, double t) {
      return pa->dt(p, t) * pv->val(p, t) + pa->val(p, t) * pv->dt(p, t);
    };
  }
  return r;
}

VField apply_transpose(const TField& a, const VField& v) {
  require_compatible2(a, v, "apply_transpose");
  const auto pa = share(a);
  const auto pv = share(v);
  VField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [pa, pv](const Vec3& p, double t) {
    return transpose_apply(pa->val(p, t), pv->val(p, t));
  };
  if (a.grad && v.grad) {
    r.grad = [pa, pv](const Vec3& p, double t) {
      const Ten2 av = pa->val(p, t);
      const Vec3 vv = pv->val(p, t);
      const Ten3 ag = pa->grad(p, t);
      const Ten2 vg = pv->grad(p, t);
      Ten2 g;
      for (int c = 0; c < 3; ++c) {
        const Vec3 d = transpose_apply(slice_third(ag, c), vv) + transpose_apply(av, column(vg, c));
        for (int i = 0; i < 3; ++i) g(i, c) = d[i];
      }
      return g;
    };
  }
  if (a.dt && v.dt) {
    r.dt = [pa, pv](const Vec3& p, double t) {
      return transpose_apply(pa->dt(p, t), pv->val(p, t)) +
             transpose_apply(pa->val(p, t), pv->dt(p, t));
    };
  }
  return r;
}

TField matmul(const TField& a, const TField& b) {
  require_compatible(a, b, "matmul");
  const auto pa = share(a);
  const auto pb = share(b);
  TField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [pa, pb](const Vec3& p, double t) { return pa->val(p, t) * pb->val(p, t); };
  if (a.grad && b.grad) {
    r.grad = [pa, pb](const Vec3& p, double t) {
      const Ten2 av = pa->val(p, t), bv = pb->val(p, t);
      const Ten3 ag = pa->grad(p, t), bg = pb->grad(p, t);
      Ten3 g(Ten3Split::PairFirst);
      for (int c = 0; c < 3; ++c) {
        const Ten2 d = slice_third(ag, c) * bv + av * slice_third(bg, c);
        for (int x = 0; x < 3; ++x)
          for (int y = 0; y < 3; ++y) g.at(x, y, c) = d(x, y);
      }
      return g;
    };
  }
  if (a.dt && b.dt) {
    r.dt = [pa, pb](const Vec3& p, double t) {
      return pa->dt(p, t) * pb->val(p, t) + pa->val(p, t) * pb->dt(p, t);
    };
  }
  return r;
}

TField transpose(const TField& a) {
  const auto pa = share(a);
  TField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [pa](const Vec3& p, double t) { return transpose(pa->val(p, t)); };
  if (a.grad) {
    r.grad = [pa](const Vec3& p, double t) {
      const Ten3 in = pa->grad(p, t);
      Ten3 out(Ten3Split::PairFirst);
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
          for (int c = 0; c < 3; ++c) out.at(x, y, c) = in.at(y, x, c);
      return out;
    };
  }
  if (a.dt) {
    r.dt = [pa](const Vec3& p, double t) { return transpose(pa->dt(p, t)); };
  }
  return r;
}

SField trace_field(const TField& a) {
  const auto pa = share(a);
  SField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [pa](const Vec3& p, double t) { return trace(pa->val(p, t)); };
  if (a.grad) {
    r.grad = [pa](const Vec3& p, double t) {
      const Ten3 in = pa->grad(p, t);
      Vec3 out;
      for (int c = 0; c < 3; ++c) out[c] = in.at(0, 0, c) + in.at(1, 1, c) + in.at(2, 2, c);
      return out;
    };
  }
  if (a.dt) {
    r.dt = [pa](const Vec3& p, double t) { return trace(pa->dt(p, t)); };
  }
  return r;
}

SField det_field(const TField& a) {
  const auto pa = share(a);
  SField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [pa](const Vec3& p, double t) { return det(pa->val(p, t)); };
  if (a.grad) {
    r.grad = [pa](const Vec3& p, double t) {
      const Ten2 m = pa->val(p, t);
      const Ten2 mi = inverse(m);
      const double d = det(m);
      const Ten3 in = pa->grad(p, t);
      Vec3 out;
      for (int c = 0; c < 3; ++c) out[c] = d * trace(mi * slice_third(in, c));
      return out;
    };
  }
  if (a.dt) {
    r.dt = [pa](const Vec3& p, double t) {
      const Ten2 m = pa->val(p, t);
      return det(m) * trace(inverse(m) * pa->dt(p, t));
    };
  }
  return r;
}

TField inverse_field(const TField& a) {
  const auto pa = share(a);
  TField r;
  r.chart = a.chart;
  r.label_param = a.label_param;
  r.val = [pa](const Vec3& p, double t) { return inverse(pa->val(p, t)); };
  if (a.grad) {
    r.grad = [pa](const Vec3& p, double t) {
      const Ten2 mi = inverse(pa->val(p, t));
      const Ten3 in = pa->grad(p, t);
      Ten3 out(Ten3Split::PairFirst);
      for (int c = 0; c < 3; ++c) {
        const Ten2 d = -1.0 * (mi * slice_third(in, c) * mi);
        for (int x = 0; x < 3; ++x)
          for (int y = 0; y < 3; ++y) out.at(x, y, c) = d(x, y);
      }
      return out;
    };
  }
  if (a.dt) {
    r.dt = [pa](const Vec3& p, double t) {
      const Ten2 mi = inverse(pa->val(p, t));
      return -1.0 * (mi * pa->dt(p, t) * mi);
    };
  }
  return r;
}

// --- constant-coefficient contractions -----------------------------------------

TField contract_leg(const Ten4& a, const TField& x) {
  const auto px = share(x);
  TField r;
  r.chart = x.chart;
  r.label_param = x.label_param;
  r.val = [a, px](const Vec3& p, double t) { return contract_leg(a, px->val(p, t)); };
  if (x.grad) {
    r.grad = [a, px](const Vec3& p, double t) {
      const Ten3 in = px->grad(p, t);
      Ten3 out(Ten3Split::PairFirst);
      for (int c = 0; c < 3; ++c) {
        const Ten2 d = contract_leg(a, slice_third(in, c));
        for (int xx = 0; xx < 3; ++xx)
          for (int y = 0; y < 3; ++y) out.at(xx, y, c) = d(xx, y);
      }
      return out;
    };
  }
  if (x.dt) {
    r.dt = [a, px](const Vec3& p, double t) { return contract_leg(a, px->dt(p, t)); };
  }
  return r;
}

TField contract_single(const Ten3& t3, const VField& v) {
  const auto pv = share(v);
  TField r;
  r.chart = v.chart;
  r.label_param = v.label_param;
  r.val = [t3, pv](const Vec3& p, double t) { return contract_single(t3, pv->val(p, t)); };
  if (v.grad) {
    r.grad = [t3, pv](const Vec3& p, double t) {
      const Ten2 in = pv->grad(p, t);
      Ten3 out(Ten3Split::PairFirst);
      for (int c = 0; c < 3; ++c) {
        const Ten2 d = contract_single(t3, column(in, c));
        for (int x = 0; x < 3; ++x)
          for (int y = 0; y < 3; ++y) out.at(x, y, c) = d(x, y);
      }
      return out;
    };
  }
  if (v.dt) {
    r.dt = [t3, pv](const Vec3& p, double t) { return contract_single(t3, pv->dt(p, t)); };
  }
  return r;
}

VField contract_pair(const Ten3& t3, const TField& x) {
  const auto px = share(x);
  VField r;
  r.chart = x.chart;
  r.label_param = x.label_param;
  r.val = [t3, px](const Vec3& p, double t) { return contract_pair(t3, px->val(p, t)); };
  if (x.grad) {
    r.grad = [t3, px](const Vec3& p, double t) {
      const Ten3 in = px->grad(p, t);
      Ten2 out;
      for (int c = 0; c < 3; ++c) {
        const Vec3 d = contract_pair(t3, slice_third(in, c));
        for (int i = 0; i < 3; ++i) out(i, c) = d[i];
      }
      return out;
    };
  }
  if (x.dt) {
    r.dt = [t3, px](const Vec3& p, double t) { return contract_pair(t3, px->dt(p, t)); };
  }
  return r;
}

VField apply_const(const Ten2& a, const VField& v) {
  const auto pv = share(v);
  VField r;
  r.chart = v.chart;
  r.label_param = v.label_param;
  r.val = [a, pv](const Vec3& p, double t) { return a * pv->val(p, t); };
  if (v.grad) {
    r.grad = [a, pv](const Vec3& p, double t) { return a * pv->grad(p, t); };
  }
  if (v.dt) {
    r.dt = [a, pv](const Vec3& p, double t) { return a * pv->dt(p, t); };
  }
  return r;
}

VField apply_const_transpose(const Ten2& a, const VField& v) {
  return apply_const(transpose(a), v);
}

namespace {

template <class V>
std::function<V(const Vec3&, double)> memoize(const std::function<V(const Vec3&, double)>& fn) {
  struct Slot {
    bool has = false;
    Vec3 p{};
    double t = 0.0;
    V v{};
  };
  auto slot = std::make_shared<Slot>();
  auto inner = std::make_shared<const std::function<V(const Vec3&, double)>>(fn);
  return [slot, inner](const Vec3& p, double t) {
    if (slot->has && slot->t == t && slot->p[0] == p[0] && slot->p[1] == p[1] &&
        slot->p[2] == p[2]) {
      return slot->v;
    }
    slot->v = (*inner)(p, t);
    slot->p = p;
    slot->t = t;
    slot->has = true;
    return slot->v;
  };
}

} // namespace

SField cached(const SField& f) {
  SField r;
  r.chart = f.chart;
  r.label_param = f.label_param;
  r.val = memoize<double>(f.val);
  if (f.grad) r.grad = memoize<Vec3>(f.grad);
  if (f.dt) r.dt = memoize<double>(f.dt);
  return r;
}

VField cached(const VField& f) {
  VField r;
  r.chart = f.chart;
  r.label_param = f.label_param;
  r.val = memoize<Vec3>(f.val);
  if (f.grad) r.grad = memoize<Ten2>(f.grad);
  if (f.dt) r.dt = memoize<Vec3>(f.dt);
  return r;
}

TField cached(const TField& f) {
  TField r;
  r.chart = f.chart;
  r.label_param = f.label_param;
  r.val = memoize<Ten2>(f.val);
  if (f.grad) r.grad = memoize<Ten3>(f.grad);
  if (f.dt) r.dt = memoize<Ten2>(f.dt);
  return r;
}

TField grad_field(const VField& f, const FdConfig& fd) {
  const auto pf = share(f);
  TField r;
  r.chart = f.chart;
  r.label_param = f.label_param;
  r.val = [pf, fd](const Vec3& p, double t) { return grad_of(*pf, p, t, fd); };
  if (can_fd(f)) {
    r.grad = [pf, fd](const Vec3& p, double t) {
      Ten3 g(Ten3Split::PairFirst);
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
          for (int c = 0; c < 3; ++c) {
            g.at(x, y, c) = fd_derivative(
                [&](double s) { return grad_of(*pf, p + axis_step(c, s), t, fd)(x, y); },
                fd.step_x(), fd.order, fd.richardson);
          }
      return g;
    };
  }
  r.dt = [pf, fd](const Vec3& p, double t) {
    Ten2 d;
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) {
        d(x, y) = fd_derivative([&](double s) { return grad_of(*pf, p, t + s, fd)(x, y); },
                                fd.step_t(), fd.order, fd.richardson);
      }
    return d;
  };
  return r;
}

SField wave_field(Chart chart, bool label_param, double amp, const Vec3& k, double omega,
                  double phase) {
  SField f;
  f.chart = chart;
  f.label_param = label_param;
  f.val = [=](const Vec3& p, double t) { return amp * std::cos(dot(k, p) - omega * t + phase); };
  f.grad = [=](const Vec3& p, double t) {
    return (-amp * std::sin(dot(k, p) - omega * t + phase)) * k;
  };
  f.dt = [=](const Vec3& p, double t) {
    return amp * omega * std::sin(dot(k, p) - omega * t + phase);
  };
  return f;
}

VField wave_field(Chart chart, bool label_param, const Vec3& amp, const Vec3& k, double omega,
                  double phase) {
  VField f;
  f.chart = chart;
  f.label_param = label_param;
  f.val = [=](const Vec3& p, double t) { return std::cos(dot(k, p) - omega * t + phase) * amp; };
  f.grad = [=](const Vec3& p, double t) {
    return -std::sin(dot(k, p) - omega * t + phase) * outer(amp, k);
  };
  f.dt = [=](const Vec3& p, double t) {
    return (omega * std::sin(dot(k, p) - omega * t + phase)) * amp;
  };
  return f;
}

} // namespace emte
