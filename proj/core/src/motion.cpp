// SPDX-License-Identifier: MIT
#include "emte/motion.hpp"

namespace emte {

namespace {
Vec3 axis_step(int j, double h) {
  Vec3 e;
  e[j] = h;
  return e;
}
} // namespace

Motion identity_motion() {
  Motion m;
  m.chi = [](const Vec3& X, double) { return X; };
  m.F = [](const Vec3&, double) { return Ten2::identity(); };
  m.F_grad = [](const Vec3&, double) { return Ten3(Ten3Split::PairFirst); };
  m.F_dot = [](const Vec3&, double) { return Ten2{}; };
  m.v = [](const Vec3&, double) { return Vec3{}; };
  m.a = [](const Vec3&, double) { return Vec3{}; };
  return m;
}

Vec3 chi_of(const Motion& m, const Vec3& X, double t) {
  if (!m.chi) throw Error("motion: missing placement map");
  return m.chi(X, t);
}

Ten2 F_of(const Motion& m, const Vec3& X, double t, const FdConfig& fd) {
  if (m.F) return m.F(X, t);
  Ten2 f;
  for (int i = 0; i < 3; ++i)
    for (int b = 0; b < 3; ++b) {
      f(i, b) = fd_derivative([&](double s) { return chi_of(m, X + axis_step(b, s), t)[i]; },
                              fd.step_x(), fd.order, fd.richardson);
    }
  return f;
}

Ten3 F_grad_of(const Motion& m, const Vec3& X, double t, const FdConfig& fd) {
  if (m.F_grad) return m.F_grad(X, t);
  Ten3 g(Ten3Split::PairFirst);
  for (int i = 0; i < 3; ++i)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        g.at(i, b, c) =
            fd_derivative([&](double s) { return F_of(m, X + axis_step(c, s), t, fd)(i, b); },
                          fd.step_x(), fd.order, fd.richardson);
      }
  return g;
}

Ten2 F_dot_of(const Motion& m, const Vec3& X, double t, const FdConfig& fd) {
  if (m.F_dot) return m.F_dot(X, t);
  Ten2 f;
  for (int i = 0; i < 3; ++i)
    for (int b = 0; b < 3; ++b) {
      f(i, b) = fd_derivative([&](double s) { return F_of(m, X, t + s, fd)(i, b); }, fd.step_t(),
                              fd.order, fd.richardson);
    }
  return f;
}

Vec3 v_of(const Motion& m, const Vec3& X, double t, const FdConfig& fd) {
  if (m.v) return m.v(X, t);
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    v[i] = fd_derivative([&](double s) { return chi_of(m, X, t + s)[i]; }, fd.step_t(), fd.order,
                         fd.richardson);
  }
  return v;
}

Vec3 a_of(const Motion& m, const Vec3& X, double t, const FdConfig& fd) {
  if (m.a) return m.a(X, t);
  if (m.v) {
    Vec3 a;
    for (int i = 0; i < 3; ++i) {
      a[i] = fd_derivative([&](double s) { return m.v(X, t + s)[i]; }, fd.step_t(), fd.order,
                           fd.richardson);
    }
    return a;
  }
  Vec3 a;
  for (int i = 0; i < 3; ++i) {
    a[i] = fd_second_derivative([&](double s) { return chi_of(m, X, t + s)[i]; },
                                std::max(fd.step_t(), 1e-4), fd.order, fd.richardson);
  }
  return a;
}

Kinematics kinematics_at(const Motion& m, const Vec3& X, double t, const FdConfig& fd) {
  Kinematics k;
  k.x = chi_of(m, X, t);
  k.F = F_of(m, X, t, fd);
  k.J = det(k.F);
  if (!(k.J > 0.0)) throw Error("kinematics: det F must be positive");
  k.F_inv = inverse(k.F);
  k.c = transpose(k.F) * k.F;
  k.c_inv = inverse(k.c);
  k.b = k.F * transpose(k.F);
  k.v = v_of(m, X, t, fd);
  k.a = a_of(m, X, t, fd);
  k.V = k.F_inv * k.v;
  k.L = F_dot_of(m, X, t, fd) * k.F_inv;
  return k;
}

Kinematics kinematics_from(const Ten2& F, const Vec3& v, const Ten2& L, const Vec3& x,
                           const Vec3& a) {
  Kinematics k;
  k.x = x;
  k.F = F;
  k.J = det(F);
  if (!(k.J > 0.0)) throw Error("kinematics: det F must be positive");
  k.F_inv = inverse(F);
  k.c = transpose(F) * F;
  k.c_inv = inverse(k.c);
  k.b = F * transpose(F);
  k.v = v;
  k.a = a;
  k.V = k.F_inv * v;
  k.L = L;
  return k;
}

TField deformation_field(const Motion& m, const FdConfig& fd) {
  TField f;
  f.chart = Chart::Referential;
  f.label_param = true;
  f.val = [m, fd](const Vec3& X, double t) { return F_of(m, X, t, fd); };
  f.grad = [m, fd](const Vec3& X, double t) { return F_grad_of(m, X, t, fd); };
  f.dt = [m, fd](const Vec3& X, double t) { return F_dot_of(m, X, t, fd); };
  return f;
}

VField velocity_field(const Motion& m, const FdConfig& fd) {
  VField f;
  f.chart = Chart::Referential;
  f.label_param = true;
  f.val = [m, fd](const Vec3& X, double t) { return v_of(m, X, t, fd); };
  f.grad = [m, fd](const Vec3& X, double t) { return F_dot_of(m, X, t, fd); };
  f.dt = [m, fd](const Vec3& X, double t) { return a_of(m, X, t, fd); };
  return f;
}

// --- views -------------------------------------------------------------------

static void require_spatial_position(Chart chart, bool label_param, const char* who) {
  if (chart != Chart::Spatial || label_param) {
    throw Error(std::string(who) + ": input must be a spatial field of current position");
  }
}

static void require_referential_label(Chart chart, bool label_param, const char* who) {
  if (chart != Chart::Referential || !label_param) {
    throw Error(std::string(who) + ": input must be a referential field of material label");
  }
}

SField material_view(const SField& f, const Motion& m, const FdConfig& fd) {
  require_spatial_position(f.chart, f.label_param, "material_view");
  SField r;
  r.chart = Chart::Referential;
  r.label_param = true;
  r.val = [f, m](const Vec3& X, double t) { return value(f, chi_of(m, X, t), t); };
  r.grad = [f, m, fd](const Vec3& X, double t) {
    const Vec3 x = chi_of(m, X, t);
    return transpose_apply(F_of(m, X, t, fd), grad_of(f, x, t, fd)); // F^T grad = grad . F
  };
  r.dt = [f, m, fd](const Vec3& X, double t) {
    const Vec3 x = chi_of(m, X, t);
    return dt_of(f, x, t, fd) + dot(grad_of(f, x, t, fd), v_of(m, X, t, fd));
  };
  return r;
}

VField material_view(const VField& f, const Motion& m, const FdConfig& fd) {
  require_spatial_position(f.chart, f.label_param, "material_view");
  VField r;
  r.chart = Chart::Referential;
  r.label_param = true;
  r.val = [f, m](const Vec3& X, double t) { return value(f, chi_of(m, X, t), t); };
  r.grad = [f, m, fd](const Vec3& X, double t) {
    const Vec3 x = chi_of(m, X, t);
    return grad_of(f, x, t, fd) * F_of(m, X, t, fd);
  };
  r.dt = [f, m, fd](const Vec3& X, double t) {
    const Vec3 x = chi_of(m, X, t);
    return dt_of(f, x, t, fd) + grad_of(f, x, t, fd) * v_of(m, X, t, fd);
  };
  return r;
}

TField material_view(const TField& f, const Motion& m, const FdConfig& fd) {
  require_spatial_position(f.chart, f.label_param, "material_view");
  TField r;
  r.chart = Chart::Referential;
  r.label_param = true;
  r.val = [f, m](const Vec3& X, double t) { return value(f, chi_of(m, X, t), t); };
  r.grad = [f, m, fd](const Vec3& X, double t) {
    const Vec3 x = chi_of(m, X, t);
    const Ten3 g = grad_of(f, x, t, fd);
    const Ten2 F = F_of(m, X, t, fd);
    Ten3 out(Ten3Split::PairFirst);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          double s = 0.0;
          for (int k = 0; k < 3; ++k) s += g.at(a, b, k) * F(k, c);
          out.at(a, b, c) = s;
        }
    return out;
  };
  r.dt = [f, m, fd](const Vec3& X, double t) {
    const Vec3 x = chi_of(m, X, t);
    const Ten3 g = grad_of(f, x, t, fd);
    const Vec3 v = v_of(m, X, t, fd);
    Ten2 adv;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += g.at(a, b, k) * v[k];
        adv(a, b) = s;
      }
    return dt_of(f, x, t, fd) + adv;
  };
  return r;
}

SField spatial_view(const SField& f, const Motion& m, const FdConfig& fd) {
  require_referential_label(f.chart, f.label_param, "spatial_view");
  SField r;
  r.chart = Chart::Spatial;
  r.label_param = true;
  r.val = f.val;
  r.grad = [f, m, fd](const Vec3& X, double t) {
    return transpose_apply(inverse(F_of(m, X, t, fd)), grad_of(f, X, t, fd)); // F^-T Grad
  };
  r.dt = [f, m, fd](const Vec3& X, double t) { return dt_of(f, X, t, fd); };
  return r;
}

VField spatial_view(const VField& f, const Motion& m, const FdConfig& fd) {
  require_referential_label(f.chart, f.label_param, "spatial_view");
  VField r;
  r.chart = Chart::Spatial;
  r.label_param = true;
  r.val = f.val;
  r.grad = [f, m, fd](const Vec3& X, double t) {
    return grad_of(f, X, t, fd) * inverse(F_of(m, X, t, fd));
  };
  r.dt = [f, m, fd](const Vec3& X, double t) { return dt_of(f, X, t, fd); };
  return r;
}

TField spatial_view(const TField& f, const Motion& m, const FdConfig& fd) {
  require_referential_label(f.chart, f.label_param, "spatial_view");
  TField r;
  r.chart = Chart::Spatial;
  r.label_param = true;
  r.val = f.val;
  r.grad = [f, m, fd](const Vec3& X, double t) {
    const Ten3 g = grad_of(f, X, t, fd);
    const Ten2 Fi = inverse(F_of(m, X, t, fd));
    Ten3 out(Ten3Split::PairFirst);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          double s = 0.0;
          for (int k = 0; k < 3; ++k) s += g.at(a, b, k) * Fi(k, c);
          out.at(a, b, c) = s;
        }
    return out;
  };
  r.dt = [f, m, fd](const Vec3& X, double t) { return dt_of(f, X, t, fd); };
  return r;
}

// --- rates --------------------------------------------------------------------

double material_rate(const SField& f, const Motion& m, const Vec3& X, double t,
                     const FdConfig& fd) {
  if (f.label_param) return dt_of(f, X, t, fd);
  const Vec3 x = chi_of(m, X, t);
  return dt_of(f, x, t, fd) + dot(grad_of(f, x, t, fd), v_of(m, X, t, fd));
}

Vec3 material_rate(const VField& f, const Motion& m, const Vec3& X, double t,
                   const FdConfig& fd) {
  if (f.label_param) return dt_of(f, X, t, fd);
  const Vec3 x = chi_of(m, X, t);
  return dt_of(f, x, t, fd) + grad_of(f, x, t, fd) * v_of(m, X, t, fd);
}

double spatial_rate(const SField& f, const Motion& m, const Vec3& X, double t,
                    const FdConfig& fd) {
  if (f.chart != Chart::Spatial) throw Error("spatial_rate: spatial-chart field required");
  if (!f.label_param) return dt_of(f, chi_of(m, X, t), t, fd);
  return dt_of(f, X, t, fd) - dot(grad_of(f, X, t, fd), v_of(m, X, t, fd));
}

Vec3 spatial_rate(const VField& f, const Motion& m, const Vec3& X, double t,
                  const FdConfig& fd) {
  if (f.chart != Chart::Spatial) throw Error("spatial_rate: spatial-chart field required");
  if (!f.label_param) return dt_of(f, chi_of(m, X, t), t, fd);
  return dt_of(f, X, t, fd) - grad_of(f, X, t, fd) * v_of(m, X, t, fd);
}

Ten2 spatial_rate(const TField& f, const Motion& m, const Vec3& X, double t,
                  const FdConfig& fd) {
  if (f.chart != Chart::Spatial) throw Error("spatial_rate: spatial-chart field required");
  if (!f.label_param) return dt_of(f, chi_of(m, X, t), t, fd);
  const Ten3 g = grad_of(f, X, t, fd);
  const Vec3 v = v_of(m, X, t, fd);
  Ten2 adv;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += g.at(a, b, k) * v[k];
      adv(a, b) = s;
    }
  return dt_of(f, X, t, fd) - adv;
}

} // namespace emte
