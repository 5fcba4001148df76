// SPDX-License-Identifier: MIT
//
// Chart-tagged scalar/vector/tensor fields over (point, time) with optional
// analytic derivative hooks and a combinator algebra that propagates those
// hooks exactly.  This is what lets linearization-order tests run without
// finite-difference noise: when every input supplies grad/dt closures, every
// derived quantity down to the final residual is exact to roundoff.
//
// Conventions:
//   - chart selects which derivative the hooks mean: Referential hooks are
//     partial d/dX and d/dt at fixed X; Spatial hooks are d/dx and d/dt at
//     fixed particle when label_param is true (views) or at fixed position
//     when false (fields given directly as functions of current position).
//   - label_param tells what the Vec3 argument is: a material label X
//     (true) or a current position x (false).
//   - Numeric fallback differentiates in the parameter, so it is only legal
//     when the parameter matches the chart; views must carry hooks, and the
//     view constructors always install them.
#pragma once

#include <functional>

#include "emte/fd.hpp"
#include "emte/tensor.hpp"

namespace emte {

enum class Chart { Referential, Spatial };

struct SField {
  Chart chart = Chart::Referential;
  bool label_param = true;
  std::function<double(const Vec3&, double)> val;
  std::function<Vec3(const Vec3&, double)> grad; // optional
  std::function<double(const Vec3&, double)> dt; // optional
};

struct VField {
  Chart chart = Chart::Referential;
  bool label_param = true;
  std::function<Vec3(const Vec3&, double)> val;
  std::function<Ten2(const Vec3&, double)> grad; // (i,j) = d val_i / d p_j
  std::function<Vec3(const Vec3&, double)> dt;
};

struct TField {
  Chart chart = Chart::Referential;
  bool label_param = true;
  std::function<Ten2(const Vec3&, double)> val;
  std::function<Ten3(const Vec3&, double)> grad; // PairFirst: (a,b|c) = d T_ab / d p_c
  std::function<Ten2(const Vec3&, double)> dt;
};

// --- evaluation -----------------------------------------------------------

double value(const SField& f, const Vec3& p, double t);
Vec3 value(const VField& f, const Vec3& p, double t);
Ten2 value(const TField& f, const Vec3& p, double t);

Vec3 grad_of(const SField& f, const Vec3& p, double t, const FdConfig& fd = {});
Ten2 grad_of(const VField& f, const Vec3& p, double t, const FdConfig& fd = {});
Ten3 grad_of(const TField& f, const Vec3& p, double t, const FdConfig& fd = {});

double dt_of(const SField& f, const Vec3& p, double t, const FdConfig& fd = {});
Vec3 dt_of(const VField& f, const Vec3& p, double t, const FdConfig& fd = {});
Ten2 dt_of(const TField& f, const Vec3& p, double t, const FdConfig& fd = {});

// trace of the gradient
double div_of(const VField& f, const Vec3& p, double t, const FdConfig& fd = {});
// (curl w)_i = eps_ijk d_j w_k
Vec3 curl_of(const VField& f, const Vec3& p, double t, const FdConfig& fd = {});
// divergence over the first slot: (div T)_i = d T_ai / d p_a
Vec3 div_first(const TField& f, const Vec3& p, double t, const FdConfig& fd = {});

// --- constants ------------------------------------------------------------

SField const_field(Chart chart, bool label_param, double v);
VField const_field(Chart chart, bool label_param, const Vec3& v);
TField const_field(Chart chart, bool label_param, const Ten2& v);

// --- algebra (hooks propagate when the inputs carry them) ------------------

SField add(const SField& a, const SField& b);
VField add(const VField& a, const VField& b);
TField add(const TField& a, const TField& b);
SField sub(const SField& a, const SField& b);
VField sub(const VField& a, const VField& b);
TField sub(const TField& a, const TField& b);
SField neg(const SField& a);
VField neg(const VField& a);
TField neg(const TField& a);
SField scale(double s, const SField& a);
VField scale(double s, const VField& a);
TField scale(double s, const TField& a);

SField mul(const SField& a, const SField& b);
VField mul(const SField& s, const VField& a);
TField mul(const SField& s, const TField& a);
SField recip(const SField& a);

SField dot(const VField& a, const VField& b);
VField cross(const VField& a, const VField& b);
TField outer(const VField& a, const VField& b);

VField apply(const TField& a, const VField& v);           // A v
VField apply_transpose(const TField& a, const VField& v); // A^T v
TField matmul(const TField& a, const TField& b);
TField transpose(const TField& a);
SField trace_field(const TField& a);
SField det_field(const TField& a);   // needs invertible values for hooks
TField inverse_field(const TField& a);

// Constant-coefficient contractions used to assemble moduli products as
// fields: R_ai = A_aibj X_jb; R_ai = T_ai|c v_c (pair-first T).
TField contract_leg(const Ten4& a, const TField& x);
TField contract_single(const Ten3& t, const VField& v);
VField contract_pair(const Ten3& t, const TField& x);
VField apply_const(const Ten2& a, const VField& v);
VField apply_const_transpose(const Ten2& a, const VField& v);

// Memoize the value and hook results at the most recently queried point and
// time.  Composite fields are plain closure trees, so a subfield shared by
// several branches is otherwise re-evaluated once per use site; wrapping the
// shared node makes one traversal cost one evaluation per query point.  The
// cache is shared by copies of the returned field and is not thread-safe.
SField cached(const SField& f);
VField cached(const VField& f);
TField cached(const TField& f);

// Wrap the gradient of a field as a field of its own.  The value uses the
// input's hook when present; this wrapper's own derivatives fall back to
// numerics, so use it only where exactness is not required.
TField grad_field(const VField& f, const FdConfig& fd = {});

// Plane-wave building block: amp * cos(k . p - omega t + phase), with exact
// hooks. Vector/tensor variants multiply a constant amplitude by the scalar.
SField wave_field(Chart chart, bool label_param, double amp, const Vec3& k,
                  double omega, double phase);
VField wave_field(Chart chart, bool label_param, const Vec3& amp, const Vec3& k,
                  double omega, double phase);

} // namespace emte
