// SPDX-License-Identifier: MIT
//
// Motions X -> x = chi(X, t) with optional analytic hooks for the deformation
// gradient, its space and time derivatives, velocity, and acceleration.
// Missing hooks fall back to centered differences of chi.
//
// The two view constructors re-parameterize fields across the motion:
//   material_view: a field given over current positions becomes a field of
//     (X, t) with referential-chart hooks (Grad = grad * F, material rate).
//   spatial_view: a field given over material labels keeps the label as its
//     parameter but exposes spatial-chart hooks (grad = Grad * F^-1, rate at
//     fixed particle).  Views always install hooks, since numeric fallback
//     in the wrong parameter would be meaningless.
#pragma once

#include <functional>

#include "emte/fields.hpp"
#include "emte/tensor.hpp"

namespace emte {

struct Motion {
  std::function<Vec3(const Vec3&, double)> chi;
  std::function<Ten2(const Vec3&, double)> F;      // optional: Grad chi
  std::function<Ten3(const Vec3&, double)> F_grad; // optional: PairFirst, dF_ib/dX_c
  std::function<Ten2(const Vec3&, double)> F_dot;  // optional: dF/dt|X = Grad velocity
  std::function<Vec3(const Vec3&, double)> v;      // optional: dchi/dt|X
  std::function<Vec3(const Vec3&, double)> a;      // optional: d2chi/dt2|X
};

Motion identity_motion();

Vec3 chi_of(const Motion& m, const Vec3& X, double t);
Ten2 F_of(const Motion& m, const Vec3& X, double t, const FdConfig& fd = {});
Ten3 F_grad_of(const Motion& m, const Vec3& X, double t, const FdConfig& fd = {});
Ten2 F_dot_of(const Motion& m, const Vec3& X, double t, const FdConfig& fd = {});
Vec3 v_of(const Motion& m, const Vec3& X, double t, const FdConfig& fd = {});
Vec3 a_of(const Motion& m, const Vec3& X, double t, const FdConfig& fd = {});

// Pointwise kinematic bundle.  Throws Error when det F <= 0.
struct Kinematics {
  Vec3 x;      // current position
  Ten2 F;
  double J = 1.0;
  Ten2 F_inv;
  Ten2 c;      // F^T F
  Ten2 c_inv;
  Ten2 b;      // F F^T
  Vec3 v;      // spatial velocity at this particle
  Vec3 a;      // acceleration
  Vec3 V;      // convected velocity F^-1 v
  Ten2 L;      // spatial velocity gradient (Grad v) F^-1
};

Kinematics kinematics_at(const Motion& m, const Vec3& X, double t, const FdConfig& fd = {});

// Direct builder for states given by their deformation gradient rather than
// a motion (homogeneous bias states, single-point evaluations).  Derived
// blocks (J, inverses, c, b, V) are filled in; throws Error when det F <= 0.
Kinematics kinematics_from(const Ten2& F, const Vec3& v = {}, const Ten2& L = {},
                           const Vec3& x = {}, const Vec3& a = {});

// Motion-derived fields over (X, t), referential chart, exact hooks when the
// motion carries them (numeric otherwise, via the closures below).
TField deformation_field(const Motion& m, const FdConfig& fd = {});
VField velocity_field(const Motion& m, const FdConfig& fd = {});

// Field re-parameterizations across the motion.
SField material_view(const SField& f, const Motion& m, const FdConfig& fd = {});
VField material_view(const VField& f, const Motion& m, const FdConfig& fd = {});
TField material_view(const TField& f, const Motion& m, const FdConfig& fd = {});

SField spatial_view(const SField& f, const Motion& m, const FdConfig& fd = {});
VField spatial_view(const VField& f, const Motion& m, const FdConfig& fd = {});
TField spatial_view(const TField& f, const Motion& m, const FdConfig& fd = {});

// Rate helpers that work for either parameterization.
//   material_rate: D/Dt following the particle.
//   spatial_rate: d/dt at fixed current position.
double material_rate(const SField& f, const Motion& m, const Vec3& p, double t,
                     const FdConfig& fd = {});
Vec3 material_rate(const VField& f, const Motion& m, const Vec3& p, double t,
                   const FdConfig& fd = {});
double spatial_rate(const SField& f, const Motion& m, const Vec3& p, double t,
                    const FdConfig& fd = {});
Vec3 spatial_rate(const VField& f, const Motion& m, const Vec3& p, double t,
                  const FdConfig& fd = {});
Ten2 spatial_rate(const TField& f, const Motion& m, const Vec3& p, double t,
                  const FdConfig& fd = {});

} // namespace emte
