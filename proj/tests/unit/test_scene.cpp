// SPDX-License-Identifier: MIT
#include "doctest.h"

#include <cmath>

#include "emte/manufactured.hpp"
#include "emte/rng.hpp"
#include "emte/scene.hpp"
#include "emte/tpoly.hpp"

using namespace emte;

namespace {

// A smooth compressible motion with full polynomial hooks: mild stretch,
// shear, and oscillation, invertible near the unit cube for |t| <= 1.
Motion wobbly_motion() {
  TPolyVec chi;
  chi.x = TPoly::term(1.0, 1, 0, 0) + TPoly::term(0.08, 0, 1, 0, 1.3, 0.2) +
          TPoly::term(0.03, 2, 0, 0) + TPoly::term(0.05, 0, 0, 0, 0.7, 0.0);
  chi.y = TPoly::term(1.0, 0, 1, 0) + TPoly::term(0.06, 0, 0, 1) +
          TPoly::term(0.04, 1, 1, 0, 0.9, 0.5);
  chi.z = TPoly::term(1.0, 0, 0, 1) + TPoly::term(0.05, 1, 0, 0, 1.1, 0.0) +
          TPoly::term(0.02, 0, 2, 0);
  return motion_of(chi);
}

ManufacturedEM demo_manufactured() {
  ManufacturedEM m;
  m.A.x = TPoly::term(0.4, 0, 1, 1, 0.8, 0.1);
  m.A.y = TPoly::term(0.3, 1, 0, 0, 1.2, 0.0) + TPoly::term(0.2, 0, 0, 2);
  m.A.z = TPoly::term(0.5, 0, 2, 0, 0.6, 0.4);
  m.phi = TPoly::term(0.7, 1, 1, 0, 1.0, 0.0) + TPoly::term(0.3, 0, 0, 1);
  m.P.x = TPoly::term(0.25, 0, 1, 0, 0.5, 0.0);
  m.P.z = TPoly::term(0.15, 1, 0, 1);
  m.M.y = TPoly::term(0.35, 0, 0, 1, 0.9, 0.3);
  m.M.z = TPoly::term(0.2, 1, 1, 0);
  m.theta = TPoly(310.0) + TPoly::term(4.0, 1, 0, 1, 0.8, 0.0);
  m.q.x = TPoly::term(0.6, 0, 1, 0);
  m.q.y = TPoly::term(0.4, 0, 0, 1, 1.1, 0.0);
  m.q_vol = TPoly::term(0.8, 1, 0, 0, 0.7, 0.2);
  m.entropy = TPoly(2.0) + TPoly::term(0.3, 0, 1, 0, 0.6, 0.0);
  return m;
}

void check_close(const Vec3& a, const Vec3& b, double tol) {
  CHECK(norm(a - b) <= tol * std::max(1.0, std::max(norm(a), norm(b))));
}

} // namespace

TEST_CASE("empty scene samples to the rest state") {
  const Scene s = make_scene();
  const PointState st = sample_state(s, {0.3, -0.2, 0.7}, 1.4);
  CHECK(norm_inf(st.kin.F - Ten2::identity()) == 0.0);
  CHECK(st.kin.J == 1.0);
  CHECK(norm(st.em.E) == 0.0);
  CHECK(norm(st.em.B) == 0.0);
  CHECK(st.th.theta == 0.0);
}

TEST_CASE("pull-back from an Eulerian description and the views invert it") {
  const Motion mo = wobbly_motion();
  const EulerianFields ef = eulerian_maxwell_exact(demo_manufactured(), Constants{});
  const Scene s = scene_from_eulerian(mo, ef);
  const SceneEulerian v = eulerian_views(s);

  const Vec3 X{0.4, -0.3, 0.6};
  const double t = 0.8;
  const Vec3 x = chi_of(mo, X, t);

  CHECK(norm(value(v.E, X, t) - value(ef.E, x, t)) < 1e-12);
  CHECK(norm(value(v.B, X, t) - value(ef.B, x, t)) < 1e-12);
  CHECK(norm(value(v.P, X, t) - value(ef.P, x, t)) < 1e-12);
  CHECK(norm(value(v.M, X, t) - value(ef.M, x, t)) < 1e-12);
  CHECK(norm(value(v.q, X, t) - value(ef.q, x, t)) < 1e-12);
  CHECK(value(v.rho_e, X, t) == doctest::Approx(value(ef.rho_e, x, t)).epsilon(1e-12));
  CHECK(value(v.theta, X, t) == doctest::Approx(value(ef.theta, x, t)).epsilon(1e-12));
  CHECK(value(v.q_vol, X, t) == doctest::Approx(value(ef.q_vol, x, t)).epsilon(1e-12));

  // Total current view = J_e + rho_e v.
  const Kinematics k = kinematics_at(mo, X, t);
  const Vec3 J_direct = value(ef.J, x, t);
  CHECK(norm(value(v.Jtot, X, t) - J_direct) < 1e-12 * std::max(1.0, norm(J_direct)));
  CHECK(k.J > 0.0);
}

TEST_CASE("scene pull-backs agree with the pointwise transform maps") {
  const Motion mo = wobbly_motion();
  const EulerianFields ef = eulerian_maxwell_exact(demo_manufactured(), Constants{});
  const Scene s = scene_from_eulerian(mo, ef);

  Rng rng(77);
  for (int i = 0; i < 20; ++i) {
    const Vec3 X = rng.vec(-0.6, 0.6);
    const double t = rng.uniform(-1.0, 1.0);
    const Vec3 x = chi_of(mo, X, t);
    const Kinematics k = kinematics_at(mo, X, t);

    EMStateEulerian em;
    em.E = value(ef.E, x, t);
    em.B = value(ef.B, x, t);
    em.P = value(ef.P, x, t);
    em.M = value(ef.M, x, t);
    em.rho_e = value(ef.rho_e, x, t);
    em.J = value(ef.J, x, t);
    const EMStateLagrangian eml = pull_back_em(em, k);

    check_close(value(s.E_l, X, t), eml.E_l, 1e-12);
    check_close(value(s.B_l, X, t), eml.B_l, 1e-12);
    check_close(value(s.P_l, X, t), eml.P_l, 1e-12);
    check_close(value(s.M_l, X, t), eml.M_l, 1e-12);
    check_close(value(s.J_E, X, t), eml.J_E, 1e-12);
    CHECK(value(s.rho_E, X, t) == doctest::Approx(eml.rho_E).epsilon(1e-12));
  }
}

TEST_CASE("effective-field composites match the pointwise builders") {
  const Motion mo = wobbly_motion();
  const EulerianFields ef = eulerian_maxwell_exact(demo_manufactured(), Constants{});
  const Scene s = scene_from_eulerian(mo, ef);
  const VField E_el = effective_E_field(s);
  const VField M_el = effective_M_field(s);

  const Vec3 X{-0.2, 0.5, 0.1};
  const double t = 0.6;
  const PointState st = sample_state(s, X, t);
  check_close(value(E_el, X, t), st.effl.E_el, 1e-12);
  check_close(value(M_el, X, t), st.effl.M_el, 1e-12);
}

TEST_CASE("model closure: values match the pointwise response") {
  const Motion mo = wobbly_motion();
  Scene s = scene_from_eulerian(mo, eulerian_maxwell_exact(demo_manufactured(), Constants{}));
  // Rescale temperature into the demo model's working range.
  s.theta_l = field_of(TPoly(1.0) + TPoly::term(0.2, 1, 0, 0, 0.9, 0.0), Chart::Referential,
                       true);
  attach_constitutive(s, make_demo_model(CoupledCoefficients{}));

  const Vec3 X{0.3, 0.2, -0.4};
  const double t = 0.5;
  const MaterialState ms = material_state(s, X, t);
  const MaterialResponse r = evaluate_response(s.model, ms);

  CHECK(norm_inf(value(s.T, X, t) - r.T) <= 1e-14 * (1.0 + norm_inf(r.T)));
  check_close(value(s.P_l, X, t), r.P_l, 1e-14);

  const Kinematics k = kinematics_at(mo, X, t);
  check_close(value(s.M_l, X, t), r.M_el - cross(k.V, r.P_l), 1e-13);

  // Cauchy composite agrees with the response push-forward.
  check_close(Vec3{value(cauchy_stress_field(s), X, t)(0, 0),
                   value(cauchy_stress_field(s), X, t)(1, 1),
                   value(cauchy_stress_field(s), X, t)(2, 2)},
              Vec3{r.tau(0, 0), r.tau(1, 1), r.tau(2, 2)}, 1e-13);
}

TEST_CASE("model closure: derivative hooks match finite differences") {
  const Motion mo = wobbly_motion();
  Scene s = scene_from_eulerian(mo, eulerian_maxwell_exact(demo_manufactured(), Constants{}));
  s.theta_l = field_of(TPoly(1.0) + TPoly::term(0.2, 1, 0, 0, 0.9, 0.0), Chart::Referential,
                       true);
  attach_constitutive(s, make_demo_model(CoupledCoefficients{}));

  const Vec3 X{0.15, -0.25, 0.35};
  const double t = 0.7;
  const double h = 1e-6;

  // Space: central differences of the values along each axis.
  const Ten3 Tg = grad_of(s.T, X, t);
  const Ten2 Pg = grad_of(s.P_l, X, t);
  const Ten2 Mg = grad_of(s.M_l, X, t);
  for (int c = 0; c < 3; ++c) {
    Vec3 Xp = X, Xm = X;
    Xp[c] += h;
    Xm[c] -= h;
    const Ten2 dT = (1.0 / (2.0 * h)) * (value(s.T, Xp, t) - value(s.T, Xm, t));
    const Vec3 dP = (1.0 / (2.0 * h)) * (value(s.P_l, Xp, t) - value(s.P_l, Xm, t));
    const Vec3 dM = (1.0 / (2.0 * h)) * (value(s.M_l, Xp, t) - value(s.M_l, Xm, t));
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 3; ++i) CHECK(Tg.at(a, i, c) == doctest::Approx(dT(a, i)).epsilon(5e-9));
    for (int i = 0; i < 3; ++i) {
      CHECK(Pg(i, c) == doctest::Approx(dP[i]).epsilon(5e-9));
      CHECK(Mg(i, c) == doctest::Approx(dM[i]).epsilon(5e-9));
    }
  }

  // Time: same treatment.
  const Ten2 Td = dt_of(s.T, X, t);
  const Vec3 Pd = dt_of(s.P_l, X, t);
  const Vec3 Md = dt_of(s.M_l, X, t);
  const Ten2 dT = (1.0 / (2.0 * h)) * (value(s.T, X, t + h) - value(s.T, X, t - h));
  const Vec3 dP = (1.0 / (2.0 * h)) * (value(s.P_l, X, t + h) - value(s.P_l, X, t - h));
  const Vec3 dM = (1.0 / (2.0 * h)) * (value(s.M_l, X, t + h) - value(s.M_l, X, t - h));
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i) CHECK(Td(a, i) == doctest::Approx(dT(a, i)).epsilon(5e-9));
  for (int i = 0; i < 3; ++i) {
    CHECK(Pd[i] == doctest::Approx(dP[i]).epsilon(5e-9));
    CHECK(Md[i] == doctest::Approx(dM[i]).epsilon(5e-9));
  }
}

TEST_CASE("model closure rejects incompressible models and missing energies") {
  Scene s = make_scene();
  CHECK_THROWS_AS(attach_constitutive(s, make_neo_hookean(1.0, 1000.0, true)), Error);
  CHECK_THROWS_AS(attach_constitutive(s, FreeEnergyModel{}), Error);
}
