// SPDX-License-Identifier: MIT
//
// A Scene bundles a motion with the referential primary fields of a coupled
// electro-magneto-thermo-mechanical state: everything the residual evaluators
// need, parameterized by material label X and time.  Fields added here keep
// whatever analytic derivative hooks their ingredients carry, so residuals of
// manufactured states evaluate without finite-difference noise.
//
// Two construction styles:
//   - referential-primary: start from make_scene() and assign the referential
//     fields directly (e.g. built from space-time polynomials);
//   - Eulerian-primary: describe fields over current position and pull them
//     back across the motion with scene_from_eulerian().
// Either way, attach_constitutive() can replace the polarization,
// magnetization, and stress fields with composites derived from a free-energy
// model, with exact space/time derivatives obtained from the moduli by the
// chain rule.
#pragma once

#include "emte/constitutive.hpp"
#include "emte/motion.hpp"
#include "emte/transforms.hpp"

namespace emte {

// All field members use the referential chart and are parameterized by X.
struct Scene {
  Motion motion;
  Constants constants;
  Conductivities cond;
  double rho_r = 1000.0; // referential mass density (kg/m^3)
  double c_p = 1.0;      // specific heat capacity

  VField E_l, B_l, P_l, M_l; // referential electromagnetic fields
  VField J_E;                // referential effective free current
  SField rho_E;              // referential free charge density
  SField theta_l;            // referential temperature
  VField q_l;                // referential heat flux
  SField q_vol_l;            // referential volumetric heat source
  SField entropy;            // entropy per unit mass S(X, t)

  // Nominal stress, slot order (referential a, spatial i).  Zero by default;
  // assign directly or via attach_constitutive.
  TField T;

  FreeEnergyModel model; // engaged only when has_model is true
  bool has_model = false;
};

// Identity motion, every field identically zero (with exact hooks).
Scene make_scene();

// Eulerian description of the same content: fields over current position x
// (chart Spatial, label_param = false).  J is the total free current.
struct EulerianFields {
  VField E, B, P, M, J, q;
  SField rho_e, theta, q_vol, entropy;
};
EulerianFields make_eulerian_fields();

// Pull an Eulerian description back across a motion.  Constants,
// conductivities, and densities keep their defaults; set them afterwards.
Scene scene_from_eulerian(const Motion& m, const EulerianFields& f);

// Spatial-chart views of the scene content (parameterized by X, with spatial
// gradient hooks).  Jtot is the total free current J_e + rho_e v.
struct SceneEulerian {
  VField E, B, P, M, Jtot, q;
  SField rho_e, theta, q_vol;
};
SceneEulerian eulerian_views(const Scene& s);

// Convected effective fields as referential composites.
VField effective_E_field(const Scene& s); // E_el = E_l + V x B_l
VField effective_M_field(const Scene& s); // M_el = M_l + V x P_l

// Cauchy stress tau = J^-1 F T as a referential-parameter composite.
TField cauchy_stress_field(const Scene& s);

// Close the scene with a free-energy model: replaces P_l, M_l, and T by
// model-derived composites of (F, E_el, B_l, theta_l) and adopts the model's
// referential density.  Incompressible models are rejected (the pressure
// field is pointwise input, not scene data).  Call after the electromagnetic
// and thermal primaries are final; the composites capture them by value.
void attach_constitutive(Scene& s, const FreeEnergyModel& model);

// Pointwise bundles sampled from the scene.
PointState sample_state(const Scene& s, const Vec3& X, double t, const FdConfig& fd = {});
MaterialState material_state(const Scene& s, const Vec3& X, double t,
                             const FdConfig& fd = {});

} // namespace emte
