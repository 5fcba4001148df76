// SPDX-License-Identifier: MIT
//
// Manufactured electromagnetic states: closed-form space-time polynomial
// fields constructed so the current-configuration Maxwell system is satisfied
// identically.  The magnetic field comes from a vector potential and the
// electric field from the scalar/vector potential pair, which makes the two
// homogeneous equations exact; the charge and current densities are then
// *defined* by the two inhomogeneous equations, closing the system for any
// choice of polarization and magnetization.
#pragma once

#include "emte/scene.hpp"
#include "emte/tpoly.hpp"

namespace emte {

struct ManufacturedEM {
  TPolyVec A;    // magnetic vector potential (B = curl A)
  TPoly phi;     // electric scalar potential (E = -grad phi - dA/dt)
  TPolyVec P, M; // free choices
  TPoly theta;   // optional thermal content
  TPolyVec q;
  TPoly q_vol;
  TPoly entropy;
};

// Eulerian field pack over current position satisfying all four Maxwell
// equations identically, with exact derivative hooks.
inline EulerianFields eulerian_maxwell_exact(const ManufacturedEM& m, const Constants& c) {
  const TPolyVec B = m.A.curl();
  const TPolyVec grad_phi{m.phi.dx(0), m.phi.dx(1), m.phi.dx(2)};
  const TPolyVec E = (-1.0) * grad_phi + (-1.0) * m.A.dt();

  // Gauss: rho_e = div(eps0 E + P).
  const TPoly rho_e = c.eps0 * E.div() + m.P.div();
  // Ampere: J = curl(B/mu0 - M) - d(eps0 E + P)/dt.
  const TPolyVec H = (1.0 / c.mu0) * B + (-1.0) * m.M;
  const TPolyVec J = H.curl() + (-c.eps0) * E.dt() + (-1.0) * m.P.dt();

  EulerianFields f = make_eulerian_fields();
  f.E = field_of(E, Chart::Spatial, false);
  f.B = field_of(B, Chart::Spatial, false);
  f.P = field_of(m.P, Chart::Spatial, false);
  f.M = field_of(m.M, Chart::Spatial, false);
  f.J = field_of(J, Chart::Spatial, false);
  f.rho_e = field_of(rho_e, Chart::Spatial, false);
  f.theta = field_of(m.theta, Chart::Spatial, false);
  f.q = field_of(m.q, Chart::Spatial, false);
  f.q_vol = field_of(m.q_vol, Chart::Spatial, false);
  f.entropy = field_of(m.entropy, Chart::Spatial, false);
  return f;
}

} // namespace emte
