#pragma once

// Burst-synchronised reduction of the n = 2 network: both bursters share the
// slow variable u, and the fast dynamics are written either in the radii
// (r1, r2) or in longitudinal/transverse radii r_l = (r1 + r2) / 2,
// r_t = (r1 - r2) / 2, together with the phase difference phi = theta1 - theta2.
//
// These forms assume the pair is coupled all-to-all (c_12 = c_21 = 1); only
// kappa1 and kappa2 are read from the coupling.

#include <array>

#include "bautin/model.hpp"

namespace bautin {

/// Also used as the time derivative (r1', r2', phi', u').
struct ReducedState {
  double r1;
  double r2;
  double phi;
  double u;
};

/// Also used as the time derivative (r_l', r_t', phi', u').
struct LTState {
  double r_l;
  double r_t;
  double phi;
  double u;
};

/// Throws DomainError unless r1, r2 > 0. The output phi' is not wrapped.
ReducedState eval_reduced_field(const ReducedState& s, const ModelParams& p, const CouplingSpec& k);

/// Throws DomainError when r_l <= |r_t| (r1 r2 = 0 is singular).
LTState eval_lt_field(const LTState& s, const ModelParams& p, const CouplingSpec& k);

/// Fast part (r_l', r_t', phi') with u frozen; same domain as eval_lt_field.
std::array<double, 3> eval_lt_fast(double r_l, double r_t, double phi, double u,
                                   const ModelParams& p, const CouplingSpec& k);

/// Throws DomainError if the image violates r_l > |r_t|. phi is wrapped.
LTState r1r2_to_lt(const ReducedState& s);
/// Throws DomainError if r_l <= |r_t|. phi is wrapped.
ReducedState lt_to_r1r2(const LTState& s);

/// r_l' on the symmetric subspaces r_t = 0, phi in {0, pi}:
/// (u + 2 kappa1 cos phi) r_l + 2 r_l^3 - r_l^5.
/// Throws DomainError for r_l < 0 or phi not (within 1e-12) 0 or pi.
double eval_subspace_field(double r_l, double u, double phi, const ModelParams& p,
                           const CouplingSpec& k);

}  // namespace bautin
