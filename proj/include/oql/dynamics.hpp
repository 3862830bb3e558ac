#pragma once

#include <optional>
#include <vector>

#include "oql/hull.hpp"
#include "oql/lattice.hpp"

namespace oql {

/// Projection of a onto b: b ^ (a v b'). Always <= b; idempotent in a.
int sasaki_project(const OrthoLattice& L, int b, int a);

/// Companion hook: b' v (b ^ c). On orthomodular lattices it is right
/// adjoint to the projection: project(b, a) <= c iff a <= hook(b, c).
int sasaki_hook(const OrthoLattice& L, int b, int c);

/// The adjunction above, scanned over all triples (b, a, c).
Verdict sasaki_adjunction_check(const OrthoLattice& L);

/// project(b, join(S)) = join of pointwise projections, over all b and all
/// subsets S. Subject to the subset guard.
Verdict sasaki_join_preservation_check(const OrthoLattice& L,
                                       const Limits& lim = {});

/// A two-outcome measurement with eigenproperties (b, b'). Requires an
/// orthomodular lattice. Degenerate setups (b in {0, 1}) are allowed and
/// flagged; state-level dynamics additionally needs the lattice atomistic
/// and satisfying the covering law (`state_capable`).
struct MeasurementSetup {
  const OrthoLattice* lattice = nullptr;
  int b = -1;
  int b_prime = -1;
  bool degenerate = false;
  bool state_capable = false;
};

MeasurementSetup make_measurement(const OrthoLattice& L, int b);

/// Image of one element under both projections: {project(b,x), project(b',x)}
/// as a subset of the carrier (0 kept).
Mask outcome_pair(const MeasurementSetup& m, int x);

/// Pointwise union of outcome_pair over a subset (0 kept).
Mask outcome_image(const MeasurementSetup& m, Mask x);

/// State transition: T (a set of atoms) to the possible outcome states,
/// both projections applied pointwise, bottom discarded. Throws LatticeError
/// unless the setup is state-capable; every returned member is an atom.
Mask pm_states(const MeasurementSetup& m, Mask t);

/// Ideal transition: the hull of the outcome image of the ideal.
Mask pm_ideals(const MeasurementSetup& m, Mask ideal, const Limits& lim = {});

/// Strongest-property transition: project(b,a) v project(b',a).
int pm_strongest(const MeasurementSetup& m, int a);

/// Resolution of a set of states: its join. Throws LatticeError if a member
/// is not an atom.
int state_resolution(const FiniteLattice& L, Mask t);

/// The three commutation squares of a measurement, each scanned
/// exhaustively:
///   1. states:  strongest(join T) = join(pm_states T) over all atom sets T
///   2. ideals:  strongest(join A) = join(pm_ideals A) over all closed ideals
///   3. factorization: hull(image(hull X)) = hull(image X) over all X
/// Verdicts come back in that order; unmet preconditions fail the affected
/// square with an explanatory detail.
std::vector<Verdict> verify_pm_diagrams(const MeasurementSetup& m,
                                        const IdealLattice& di,
                                        const Limits& lim = {});

}  // namespace oql
