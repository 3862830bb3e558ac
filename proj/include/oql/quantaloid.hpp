#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "oql/dynamics.hpp"
#include "oql/hull.hpp"
#include "oql/lattice.hpp"

namespace oql {

/// A join-preserving map between finite lattices, stored as a full table.
struct SupMorphism {
  const FiniteLattice* dom = nullptr;
  const FiniteLattice* cod = nullptr;
  std::vector<int> table;

  int operator()(int x) const { return table[x]; }
  bool operator==(const SupMorphism& o) const { return table == o.table; }
};

/// Bottom and binary joins preserved (enough for all joins, finitely).
Verdict validate_sup_morphism(const SupMorphism& f);

SupMorphism identity_morphism(const FiniteLattice& L);
SupMorphism bottom_morphism(const FiniteLattice& dom, const FiniteLattice& cod);
SupMorphism compose(const SupMorphism& g, const SupMorphism& f);  // g after f
SupMorphism pointwise_join(const SupMorphism& f, const SupMorphism& g);
bool pointwise_leq(const SupMorphism& f, const SupMorphism& g);

/// All sup-morphisms dom -> cod, enumerated by their values on the
/// join-irreducibles of dom (a sup-morphism is determined there) and fully
/// validated. Sorted lexicographically by table. Serial reference and
/// OpenMP kernel; candidate count |cod|^|irreducibles| is guarded.
std::vector<SupMorphism> enumerate_sup_morphisms_serial(
    const FiniteLattice& dom, const FiniteLattice& cod, const Limits& lim = {});
std::vector<SupMorphism> enumerate_sup_morphisms_omp(
    const FiniteLattice& dom, const FiniteLattice& cod, const Limits& lim = {});

/// A hom-set of sup-morphisms under the pointwise order. `order` is
/// materialised only when the hom-set fits the 64-element carrier cap.
struct HomLattice {
  const FiniteLattice* dom = nullptr;
  const FiniteLattice* cod = nullptr;
  std::vector<SupMorphism> morphisms;  // sorted lexicographically by table
  std::optional<FiniteLattice> order;
};

HomLattice build_hom_lattice(const FiniteLattice& dom, const FiniteLattice& cod,
                             const Limits& lim = {});

/// The hom-set is a complete lattice: closed under pointwise joins, has a
/// bottom, and every pair has a greatest lower bound within the set.
Verdict hom_completeness_check(const HomLattice& H);

/// Composition distributes over pointwise joins on both sides, over all
/// triples of an endo-hom-set.
Verdict hom_distributivity_check(const HomLattice& H);

// --- quantale of inductions -------------------------------------------------

/// A set of endomorphisms closed under composition and pointwise joins,
/// with the identity (the "freeze") as unit and the bottom morphism as the
/// empty sup.
struct Quantale {
  const FiniteLattice* carrier = nullptr;
  std::vector<SupMorphism> elements;  // sorted lexicographically by table
  int identity_index = -1;
  int bottom_index = -1;
};

/// Close the generators (plus identity and bottom) under composition and
/// binary pointwise joins. Throws GuardError when the closure exceeds
/// Limits::max_quantale_closure.
Quantale generate_quantale(const FiniteLattice& L,
                           const std::vector<SupMorphism>& generators,
                           const Limits& lim = {});

Verdict quantale_associativity_check(const Quantale& Q);
Verdict quantale_unit_check(const Quantale& Q);
/// Binary distributivity of composition over joins on both sides; when the
/// quantale is small enough, also over every subset (including the empty
/// one, i.e. annihilation by bottom).
Verdict quantale_distributivity_check(const Quantale& Q, const Limits& lim = {});

/// The powerset of the atom set of L as a lattice: element i is the atom
/// subset with mask i (atoms listed in carrier order), ordered by inclusion.
FiniteLattice atom_powerset(const FiniteLattice& L);

/// The state transition of a measurement as an endomorphism of the atom
/// powerset. Requires a state-capable setup.
SupMorphism pm_states_lift(const MeasurementSetup& m, const FiniteLattice& P);

// --- union-preserving set maps and the categorical layer --------------------

/// A map of powersets determined by singleton images and extended by union.
struct PSupMorphism {
  const FiniteLattice* dom = nullptr;
  const FiniteLattice* cod = nullptr;
  std::vector<Mask> images;  // images[x] is a subset of cod

  Mask apply(Mask x) const { return apply_set_map(images, x); }
};

PSupMorphism identity_psup(const FiniteLattice& L);
PSupMorphism compose(const PSupMorphism& g, const PSupMorphism& f);

/// The outcome images of a measurement as a PSupMorphism on its carrier.
PSupMorphism pm_image_map(const MeasurementSetup& m);

/// Hull factorization (hull . g . hull = hull . g, subset-exhaustive) plus
/// join compatibility. Both witnesses reported.
Verdict validate_psup(const PSupMorphism& g, const Limits& lim = {});

/// A morphism of ideal lattices, stored as a table over ideal indices.
struct DCHeytMorphism {
  const IdealLattice* dom = nullptr;
  const IdealLattice* cod = nullptr;
  std::vector<int> table;

  bool operator==(const DCHeytMorphism& o) const { return table == o.table; }
};

DCHeytMorphism identity_dcheyt(const IdealLattice& di);
DCHeytMorphism compose(const DCHeytMorphism& g, const DCHeytMorphism& f);

/// Join preservation over all ideal pairs plus the resolution condition:
/// equal resolutions map to equal resolutions.
Verdict validate_dcheyt(const DCHeytMorphism& h);

/// F: set maps to ideal maps, A |-> hull(g(A)).
DCHeytMorphism functor_F(const PSupMorphism& g, const IdealLattice& dom_di,
                         const IdealLattice& cod_di, const Limits& lim = {});

/// G: ideal maps to lattice maps, x |-> resolution(h(principal x)).
SupMorphism functor_G(const DCHeytMorphism& h);

/// H: set maps to lattice maps, x |-> join(g(down-set of x)).
SupMorphism functor_H(const PSupMorphism& g);

/// G(F(g)) = H(g), table-exhaustive.
Verdict triangle_check(const PSupMorphism& g, const IdealLattice& dom_di,
                       const IdealLattice& cod_di, const Limits& lim = {});

/// Result of searching DI(L) endomorphisms for a G-collision: two distinct
/// validated ideal maps with the same G-image.
struct NonfaithfulReport {
  std::uint64_t space = 0;      // candidate assignments on irreducible ideals
  std::uint64_t examined = 0;
  bool truncated = false;
  std::size_t validated_endos = 0;
  std::size_t collision_classes = 0;
  std::uint64_t collision_pairs = 0;
  std::optional<std::pair<std::vector<int>, std::vector<int>>> witness;
  std::vector<int> witness_g;
};

NonfaithfulReport nonfaithful_search(const IdealLattice& di,
                                     const Limits& lim = {});

}  // namespace oql
