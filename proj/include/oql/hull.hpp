#pragma once

#include <optional>
#include <vector>

#include "oql/lattice.hpp"

namespace oql {

/// S is admissible when every element's meet distributes over its join:
/// x ^ join(S) = join_{s in S} (x ^ s) for all x. The empty set is
/// admissible (both sides are bottom).
bool is_admissible_subset(const FiniteLattice& L, Mask s);

/// The hull of A: the least down-closed set containing A that is closed
/// under joins of its admissible subsets. Computed as a fixpoint.
Mask admissible_hull(const FiniteLattice& L, Mask a, const Limits& lim = {});

/// Single-pass form of the hull: { join(B) : B subset of the down-closure
/// of A, B admissible }. Agrees with the fixpoint on every finite lattice.
Mask admissible_hull_one_pass(const FiniteLattice& L, Mask a,
                              const Limits& lim = {});

/// Check that the fixpoint hull and the one-pass hull agree on every subset
/// of the carrier. Returns the least disagreeing subset (by mask value) or
/// nullopt. Serial reference and OpenMP kernel.
std::optional<Mask> closure_agreement_scan_serial(const FiniteLattice& L,
                                                  const Limits& lim = {});
std::optional<Mask> closure_agreement_scan_omp(const FiniteLattice& L,
                                               const Limits& lim = {});

/// All hull-closed subsets (equivalently: down-closed sets closed under
/// admissible joins), sorted by (popcount, mask value). The family always
/// contains {bottom} and the full carrier and is closed under intersection.
std::vector<Mask> enumerate_closed_ideals_serial(const FiniteLattice& L,
                                                 const Limits& lim = {});
std::vector<Mask> enumerate_closed_ideals_omp(const FiniteLattice& L,
                                              const Limits& lim = {});

/// The closed ideals of a lattice arranged as a lattice under inclusion.
/// `order` is materialised only when the family fits the 64-element carrier
/// cap; the ideal list itself is always available.
struct IdealLattice {
  const FiniteLattice* base = nullptr;
  std::vector<Mask> ideals;          // sorted by (popcount, value)
  std::optional<FiniteLattice> order;
  std::vector<int> principal;        // principal[x] = index of hull({x})

  int index_of(Mask m) const;        // -1 when m is not closed
  Mask closure_of(Mask a) const;     // least closed ideal containing a

  /// join(ideals[i]) in the base lattice.
  int resolution_to_base(int i) const;
  /// Index of the principal ideal of that join: the resolution map
  /// IdealLattice -> IdealLattice.
  int resolution(int i) const;
};

/// Enumerate the closed ideals of L and arrange them under inclusion.
IdealLattice build_ideal_lattice(const FiniteLattice& L, const Limits& lim = {});

// --- scans over set maps ----------------------------------------------------
// A set map src -> tgt is given by singleton images (images[x] is a subset of
// tgt) and extended to subsets by union; g(empty) = empty.

/// Union image of a subset under the singleton-image map.
Mask apply_set_map(const std::vector<Mask>& images, Mask x);

/// Hull factorization: hull(g(hull X)) = hull(g X) for every X in src.
/// Returns the least violating X, or nullopt. Serial reference and OpenMP
/// kernel; subject to the subset guard on src.
std::optional<Mask> hull_factorization_scan_serial(const FiniteLattice& src,
                                                   const FiniteLattice& tgt,
                                                   const std::vector<Mask>& images,
                                                   const Limits& lim = {});
std::optional<Mask> hull_factorization_scan_omp(const FiniteLattice& src,
                                                const FiniteLattice& tgt,
                                                const std::vector<Mask>& images,
                                                const Limits& lim = {});

/// Join compatibility: join(A) = join(B) implies join(g A) = join(g B).
/// Decided in a single pass over subsets, grouping them by join; returns a
/// violating pair (A, B) with equal joins, or nullopt.
std::optional<std::pair<Mask, Mask>> join_compat_scan(
    const FiniteLattice& src, const FiniteLattice& tgt,
    const std::vector<Mask>& images, const Limits& lim = {});

}  // namespace oql
