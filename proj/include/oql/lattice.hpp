#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oql/core.hpp"

namespace oql {

/// A finite lattice with an explicit carrier. Elements are identified by
/// index into `labels`; the order is stored as per-element down-sets and
/// up-sets, and both operations are tabulated at construction time.
///
/// Construction fails with LatticeError unless every pair has a unique
/// greatest lower bound and least upper bound, so an instance of this type
/// is always a genuine lattice.
struct FiniteLattice {
  std::string name;
  std::vector<std::string> labels;
  int n = 0;

  std::vector<Mask> below;  // below[x] = { y : y <= x }
  std::vector<Mask> above;  // above[x] = { y : x <= y }
  std::vector<int> meet_tab;
  std::vector<int> join_tab;
  int bottom = -1;
  int top = -1;

  bool leq(int a, int b) const { return has(below[b], a); }
  int meet(int a, int b) const { return meet_tab[a * n + b]; }
  int join(int a, int b) const { return join_tab[a * n + b]; }

  /// Join over a subset; empty join is the bottom element.
  int join_of(Mask s) const {
    int acc = bottom;
    for_each_bit(s, [&](int i) { acc = join(acc, i); });
    return acc;
  }
  /// Meet over a subset; empty meet is the top element.
  int meet_of(Mask s) const {
    int acc = top;
    for_each_bit(s, [&](int i) { acc = meet(acc, i); });
    return acc;
  }

  Mask universe() const { return universe_mask(n); }

  bool is_downclosed(Mask s) const {
    bool ok = true;
    for_each_bit(s, [&](int i) { ok = ok && (below[i] & ~s) == 0; });
    return ok;
  }

  /// Down-closure of a subset.
  Mask down_close(Mask s) const {
    Mask out = 0;
    for_each_bit(s, [&](int i) { out |= below[i]; });
    return out;
  }

  /// y covers x: x < y with nothing strictly between.
  bool covers(int y, int x) const;

  /// Elements covered by / covering x.
  std::vector<int> lower_covers(int x) const;
  std::vector<int> upper_covers(int x) const;

  /// Atoms: covers of bottom.
  Mask atoms() const;

  /// x is join-irreducible: x != bottom and x is not the join of the
  /// elements strictly below it.
  bool join_irreducible(int x) const;
  Mask join_irreducibles() const;
};

/// Build a lattice from labels and a cover relation (pairs lower < upper).
/// The reflexive-transitive closure of the covers must be a partial order
/// whose every pair has a unique meet and join.
FiniteLattice build_from_covers(std::string name,
                                std::vector<std::string> labels,
                                const std::vector<std::pair<int, int>>& covers);

/// Build a lattice from a full comparability predicate.
FiniteLattice build_from_leq(std::string name,
                             std::vector<std::string> labels,
                             const std::vector<std::vector<bool>>& leq);

/// A lattice equipped with an orthocomplementation: an involutive,
/// order-reversing map with x ^ x' = 0 and x v x' = 1. Construction
/// (attach_ortho) validates all three axioms.
struct OrthoLattice {
  FiniteLattice base;
  std::vector<int> ortho;  // ortho[x] = x'

  int prime(int x) const { return ortho[x]; }
};

/// Validate and attach an orthocomplementation. Throws LatticeError if any
/// axiom fails; the message names the offending element(s).
OrthoLattice attach_ortho(FiniteLattice lattice, std::vector<int> ortho);

// --- law checks -----------------------------------------------------------

/// Atoms exist under every nonzero element, and every element is the join
/// of the atoms below it.
Verdict atomisticity_check(const FiniteLattice& L);

/// For every atom p and element a with p ^ a = 0, the join a v p covers a.
Verdict covering_law_check(const FiniteLattice& L);

/// a <= b implies b = a v (a' ^ b).
Verdict orthomodularity_check(const OrthoLattice& L);

/// (x v y)' = x' ^ y' and (x ^ y)' = x' v y' for all pairs.
Verdict de_morgan_check(const OrthoLattice& L);

/// Binary meets distribute over binary joins (equivalently, in a finite
/// lattice, meets distribute over arbitrary joins).
Verdict frame_check(const FiniteLattice& L);

/// a <= c implies a v (b ^ c) = (a v b) ^ c.
Verdict modularity_check(const FiniteLattice& L);

/// For all atoms p != q with p ^ q = 0 there is an atom r with
/// r <= p v q, r != p, r != q.
Verdict superposition_check(const FiniteLattice& L);

/// Relative pseudocomplement a -> b = max { x : a ^ x <= b }. Only defined
/// when L satisfies frame_check; throws LatticeError otherwise.
int heyting_arrow(const FiniteLattice& L, int a, int b);

/// Exhaustive subset form of the frame law: x ^ join(S) = join { x ^ s }.
/// Serial reference and OpenMP kernel; both report the lexicographically
/// least witness (x, S) on failure. Subject to Limits::max_subset_elements.
std::optional<std::pair<int, Mask>> frame_law_scan_serial(const FiniteLattice& L,
                                                          const Limits& lim);
std::optional<std::pair<int, Mask>> frame_law_scan_omp(const FiniteLattice& L,
                                                       const Limits& lim);

}  // namespace oql
