#include "oql/lattice.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace oql {

namespace {

std::string describe(const std::vector<std::string>& labels, int i) {
  return labels[i];
}

// Finish construction from a validated-reflexive `below` relation: check
// antisymmetry and transitivity, tabulate meet/join, find bottom/top.
FiniteLattice finish_from_below(std::string name,
                                std::vector<std::string> labels,
                                std::vector<Mask> below) {
  const int n = static_cast<int>(labels.size());
  if (n == 0) throw LatticeError("lattice '" + name + "' has no elements");
  if (n > kMaxElements)
    throw LatticeError("lattice '" + name + "' has " + std::to_string(n) +
                       " elements; at most 64 are supported");

  FiniteLattice L;
  L.name = std::move(name);
  L.labels = std::move(labels);
  L.n = n;
  L.below = std::move(below);
  L.above.assign(n, 0);

  for (int x = 0; x < n; ++x) {
    if (!has(L.below[x], x))
      throw LatticeError("order on '" + L.name + "' is not reflexive at " +
                         describe(L.labels, x));
    for (int y = 0; y < n; ++y)
      if (has(L.below[x], y)) L.above[y] |= bit(x);
  }
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (has(L.below[x], y) && has(L.below[y], x))
        throw LatticeError("order on '" + L.name + "' is not antisymmetric: " +
                           describe(L.labels, x) + " and " +
                           describe(L.labels, y) + " are mutually comparable");
  for (int x = 0; x < n; ++x) {
    Mask closure = 0;
    for_each_bit(L.below[x], [&](int y) { closure |= L.below[y]; });
    if (closure != L.below[x])
      throw LatticeError("order on '" + L.name + "' is not transitive below " +
                         describe(L.labels, x));
  }

  // Meet of (a, b): the common lower bounds must have a unique maximal
  // element, which is then the greatest (any other common lower bound lies
  // below some maximal one). Dually for join.
  L.meet_tab.assign(static_cast<std::size_t>(n) * n, -1);
  L.join_tab.assign(static_cast<std::size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      Mask lower = L.below[a] & L.below[b];
      Mask upper = L.above[a] & L.above[b];
      // Climb to a maximal common lower bound, then verify it dominates all
      // of them; if a greatest lower bound exists the climb must reach it.
      int m = -1, j = -1;
      for_each_bit(lower, [&](int c) {
        if (m == -1 || has(L.below[c], m)) m = c;
      });
      if (m == -1 || (lower & ~L.below[m]) != 0)
        throw LatticeError("'" + L.name + "' is not a lattice: " +
                           describe(L.labels, a) + " and " +
                           describe(L.labels, b) + " have no meet");
      for_each_bit(upper, [&](int c) {
        if (j == -1 || has(L.below[j], c)) j = c;
      });
      if (j == -1 || (upper & ~L.above[j]) != 0)
        throw LatticeError("'" + L.name + "' is not a lattice: " +
                           describe(L.labels, a) + " and " +
                           describe(L.labels, b) + " have no join");
      L.meet_tab[a * n + b] = L.meet_tab[b * n + a] = m;
      L.join_tab[a * n + b] = L.join_tab[b * n + a] = j;
    }
  }

  L.bottom = 0;
  L.top = 0;
  for (int x = 1; x < n; ++x) {
    L.bottom = L.meet(L.bottom, x);
    L.top = L.join(L.top, x);
  }
  return L;
}

}  // namespace

bool FiniteLattice::covers(int y, int x) const {
  if (x == y || !leq(x, y)) return false;
  // strictly between: z with x < z < y
  Mask between = above[x] & below[y] & ~bit(x) & ~bit(y);
  return between == 0;
}

std::vector<int> FiniteLattice::lower_covers(int x) const {
  std::vector<int> out;
  for_each_bit(below[x] & ~bit(x), [&](int y) {
    if (covers(x, y)) out.push_back(y);
  });
  return out;
}

std::vector<int> FiniteLattice::upper_covers(int x) const {
  std::vector<int> out;
  for_each_bit(above[x] & ~bit(x), [&](int y) {
    if (covers(y, x)) out.push_back(y);
  });
  return out;
}

Mask FiniteLattice::atoms() const {
  Mask out = 0;
  for (int x = 0; x < n; ++x)
    if (covers(x, bottom)) out |= bit(x);
  return out;
}

bool FiniteLattice::join_irreducible(int x) const {
  if (x == bottom) return false;
  return join_of(below[x] & ~bit(x)) != x;
}

Mask FiniteLattice::join_irreducibles() const {
  Mask out = 0;
  for (int x = 0; x < n; ++x)
    if (join_irreducible(x)) out |= bit(x);
  return out;
}

FiniteLattice build_from_covers(std::string name,
                                std::vector<std::string> labels,
                                const std::vector<std::pair<int, int>>& covers) {
  const int n = static_cast<int>(labels.size());
  if (n > kMaxElements)
    throw LatticeError("lattice '" + name + "' has " + std::to_string(n) +
                       " elements; at most 64 are supported");
  std::vector<Mask> below(n, 0);
  for (int x = 0; x < n; ++x) below[x] = bit(x);
  for (auto [lo, hi] : covers) {
    if (lo < 0 || lo >= n || hi < 0 || hi >= n)
      throw LatticeError("cover pair out of range in '" + name + "'");
    below[hi] |= bit(lo);
  }
  // Reflexive-transitive closure; n rounds suffice.
  for (bool changed = true; changed;) {
    changed = false;
    for (int x = 0; x < n; ++x) {
      Mask closure = below[x];
      for_each_bit(below[x], [&](int y) { closure |= below[y]; });
      if (closure != below[x]) {
        below[x] = closure;
        changed = true;
      }
    }
  }
  return finish_from_below(std::move(name), std::move(labels), std::move(below));
}

FiniteLattice build_from_leq(std::string name,
                             std::vector<std::string> labels,
                             const std::vector<std::vector<bool>>& leq) {
  const int n = static_cast<int>(labels.size());
  if (static_cast<int>(leq.size()) != n)
    throw LatticeError("comparability table size mismatch in '" + name + "'");
  std::vector<Mask> below(n, 0);
  for (int y = 0; y < n; ++y) {
    if (static_cast<int>(leq[y].size()) != n)
      throw LatticeError("comparability table size mismatch in '" + name + "'");
    for (int x = 0; x < n; ++x)
      if (leq[x][y]) below[y] |= bit(x);
  }
  return finish_from_below(std::move(name), std::move(labels), std::move(below));
}

OrthoLattice attach_ortho(FiniteLattice lattice, std::vector<int> ortho) {
  const int n = lattice.n;
  if (static_cast<int>(ortho.size()) != n)
    throw LatticeError("orthocomplement table size mismatch in '" +
                       lattice.name + "'");
  for (int x = 0; x < n; ++x)
    if (ortho[x] < 0 || ortho[x] >= n)
      throw LatticeError("orthocomplement out of range in '" + lattice.name +
                         "'");
  for (int x = 0; x < n; ++x)
    if (ortho[ortho[x]] != x)
      throw LatticeError("orthocomplement on '" + lattice.name +
                         "' is not involutive at " + lattice.labels[x]);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (lattice.leq(x, y) && !lattice.leq(ortho[y], ortho[x]))
        throw LatticeError("orthocomplement on '" + lattice.name +
                           "' is not order-reversing at " + lattice.labels[x] +
                           " <= " + lattice.labels[y]);
  for (int x = 0; x < n; ++x) {
    if (lattice.meet(x, ortho[x]) != lattice.bottom)
      throw LatticeError("orthocomplement on '" + lattice.name +
                         "' violates x ^ x' = 0 at " + lattice.labels[x]);
    if (lattice.join(x, ortho[x]) != lattice.top)
      throw LatticeError("orthocomplement on '" + lattice.name +
                         "' violates x v x' = 1 at " + lattice.labels[x]);
  }
  return OrthoLattice{std::move(lattice), std::move(ortho)};
}

Verdict atomisticity_check(const FiniteLattice& L) {
  const Mask atoms = L.atoms();
  for (int x = 0; x < L.n; ++x) {
    if (x == L.bottom) continue;
    Mask under = L.below[x] & atoms;
    if (under == 0)
      return Verdict::fail("atomisticity", {x},
                           "no atom below " + L.labels[x]);
    if (L.join_of(under) != x)
      return Verdict::fail(
          "atomisticity", {x},
          L.labels[x] + " is not the join of the atoms below it");
  }
  return Verdict::ok("atomisticity");
}

Verdict covering_law_check(const FiniteLattice& L) {
  const Mask atoms = L.atoms();
  for (int a = 0; a < L.n; ++a) {
    Mask candidates = atoms & ~L.below[a];
    bool bad = false;
    int bad_p = -1;
    for_each_bit(candidates, [&](int p) {
      if (bad) return;
      if (L.meet(p, a) != L.bottom) return;
      if (!L.covers(L.join(a, p), a)) {
        bad = true;
        bad_p = p;
      }
    });
    if (bad)
      return Verdict::fail("covering law", {bad_p, a},
                           "join of " + L.labels[a] + " with atom " +
                               L.labels[bad_p] + " does not cover " +
                               L.labels[a]);
  }
  return Verdict::ok("covering law");
}

Verdict orthomodularity_check(const OrthoLattice& L) {
  const auto& B = L.base;
  for (int a = 0; a < B.n; ++a)
    for (int b = 0; b < B.n; ++b) {
      if (!B.leq(a, b)) continue;
      if (B.join(a, B.meet(L.ortho[a], b)) != b)
        return Verdict::fail("orthomodularity", {a, b},
                             B.labels[b] + " != " + B.labels[a] + " v (" +
                                 B.labels[L.ortho[a]] + " ^ " + B.labels[b] +
                                 ")");
    }
  return Verdict::ok("orthomodularity");
}

Verdict de_morgan_check(const OrthoLattice& L) {
  const auto& B = L.base;
  for (int x = 0; x < B.n; ++x)
    for (int y = 0; y < B.n; ++y) {
      if (L.ortho[B.join(x, y)] != B.meet(L.ortho[x], L.ortho[y]))
        return Verdict::fail("de morgan", {x, y},
                             "(x v y)' != x' ^ y' at x=" + B.labels[x] +
                                 ", y=" + B.labels[y]);
      if (L.ortho[B.meet(x, y)] != B.join(L.ortho[x], L.ortho[y]))
        return Verdict::fail("de morgan", {x, y},
                             "(x ^ y)' != x' v y' at x=" + B.labels[x] +
                                 ", y=" + B.labels[y]);
    }
  return Verdict::ok("de morgan");
}

Verdict frame_check(const FiniteLattice& L) {
  // In a finite lattice, binary distributivity already gives distributivity
  // of meets over arbitrary joins (fold the join two elements at a time), so
  // an O(n^3) pair scan decides the frame law exactly.
  for (int x = 0; x < L.n; ++x)
    for (int y = 0; y < L.n; ++y)
      for (int z = 0; z < L.n; ++z)
        if (L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z)))
          return Verdict::fail(
              "frame law", {x, y, z},
              L.labels[x] + " ^ (" + L.labels[y] + " v " + L.labels[z] +
                  ") != (" + L.labels[x] + " ^ " + L.labels[y] + ") v (" +
                  L.labels[x] + " ^ " + L.labels[z] + ")");
  return Verdict::ok("frame law");
}

Verdict modularity_check(const FiniteLattice& L) {
  for (int a = 0; a < L.n; ++a)
    for (int c = 0; c < L.n; ++c) {
      if (!L.leq(a, c)) continue;
      for (int b = 0; b < L.n; ++b)
        if (L.join(a, L.meet(b, c)) != L.meet(L.join(a, b), c))
          return Verdict::fail(
              "modularity", {a, b, c},
              L.labels[a] + " v (" + L.labels[b] + " ^ " + L.labels[c] +
                  ") != (" + L.labels[a] + " v " + L.labels[b] + ") ^ " +
                  L.labels[c]);
    }
  return Verdict::ok("modularity");
}

Verdict superposition_check(const FiniteLattice& L) {
  const Mask atoms = L.atoms();
  std::vector<int> atom_ids;
  for_each_bit(atoms, [&](int p) { atom_ids.push_back(p); });
  for (int p : atom_ids)
    for (int q : atom_ids) {
      if (p == q || L.meet(p, q) != L.bottom) continue;
      Mask third = atoms & L.below[L.join(p, q)] & ~bit(p) & ~bit(q);
      if (third == 0)
        return Verdict::fail("superposition", {p, q},
                             "no third atom below " + L.labels[p] + " v " +
                                 L.labels[q]);
    }
  return Verdict::ok("superposition");
}

int heyting_arrow(const FiniteLattice& L, int a, int b) {
  Verdict frame = frame_check(L);
  if (!frame)
    throw LatticeError("'" + L.name +
                       "' is not a frame; relative pseudocomplement undefined");
  int best = L.bottom;
  for (int x = 0; x < L.n; ++x)
    if (L.leq(L.meet(a, x), b)) best = L.join(best, x);
  return best;
}

namespace {

// One frame-law subset probe: does x ^ join(S) = join_{s in S} (x ^ s)?
inline bool frame_subset_ok(const FiniteLattice& L, int x, Mask s) {
  int lhs = L.meet(x, L.join_of(s));
  int rhs = L.bottom;
  for_each_bit(s, [&](int e) { rhs = L.join(rhs, L.meet(x, e)); });
  return lhs == rhs;
}

void guard_subset_scan(const FiniteLattice& L, const Limits& lim,
                       const char* what) {
  if (L.n > lim.max_subset_elements)
    throw GuardError(std::string(what) + " on '" + L.name + "' would scan 2^" +
                     std::to_string(L.n) + " subsets (limit 2^" +
                     std::to_string(lim.max_subset_elements) +
                     "); raise the subset guard to proceed");
}

}  // namespace

std::optional<std::pair<int, Mask>> frame_law_scan_serial(const FiniteLattice& L,
                                                          const Limits& lim) {
  guard_subset_scan(L, lim, "frame law scan");
  const Mask all = L.universe();
  for (Mask s = 0; ; ++s) {
    for (int x = 0; x < L.n; ++x)
      if (!frame_subset_ok(L, x, s)) return std::make_pair(x, s);
    if (s == all) break;
  }
  return std::nullopt;
}

std::optional<std::pair<int, Mask>> frame_law_scan_omp(const FiniteLattice& L,
                                                       const Limits& lim) {
  guard_subset_scan(L, lim, "frame law scan");
  const long long total = static_cast<long long>(L.universe()) + 1;
  int best_x = -1;
  Mask best_s = 0;
#pragma omp parallel
  {
    int loc_x = -1;
    Mask loc_s = 0;
#pragma omp for schedule(dynamic, 1024)
    for (long long sv = 0; sv < total; ++sv) {
      Mask s = static_cast<Mask>(sv);
      for (int x = 0; x < L.n; ++x) {
        if (!frame_subset_ok(L, x, s)) {
          if (loc_x == -1 || s < loc_s || (s == loc_s && x < loc_x)) {
            loc_x = x;
            loc_s = s;
          }
          break;
        }
      }
    }
#pragma omp critical
    {
      if (loc_x != -1 &&
          (best_x == -1 || loc_s < best_s || (loc_s == best_s && loc_x < best_x))) {
        best_x = loc_x;
        best_s = loc_s;
      }
    }
  }
  if (best_x == -1) return std::nullopt;
  return std::make_pair(best_x, best_s);
}

}  // namespace oql
