#include "oql/hull.hpp"

#include <algorithm>
#include <string>

namespace oql {

bool is_admissible_subset(const FiniteLattice& L, Mask s) {
  const int big = L.join_of(s);
  for (int x = 0; x < L.n; ++x) {
    int lhs = L.meet(x, big);
    int rhs = L.bottom;
    for_each_bit(s, [&](int e) { rhs = L.join(rhs, L.meet(x, e)); });
    if (lhs != rhs) return false;
  }
  return true;
}

namespace {

void guard_subsets(const FiniteLattice& L, const Limits& lim, const char* what) {
  if (L.n > lim.max_subset_elements)
    throw GuardError(std::string(what) + " on '" + L.name + "' would scan 2^" +
                     std::to_string(L.n) + " subsets (limit 2^" +
                     std::to_string(lim.max_subset_elements) +
                     "); raise the subset guard to proceed");
}

// Enumerate subsets of `space` (a mask) via the standard submask walk,
// calling f on each, including 0 and space itself.
template <typename F>
void for_each_submask(Mask space, F&& f) {
  Mask s = space;
  while (true) {
    f(s);
    if (s == 0) break;
    s = (s - 1) & space;
  }
}

}  // namespace

Mask admissible_hull(const FiniteLattice& L, Mask a, const Limits& lim) {
  guard_subsets(L, lim, "hull computation");
  Mask m = L.down_close(a | bit(L.bottom));
  for (bool grew = true; grew;) {
    grew = false;
    for_each_submask(m, [&](Mask s) {
      if (!is_admissible_subset(L, s)) return;
      int j = L.join_of(s);
      if ((L.below[j] & ~m) != 0) {
        m |= L.below[j];
        grew = true;
      }
    });
  }
  return m;
}

Mask admissible_hull_one_pass(const FiniteLattice& L, Mask a, const Limits& lim) {
  guard_subsets(L, lim, "hull computation");
  const Mask down = L.down_close(a | bit(L.bottom));
  Mask out = 0;
  for_each_submask(down, [&](Mask s) {
    if (is_admissible_subset(L, s)) out |= bit(L.join_of(s));
  });
  return out;
}

std::optional<Mask> closure_agreement_scan_serial(const FiniteLattice& L,
                                                  const Limits& lim) {
  guard_subsets(L, lim, "closure agreement scan");
  const Mask all = L.universe();
  for (Mask a = 0; ; ++a) {
    if (admissible_hull(L, a, lim) != admissible_hull_one_pass(L, a, lim))
      return a;
    if (a == all) break;
  }
  return std::nullopt;
}

std::optional<Mask> closure_agreement_scan_omp(const FiniteLattice& L,
                                               const Limits& lim) {
  guard_subsets(L, lim, "closure agreement scan");
  const long long total = static_cast<long long>(L.universe()) + 1;
  Mask best = ~Mask{0};
  bool found = false;
#pragma omp parallel
  {
    Mask loc = ~Mask{0};
    bool loc_found = false;
#pragma omp for schedule(dynamic, 64)
    for (long long av = 0; av < total; ++av) {
      Mask a = static_cast<Mask>(av);
      if (admissible_hull(L, a, lim) != admissible_hull_one_pass(L, a, lim)) {
        if (!loc_found || a < loc) {
          loc = a;
          loc_found = true;
        }
      }
    }
#pragma omp critical
    {
      if (loc_found && (!found || loc < best)) {
        best = loc;
        found = true;
      }
    }
  }
  if (!found) return std::nullopt;
  return best;
}

namespace {

bool is_closed_ideal(const FiniteLattice& L, Mask m) {
  if (!has(m, L.bottom)) return false;
  if (!L.is_downclosed(m)) return false;
  bool ok = true;
  for_each_submask(m, [&](Mask s) {
    if (!ok) return;
    if (is_admissible_subset(L, s) && !has(m, L.join_of(s))) ok = false;
  });
  return ok;
}

void sort_ideal_family(std::vector<Mask>& fam) {
  std::sort(fam.begin(), fam.end(), [](Mask a, Mask b) {
    int pa = popcount(a), pb = popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
}

// Recursively extend a down-closed set along a fixed linear extension of the
// order: element k joins only if everything below it is already in. This
// walks exactly the down-closed sets, of which there are usually far fewer
// than 2^n; each is then filtered for closure under admissible joins.
void downsets_rec(const FiniteLattice& L, const std::vector<int>& order,
                  std::size_t next, Mask cur, std::vector<Mask>& out) {
  out.push_back(cur);
  for (std::size_t k = next; k < order.size(); ++k) {
    int x = order[k];
    if ((L.below[x] & ~bit(x) & ~cur) == 0)
      downsets_rec(L, order, k + 1, cur | bit(x), out);
  }
}

std::vector<Mask> all_downsets(const FiniteLattice& L) {
  // Linear extension: sort elements by down-set size, ties by index.
  std::vector<int> order(L.n);
  for (int i = 0; i < L.n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int pa = popcount(L.below[a]), pb = popcount(L.below[b]);
    return pa != pb ? pa < pb : a < b;
  });
  std::vector<Mask> out;
  downsets_rec(L, order, 0, 0, out);
  return out;
}

}  // namespace

std::vector<Mask> enumerate_closed_ideals_serial(const FiniteLattice& L,
                                                 const Limits& lim) {
  guard_subsets(L, lim, "ideal enumeration");
  std::vector<Mask> fam;
  for (Mask m : all_downsets(L))
    if (has(m, L.bottom) && is_closed_ideal(L, m)) fam.push_back(m);
  sort_ideal_family(fam);
  return fam;
}

std::vector<Mask> enumerate_closed_ideals_omp(const FiniteLattice& L,
                                              const Limits& lim) {
  guard_subsets(L, lim, "ideal enumeration");
  std::vector<Mask> down = all_downsets(L);
  std::vector<char> keep(down.size(), 0);
  const long long total = static_cast<long long>(down.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < total; ++i)
    keep[i] = has(down[i], L.bottom) && is_closed_ideal(L, down[i]);
  std::vector<Mask> fam;
  for (long long i = 0; i < total; ++i)
    if (keep[i]) fam.push_back(down[i]);
  sort_ideal_family(fam);
  return fam;
}

Mask apply_set_map(const std::vector<Mask>& images, Mask x) {
  Mask out = 0;
  for_each_bit(x, [&](int e) { out |= images[e]; });
  return out;
}

namespace {

bool factorization_holds_at(const FiniteLattice& src, const FiniteLattice& tgt,
                            const std::vector<Mask>& images, Mask x,
                            const Limits& lim) {
  Mask direct = admissible_hull(tgt, apply_set_map(images, x), lim);
  Mask through =
      admissible_hull(tgt, apply_set_map(images, admissible_hull(src, x, lim)), lim);
  return direct == through;
}

}  // namespace

std::optional<Mask> hull_factorization_scan_serial(const FiniteLattice& src,
                                                   const FiniteLattice& tgt,
                                                   const std::vector<Mask>& images,
                                                   const Limits& lim) {
  guard_subsets(src, lim, "hull factorization scan");
  const Mask all = src.universe();
  for (Mask x = 0; ; ++x) {
    if (!factorization_holds_at(src, tgt, images, x, lim)) return x;
    if (x == all) break;
  }
  return std::nullopt;
}

std::optional<Mask> hull_factorization_scan_omp(const FiniteLattice& src,
                                                const FiniteLattice& tgt,
                                                const std::vector<Mask>& images,
                                                const Limits& lim) {
  guard_subsets(src, lim, "hull factorization scan");
  const long long total = static_cast<long long>(src.universe()) + 1;
  Mask best = ~Mask{0};
  bool found = false;
#pragma omp parallel
  {
    Mask loc = ~Mask{0};
    bool loc_found = false;
#pragma omp for schedule(dynamic, 64)
    for (long long xv = 0; xv < total; ++xv) {
      Mask x = static_cast<Mask>(xv);
      if (!factorization_holds_at(src, tgt, images, x, lim)) {
        if (!loc_found || x < loc) {
          loc = x;
          loc_found = true;
        }
      }
    }
#pragma omp critical
    {
      if (loc_found && (!found || loc < best)) {
        best = loc;
        found = true;
      }
    }
  }
  if (!found) return std::nullopt;
  return best;
}

std::optional<std::pair<Mask, Mask>> join_compat_scan(
    const FiniteLattice& src, const FiniteLattice& tgt,
    const std::vector<Mask>& images, const Limits& lim) {
  guard_subsets(src, lim, "join compatibility scan");
  // Group subsets by their join: within a group all image joins must agree,
  // so it suffices to compare each subset against the first one seen with
  // the same join.
  std::vector<Mask> representative(src.n);
  std::vector<int> image_join(src.n);
  std::vector<char> seen(src.n, 0);
  const Mask all = src.universe();
  for (Mask a = 0; ; ++a) {
    int j = src.join_of(a);
    int gj = tgt.join_of(apply_set_map(images, a));
    if (!seen[j]) {
      seen[j] = 1;
      representative[j] = a;
      image_join[j] = gj;
    } else if (image_join[j] != gj) {
      return std::make_pair(representative[j], a);
    }
    if (a == all) break;
  }
  return std::nullopt;
}

int IdealLattice::index_of(Mask m) const {
  for (std::size_t i = 0; i < ideals.size(); ++i)
    if (ideals[i] == m) return static_cast<int>(i);
  return -1;
}

Mask IdealLattice::closure_of(Mask a) const {
  // The family is closed under intersection, so the least member containing
  // `a` is the intersection of all members containing it.
  Mask out = base->universe();
  bool found = false;
  for (Mask m : ideals)
    if ((a & ~m) == 0) {
      out &= m;
      found = true;
    }
  return found ? out : base->universe();
}

int IdealLattice::resolution_to_base(int i) const {
  return base->join_of(ideals[i]);
}

int IdealLattice::resolution(int i) const {
  return principal[resolution_to_base(i)];
}

IdealLattice build_ideal_lattice(const FiniteLattice& L, const Limits& lim) {
  IdealLattice out;
  out.base = &L;
  out.ideals = enumerate_closed_ideals_serial(L, lim);

  const int k = static_cast<int>(out.ideals.size());
  if (k <= kMaxElements) {
    std::vector<std::vector<bool>> leq(k, std::vector<bool>(k, false));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        leq[i][j] = (out.ideals[i] & ~out.ideals[j]) == 0;
    std::vector<std::string> labels(k);
    for (int i = 0; i < k; ++i) {
      std::string& s = labels[i];
      s = "{";
      bool first = true;
      for_each_bit(out.ideals[i], [&](int e) {
        if (!first) s += ",";
        s += L.labels[e];
        first = false;
      });
      s += "}";
    }
    out.order = build_from_leq(L.name + " ideals", std::move(labels), leq);
  }

  out.principal.resize(L.n);
  for (int x = 0; x < L.n; ++x) {
    int idx = out.index_of(out.closure_of(bit(x)));
    if (idx < 0)
      throw LatticeError("hull of a principal set is not in the enumerated "
                         "ideal family of '" + L.name + "'");
    out.principal[x] = idx;
  }
  return out;
}

}  // namespace oql
