#include "oql/quantaloid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace oql {

namespace {

std::string set_text(const FiniteLattice& L, Mask m) {
  std::string s = "{";
  bool first = true;
  for_each_bit(m, [&](int e) {
    if (!first) s += ",";
    s += L.labels[e];
    first = false;
  });
  return s + "}";
}

void require_same_carrier(const FiniteLattice* a, const FiniteLattice* b,
                          const char* what) {
  if (a != b)
    throw LatticeError(std::string(what) + ": incompatible carriers");
}

}  // namespace

Verdict validate_sup_morphism(const SupMorphism& f) {
  const auto& D = *f.dom;
  const auto& C = *f.cod;
  if (static_cast<int>(f.table.size()) != D.n)
    return Verdict::fail("sup-morphism", {}, "table size mismatch");
  for (int x = 0; x < D.n; ++x)
    if (f.table[x] < 0 || f.table[x] >= C.n)
      return Verdict::fail("sup-morphism", {x}, "table value out of range");
  if (f.table[D.bottom] != C.bottom)
    return Verdict::fail("sup-morphism", {D.bottom},
                         "bottom maps to " + C.labels[f.table[D.bottom]] +
                             ", not to bottom");
  for (int x = 0; x < D.n; ++x)
    for (int y = x + 1; y < D.n; ++y)
      if (f.table[D.join(x, y)] != C.join(f.table[x], f.table[y]))
        return Verdict::fail("sup-morphism", {x, y},
                             "join of " + D.labels[x] + " and " + D.labels[y] +
                                 " is not preserved");
  return Verdict::ok("sup-morphism");
}

SupMorphism identity_morphism(const FiniteLattice& L) {
  SupMorphism f;
  f.dom = f.cod = &L;
  f.table.resize(L.n);
  for (int x = 0; x < L.n; ++x) f.table[x] = x;
  return f;
}

SupMorphism bottom_morphism(const FiniteLattice& dom, const FiniteLattice& cod) {
  SupMorphism f;
  f.dom = &dom;
  f.cod = &cod;
  f.table.assign(dom.n, cod.bottom);
  return f;
}

SupMorphism compose(const SupMorphism& g, const SupMorphism& f) {
  require_same_carrier(f.cod, g.dom, "compose");
  SupMorphism out;
  out.dom = f.dom;
  out.cod = g.cod;
  out.table.resize(f.table.size());
  for (std::size_t x = 0; x < f.table.size(); ++x)
    out.table[x] = g.table[f.table[x]];
  return out;
}

SupMorphism pointwise_join(const SupMorphism& f, const SupMorphism& g) {
  require_same_carrier(f.dom, g.dom, "pointwise join");
  require_same_carrier(f.cod, g.cod, "pointwise join");
  SupMorphism out;
  out.dom = f.dom;
  out.cod = f.cod;
  out.table.resize(f.table.size());
  for (std::size_t x = 0; x < f.table.size(); ++x)
    out.table[x] = f.cod->join(f.table[x], g.table[x]);
  return out;
}

bool pointwise_leq(const SupMorphism& f, const SupMorphism& g) {
  for (std::size_t x = 0; x < f.table.size(); ++x)
    if (!f.cod->leq(f.table[x], g.table[x])) return false;
  return true;
}

namespace {

// A sup-morphism is determined by its values on the join-irreducibles of the
// domain: every x is the join of the irreducibles below it. Enumeration runs
// over assignments irr -> cod (mixed-radix candidate index), keeps the
// monotone ones whose join-extension restricts back to the assignment, and
// validates join preservation in full.
struct SupEnumSpace {
  std::vector<int> irr;
  std::vector<Mask> irr_in;              // per dom element: mask over irr slots
  std::vector<std::pair<int, int>> leq_pairs;  // (s, t) with irr[s] <= irr[t]
  std::uint64_t space = 0;
};

SupEnumSpace make_enum_space(const FiniteLattice& dom, const FiniteLattice& cod,
                             const Limits& lim) {
  SupEnumSpace es;
  for_each_bit(dom.join_irreducibles(), [&](int x) { es.irr.push_back(x); });
  es.irr_in.assign(dom.n, 0);
  for (int x = 0; x < dom.n; ++x)
    for (std::size_t t = 0; t < es.irr.size(); ++t)
      if (dom.leq(es.irr[t], x)) es.irr_in[x] |= bit(static_cast<int>(t));
  for (std::size_t s = 0; s < es.irr.size(); ++s)
    for (std::size_t t = 0; t < es.irr.size(); ++t)
      if (s != t && dom.leq(es.irr[s], es.irr[t]))
        es.leq_pairs.emplace_back(static_cast<int>(s), static_cast<int>(t));
  es.space = 1;
  for (std::size_t t = 0; t < es.irr.size(); ++t) {
    if (es.space > lim.max_search_candidates / static_cast<std::uint64_t>(cod.n) + 1)
      throw GuardError("sup-morphism enumeration from '" + dom.name + "' to '" +
                       cod.name + "' exceeds the candidate guard");
    es.space *= static_cast<std::uint64_t>(cod.n);
  }
  if (es.space > lim.max_search_candidates)
    throw GuardError("sup-morphism enumeration from '" + dom.name + "' to '" +
                     cod.name + "' exceeds the candidate guard");
  return es;
}

// Decode, filter, extend, and validate one candidate; returns true and fills
// `table` when the candidate is a (canonically assigned) sup-morphism.
bool try_candidate(const FiniteLattice& dom, const FiniteLattice& cod,
                   const SupEnumSpace& es, std::uint64_t c,
                   std::vector<int>& img, std::vector<int>& table) {
  img.resize(es.irr.size());
  for (std::size_t t = 0; t < es.irr.size(); ++t) {
    img[t] = static_cast<int>(c % cod.n);
    c /= cod.n;
  }
  for (auto [s, t] : es.leq_pairs)
    if (!cod.leq(img[s], img[t])) return false;
  table.resize(dom.n);
  for (int x = 0; x < dom.n; ++x) {
    int acc = cod.bottom;
    for_each_bit(es.irr_in[x], [&](int t) { acc = cod.join(acc, img[t]); });
    table[x] = acc;
  }
  for (std::size_t t = 0; t < es.irr.size(); ++t)
    if (table[es.irr[t]] != img[t]) return false;
  for (int x = 0; x < dom.n; ++x)
    for (int y = x + 1; y < dom.n; ++y)
      if (table[dom.join(x, y)] != cod.join(table[x], table[y])) return false;
  return true;
}

}  // namespace

std::vector<SupMorphism> enumerate_sup_morphisms_serial(
    const FiniteLattice& dom, const FiniteLattice& cod, const Limits& lim) {
  SupEnumSpace es = make_enum_space(dom, cod, lim);
  std::vector<SupMorphism> out;
  std::vector<int> img, table;
  for (std::uint64_t c = 0; c < es.space; ++c)
    if (try_candidate(dom, cod, es, c, img, table)) {
      SupMorphism f;
      f.dom = &dom;
      f.cod = &cod;
      f.table = table;
      out.push_back(std::move(f));
    }
  std::sort(out.begin(), out.end(),
            [](const SupMorphism& a, const SupMorphism& b) {
              return a.table < b.table;
            });
  return out;
}

std::vector<SupMorphism> enumerate_sup_morphisms_omp(
    const FiniteLattice& dom, const FiniteLattice& cod, const Limits& lim) {
  SupEnumSpace es = make_enum_space(dom, cod, lim);
  std::vector<std::vector<int>> tables;
#pragma omp parallel
  {
    std::vector<std::vector<int>> local;
    std::vector<int> img, table;
#pragma omp for schedule(dynamic, 256)
    for (long long c = 0; c < static_cast<long long>(es.space); ++c)
      if (try_candidate(dom, cod, es, static_cast<std::uint64_t>(c), img, table))
        local.push_back(table);
#pragma omp critical
    tables.insert(tables.end(), local.begin(), local.end());
  }
  std::sort(tables.begin(), tables.end());
  std::vector<SupMorphism> out;
  out.reserve(tables.size());
  for (auto& t : tables) {
    SupMorphism f;
    f.dom = &dom;
    f.cod = &cod;
    f.table = std::move(t);
    out.push_back(std::move(f));
  }
  return out;
}

HomLattice build_hom_lattice(const FiniteLattice& dom, const FiniteLattice& cod,
                             const Limits& lim) {
  HomLattice H;
  H.dom = &dom;
  H.cod = &cod;
  H.morphisms = enumerate_sup_morphisms_serial(dom, cod, lim);
  const int k = static_cast<int>(H.morphisms.size());
  if (k > 0 && k <= kMaxElements) {
    std::vector<std::vector<bool>> leq(k, std::vector<bool>(k, false));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        leq[i][j] = pointwise_leq(H.morphisms[i], H.morphisms[j]);
    std::vector<std::string> labels(k);
    for (int i = 0; i < k; ++i) labels[i] = "f" + std::to_string(i);
    H.order = build_from_leq("hom(" + dom.name + ", " + cod.name + ")",
                             std::move(labels), leq);
  }
  return H;
}

namespace {

int find_morphism(const std::vector<SupMorphism>& sorted,
                  const std::vector<int>& table) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), table,
                             [](const SupMorphism& f, const std::vector<int>& t) {
                               return f.table < t;
                             });
  if (it == sorted.end() || it->table != table) return -1;
  return static_cast<int>(it - sorted.begin());
}

}  // namespace

Verdict hom_completeness_check(const HomLattice& H) {
  const int k = static_cast<int>(H.morphisms.size());
  if (k == 0) return Verdict::fail("hom completeness", {}, "empty hom-set");
  if (find_morphism(H.morphisms, bottom_morphism(*H.dom, *H.cod).table) < 0)
    return Verdict::fail("hom completeness", {}, "bottom morphism missing");
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      auto jn = pointwise_join(H.morphisms[i], H.morphisms[j]);
      if (find_morphism(H.morphisms, jn.table) < 0)
        return Verdict::fail("hom completeness", {i, j},
                             "pointwise join of two morphisms escapes the set");
    }
  // Meets exist: the pointwise join of all common lower bounds is itself a
  // lower bound, hence the greatest one; join-closure puts it in the set.
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      SupMorphism glb = bottom_morphism(*H.dom, *H.cod);
      for (int l = 0; l < k; ++l)
        if (pointwise_leq(H.morphisms[l], H.morphisms[i]) &&
            pointwise_leq(H.morphisms[l], H.morphisms[j]))
          glb = pointwise_join(glb, H.morphisms[l]);
      if (!pointwise_leq(glb, H.morphisms[i]) ||
          !pointwise_leq(glb, H.morphisms[j]) ||
          find_morphism(H.morphisms, glb.table) < 0)
        return Verdict::fail("hom completeness", {i, j},
                             "meet of two morphisms is not in the set");
    }
  return Verdict::ok("hom completeness");
}

Verdict hom_distributivity_check(const HomLattice& H) {
  if (H.dom != H.cod)
    return Verdict::fail("hom distributivity", {},
                         "composition needs an endo-hom-set");
  const int k = static_cast<int>(H.morphisms.size());
  for (int f = 0; f < k; ++f)
    for (int g = 0; g < k; ++g)
      for (int h = 0; h < k; ++h) {
        auto gh = pointwise_join(H.morphisms[g], H.morphisms[h]);
        if (compose(H.morphisms[f], gh).table !=
            pointwise_join(compose(H.morphisms[f], H.morphisms[g]),
                           compose(H.morphisms[f], H.morphisms[h]))
                .table)
          return Verdict::fail("hom distributivity", {f, g, h},
                               "left composition does not distribute");
        if (compose(gh, H.morphisms[f]).table !=
            pointwise_join(compose(H.morphisms[g], H.morphisms[f]),
                           compose(H.morphisms[h], H.morphisms[f]))
                .table)
          return Verdict::fail("hom distributivity", {f, g, h},
                               "right composition does not distribute");
      }
  return Verdict::ok("hom distributivity");
}

Quantale generate_quantale(const FiniteLattice& L,
                           const std::vector<SupMorphism>& generators,
                           const Limits& lim) {
  for (const auto& g : generators) {
    require_same_carrier(g.dom, &L, "quantale generator");
    require_same_carrier(g.cod, &L, "quantale generator");
    Verdict v = validate_sup_morphism(g);
    if (!v)
      throw LatticeError("quantale generator on '" + L.name +
                         "' is not a sup-morphism: " + v.detail);
  }
  std::set<std::vector<int>> seen;
  std::vector<SupMorphism> elems;
  auto add = [&](SupMorphism f) {
    if (seen.insert(f.table).second) {
      elems.push_back(std::move(f));
      if (elems.size() > lim.max_quantale_closure)
        throw GuardError("quantale closure on '" + L.name + "' exceeds " +
                         std::to_string(lim.max_quantale_closure) +
                         " elements");
      return true;
    }
    return false;
  };
  add(bottom_morphism(L, L));
  add(identity_morphism(L));
  for (const auto& g : generators) add(g);
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t snap = elems.size();
    for (std::size_t i = 0; i < snap; ++i)
      for (std::size_t j = 0; j < snap; ++j) {
        grew |= add(compose(elems[i], elems[j]));
        if (j >= i) grew |= add(pointwise_join(elems[i], elems[j]));
      }
  }
  std::sort(elems.begin(), elems.end(),
            [](const SupMorphism& a, const SupMorphism& b) {
              return a.table < b.table;
            });
  Quantale Q;
  Q.carrier = &L;
  Q.elements = std::move(elems);
  Q.identity_index = find_morphism(Q.elements, identity_morphism(L).table);
  Q.bottom_index = find_morphism(Q.elements, bottom_morphism(L, L).table);
  return Q;
}

namespace {

// Index tables for composition and pointwise join over a closed quantale.
struct QuantaleTables {
  int k = 0;
  std::vector<int> comp;  // comp[i*k+j] = index of elements[i] after elements[j]
  std::vector<int> join;

  int c(int i, int j) const { return comp[i * k + j]; }
  int j(int a, int b) const { return join[a * k + b]; }
};

QuantaleTables index_quantale(const Quantale& Q) {
  QuantaleTables T;
  T.k = static_cast<int>(Q.elements.size());
  T.comp.assign(static_cast<std::size_t>(T.k) * T.k, -1);
  T.join.assign(static_cast<std::size_t>(T.k) * T.k, -1);
  for (int i = 0; i < T.k; ++i)
    for (int j = 0; j < T.k; ++j) {
      T.comp[i * T.k + j] =
          find_morphism(Q.elements, compose(Q.elements[i], Q.elements[j]).table);
      T.join[i * T.k + j] = find_morphism(
          Q.elements, pointwise_join(Q.elements[i], Q.elements[j]).table);
    }
  return T;
}

bool quantale_closed(const QuantaleTables& T) {
  for (int i = 0; i < T.k; ++i)
    for (int j = 0; j < T.k; ++j)
      if (T.c(i, j) < 0 || T.j(i, j) < 0) return false;
  return true;
}

}  // namespace

Verdict quantale_associativity_check(const Quantale& Q) {
  QuantaleTables T = index_quantale(Q);
  if (!quantale_closed(T))
    return Verdict::fail("quantale associativity", {},
                         "the element set is not closed");
  for (int i = 0; i < T.k; ++i)
    for (int j = 0; j < T.k; ++j)
      for (int l = 0; l < T.k; ++l)
        if (T.c(T.c(i, j), l) != T.c(i, T.c(j, l)))
          return Verdict::fail("quantale associativity", {i, j, l},
                               "composition is not associative");
  return Verdict::ok("quantale associativity");
}

Verdict quantale_unit_check(const Quantale& Q) {
  if (Q.identity_index < 0)
    return Verdict::fail("quantale unit", {}, "identity missing");
  QuantaleTables T = index_quantale(Q);
  if (!quantale_closed(T))
    return Verdict::fail("quantale unit", {}, "the element set is not closed");
  for (int i = 0; i < T.k; ++i)
    if (T.c(Q.identity_index, i) != i || T.c(i, Q.identity_index) != i)
      return Verdict::fail("quantale unit", {i},
                           "identity is not a two-sided unit");
  return Verdict::ok("quantale unit");
}

Verdict quantale_distributivity_check(const Quantale& Q, const Limits& lim) {
  QuantaleTables T = index_quantale(Q);
  if (!quantale_closed(T))
    return Verdict::fail("quantale distributivity", {},
                         "the element set is not closed");
  for (int f = 0; f < T.k; ++f)
    for (int a = 0; a < T.k; ++a)
      for (int b = 0; b < T.k; ++b) {
        if (T.c(f, T.j(a, b)) != T.j(T.c(f, a), T.c(f, b)))
          return Verdict::fail("quantale distributivity", {f, a, b},
                               "composition does not distribute over a binary "
                               "join on the left");
        if (T.c(T.j(a, b), f) != T.j(T.c(a, f), T.c(b, f)))
          return Verdict::fail("quantale distributivity", {f, a, b},
                               "composition does not distribute over a binary "
                               "join on the right");
      }
  if (Q.bottom_index < 0)
    return Verdict::fail("quantale distributivity", {},
                         "bottom morphism missing (empty sup undefined)");
  if (T.k <= lim.max_subset_elements) {
    const Mask all = universe_mask(T.k);
    for (Mask s = 0; ; ++s) {
      int js = Q.bottom_index;
      for_each_bit(s, [&](int e) { js = T.j(js, e); });
      for (int f = 0; f < T.k; ++f) {
        int lhs = T.c(f, js);
        int rhs = Q.bottom_index;
        for_each_bit(s, [&](int e) { rhs = T.j(rhs, T.c(f, e)); });
        if (lhs != rhs)
          return Verdict::fail("quantale distributivity", {f},
                               "composition does not distribute over a subset "
                               "join on the left");
        lhs = T.c(js, f);
        rhs = Q.bottom_index;
        for_each_bit(s, [&](int e) { rhs = T.j(rhs, T.c(e, f)); });
        if (lhs != rhs)
          return Verdict::fail("quantale distributivity", {f},
                               "composition does not distribute over a subset "
                               "join on the right");
      }
      if (s == all) break;
    }
  }
  return Verdict::ok("quantale distributivity");
}

FiniteLattice atom_powerset(const FiniteLattice& L) {
  std::vector<int> atom_ids;
  for_each_bit(L.atoms(), [&](int p) { atom_ids.push_back(p); });
  const int k = static_cast<int>(atom_ids.size());
  if (k > 6)
    throw GuardError("atom powerset of '" + L.name + "' would have 2^" +
                     std::to_string(k) + " elements; at most 64 are supported");
  const int n = 1 << k;
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    std::string s = "{";
    bool first = true;
    for (int t = 0; t < k; ++t)
      if (has(static_cast<Mask>(i), t)) {
        if (!first) s += ",";
        s += L.labels[atom_ids[t]];
        first = false;
      }
    labels[i] = s + "}";
  }
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) leq[i][j] = (i & ~j) == 0;
  return build_from_leq(L.name + " states", std::move(labels), leq);
}

SupMorphism pm_states_lift(const MeasurementSetup& m, const FiniteLattice& P) {
  const auto& B = m.lattice->base;
  std::vector<int> atom_ids;
  for_each_bit(B.atoms(), [&](int p) { atom_ids.push_back(p); });
  const int k = static_cast<int>(atom_ids.size());
  if (P.n != (1 << k))
    throw LatticeError("powerset carrier does not match the atom set of '" +
                       B.name + "'");
  SupMorphism f;
  f.dom = f.cod = &P;
  f.table.resize(P.n);
  for (int i = 0; i < P.n; ++i) {
    Mask t = 0;
    for (int s = 0; s < k; ++s)
      if (has(static_cast<Mask>(i), s)) t |= bit(atom_ids[s]);
    Mask out = pm_states(m, t);
    int idx = 0;
    for (int s = 0; s < k; ++s)
      if (has(out, atom_ids[s])) idx |= 1 << s;
    f.table[i] = idx;
  }
  return f;
}

PSupMorphism identity_psup(const FiniteLattice& L) {
  PSupMorphism g;
  g.dom = g.cod = &L;
  g.images.resize(L.n);
  for (int x = 0; x < L.n; ++x) g.images[x] = bit(x);
  return g;
}

PSupMorphism compose(const PSupMorphism& g, const PSupMorphism& f) {
  require_same_carrier(f.cod, g.dom, "compose");
  PSupMorphism out;
  out.dom = f.dom;
  out.cod = g.cod;
  out.images.resize(f.images.size());
  for (std::size_t x = 0; x < f.images.size(); ++x)
    out.images[x] = g.apply(f.images[x]);
  return out;
}

PSupMorphism pm_image_map(const MeasurementSetup& m) {
  const auto& B = m.lattice->base;
  PSupMorphism g;
  g.dom = g.cod = &B;
  g.images.resize(B.n);
  for (int x = 0; x < B.n; ++x) g.images[x] = outcome_pair(m, x);
  return g;
}

Verdict validate_psup(const PSupMorphism& g, const Limits& lim) {
  const auto& D = *g.dom;
  const auto& C = *g.cod;
  auto bad = hull_factorization_scan_serial(D, C, g.images, lim);
  if (bad) {
    std::vector<int> w;
    for_each_bit(*bad, [&](int e) { w.push_back(e); });
    return Verdict::fail("set-map hull factorization", w,
                         "hull(image(hull X)) differs from hull(image X) at "
                         "X = " + set_text(D, *bad));
  }
  auto pair = join_compat_scan(D, C, g.images, lim);
  if (pair) {
    int v = D.join_of(pair->first);
    std::vector<int> w{v};
    return Verdict::fail(
        "set-map join compatibility", w,
        "subsets " + set_text(D, pair->first) + " and " +
            set_text(D, pair->second) + " share join " + D.labels[v] +
            " but their images have joins " +
            C.labels[C.join_of(g.apply(pair->first))] + " and " +
            C.labels[C.join_of(g.apply(pair->second))]);
  }
  return Verdict::ok("set map");
}

namespace {

// Pairwise join of ideal-family members, as indices: closure of the union.
std::vector<int> ideal_join_table(const IdealLattice& di) {
  const int k = static_cast<int>(di.ideals.size());
  std::vector<int> t(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      t[i * k + j] = di.index_of(di.closure_of(di.ideals[i] | di.ideals[j]));
  return t;
}

std::string ideal_text(const IdealLattice& di, int i) {
  return set_text(*di.base, di.ideals[i]);
}

}  // namespace

DCHeytMorphism identity_dcheyt(const IdealLattice& di) {
  DCHeytMorphism h;
  h.dom = h.cod = &di;
  h.table.resize(di.ideals.size());
  for (std::size_t i = 0; i < di.ideals.size(); ++i)
    h.table[i] = static_cast<int>(i);
  return h;
}

DCHeytMorphism compose(const DCHeytMorphism& g, const DCHeytMorphism& f) {
  if (f.cod != g.dom)
    throw LatticeError("compose: incompatible ideal lattices");
  DCHeytMorphism out;
  out.dom = f.dom;
  out.cod = g.cod;
  out.table.resize(f.table.size());
  for (std::size_t i = 0; i < f.table.size(); ++i)
    out.table[i] = g.table[f.table[i]];
  return out;
}

Verdict validate_dcheyt(const DCHeytMorphism& h) {
  const auto& D = *h.dom;
  const auto& C = *h.cod;
  const int kd = static_cast<int>(D.ideals.size());
  const int kc = static_cast<int>(C.ideals.size());
  if (static_cast<int>(h.table.size()) != kd)
    return Verdict::fail("ideal map", {}, "table size mismatch");
  for (int i = 0; i < kd; ++i)
    if (h.table[i] < 0 || h.table[i] >= kc)
      return Verdict::fail("ideal map", {i}, "table value out of range");
  std::vector<int> dj = ideal_join_table(D);
  std::vector<int> cj = ideal_join_table(C);
  if (h.table[0] != 0)
    return Verdict::fail("ideal map", {0},
                         "bottom ideal does not map to the bottom ideal");
  for (int i = 0; i < kd; ++i)
    for (int j = i + 1; j < kd; ++j)
      if (h.table[dj[i * kd + j]] != cj[h.table[i] * kc + h.table[j]])
        return Verdict::fail("ideal map", {i, j},
                             "join of ideals " + ideal_text(D, i) + " and " +
                                 ideal_text(D, j) + " is not preserved");
  for (int i = 0; i < kd; ++i)
    for (int j = i + 1; j < kd; ++j) {
      if (D.resolution_to_base(i) != D.resolution_to_base(j)) continue;
      if (C.resolution_to_base(h.table[i]) != C.resolution_to_base(h.table[j]))
        return Verdict::fail(
            "ideal map resolution condition", {i, j},
            "ideals " + ideal_text(D, i) + " and " + ideal_text(D, j) +
                " resolve equally but their images do not: " +
                C.base->labels[C.resolution_to_base(h.table[i])] + " vs " +
                C.base->labels[C.resolution_to_base(h.table[j])]);
    }
  return Verdict::ok("ideal map");
}

DCHeytMorphism functor_F(const PSupMorphism& g, const IdealLattice& dom_di,
                         const IdealLattice& cod_di, const Limits& lim) {
  require_same_carrier(g.dom, dom_di.base, "functor F");
  require_same_carrier(g.cod, cod_di.base, "functor F");
  DCHeytMorphism h;
  h.dom = &dom_di;
  h.cod = &cod_di;
  h.table.resize(dom_di.ideals.size());
  for (std::size_t i = 0; i < dom_di.ideals.size(); ++i) {
    Mask img = admissible_hull(*cod_di.base, g.apply(dom_di.ideals[i]), lim);
    int idx = cod_di.index_of(img);
    if (idx < 0)
      throw LatticeError("functor F produced a set outside the ideal family "
                         "of '" + cod_di.base->name + "'");
    h.table[i] = idx;
  }
  return h;
}

SupMorphism functor_G(const DCHeytMorphism& h) {
  SupMorphism f;
  f.dom = h.dom->base;
  f.cod = h.cod->base;
  f.table.resize(f.dom->n);
  for (int x = 0; x < f.dom->n; ++x)
    f.table[x] = h.cod->resolution_to_base(h.table[h.dom->principal[x]]);
  return f;
}

SupMorphism functor_H(const PSupMorphism& g) {
  SupMorphism f;
  f.dom = g.dom;
  f.cod = g.cod;
  f.table.resize(g.dom->n);
  for (int x = 0; x < g.dom->n; ++x)
    f.table[x] = g.cod->join_of(g.apply(g.dom->below[x]));
  return f;
}

Verdict triangle_check(const PSupMorphism& g, const IdealLattice& dom_di,
                       const IdealLattice& cod_di, const Limits& lim) {
  SupMorphism via_ideals = functor_G(functor_F(g, dom_di, cod_di, lim));
  SupMorphism direct = functor_H(g);
  for (int x = 0; x < g.dom->n; ++x)
    if (via_ideals.table[x] != direct.table[x])
      return Verdict::fail(
          "triangle", {x},
          "G(F(g)) maps " + g.dom->labels[x] + " to " +
              g.cod->labels[via_ideals.table[x]] + " but H(g) maps it to " +
              g.cod->labels[direct.table[x]]);
  return Verdict::ok("triangle");
}

NonfaithfulReport nonfaithful_search(const IdealLattice& di,
                                     const Limits& lim) {
  NonfaithfulReport rep;
  const auto& B = *di.base;
  const int k = static_cast<int>(di.ideals.size());
  std::vector<int> jtab = ideal_join_table(di);
  auto jidx = [&](int a, int b) { return jtab[a * k + b]; };

  // Join-irreducible members of the ideal family: not the bottom ideal and
  // not the join of their proper subideals.
  std::vector<int> irr;
  for (int i = 0; i < k; ++i) {
    if (di.ideals[i] == bit(B.bottom)) continue;
    Mask u = 0;
    for (int j = 0; j < k; ++j)
      if (j != i && (di.ideals[j] & ~di.ideals[i]) == 0) u |= di.ideals[j];
    if (di.closure_of(u) != di.ideals[i]) irr.push_back(i);
  }
  const int r = static_cast<int>(irr.size());

  // Per ideal: which irreducibles it contains (bitmask over irr slots).
  std::vector<Mask> irr_in(k, 0);
  for (int i = 0; i < k; ++i)
    for (int t = 0; t < r; ++t)
      if ((di.ideals[irr[t]] & ~di.ideals[i]) == 0) irr_in[i] |= bit(t);
  std::vector<std::pair<int, int>> leq_pairs;
  for (int s = 0; s < r; ++s)
    for (int t = 0; t < r; ++t)
      if (s != t && (di.ideals[irr[s]] & ~di.ideals[irr[t]]) == 0)
        leq_pairs.emplace_back(s, t);

  // Resolution classes: ideals grouped by the join of their members.
  std::vector<std::vector<int>> classes(B.n);
  for (int i = 0; i < k; ++i) classes[di.resolution_to_base(i)].push_back(i);

  // k^r candidates, saturating instead of overflowing for huge families.
  constexpr std::uint64_t kSpaceCap = ~std::uint64_t{0};
  rep.space = 1;
  for (int t = 0; t < r; ++t) {
    if (rep.space > kSpaceCap / static_cast<std::uint64_t>(k)) {
      rep.space = kSpaceCap;
      break;
    }
    rep.space *= static_cast<std::uint64_t>(k);
  }
  rep.examined = std::min(rep.space, lim.max_search_candidates);
  rep.truncated = rep.examined < rep.space;

  std::map<std::vector<int>, std::vector<std::vector<int>>> by_g;
  std::vector<int> img(r), table(k), gtab(B.n);
  for (std::uint64_t cand = 0; cand < rep.examined; ++cand) {
    std::uint64_t c = cand;
    for (int t = 0; t < r; ++t) {
      img[t] = static_cast<int>(c % k);
      c /= k;
    }
    bool ok = true;
    for (auto [s, t] : leq_pairs)
      if ((di.ideals[img[s]] & ~di.ideals[img[t]]) != 0) {
        ok = false;
        break;
      }
    if (!ok) continue;
    for (int i = 0; i < k && ok; ++i) {
      int acc = 0;  // the bottom ideal is first in the sorted family
      for_each_bit(irr_in[i], [&](int t) { acc = jidx(acc, img[t]); });
      table[i] = acc;
    }
    for (int t = 0; t < r && ok; ++t)
      if (table[irr[t]] != img[t]) ok = false;
    if (!ok) continue;
    for (int i = 0; i < k && ok; ++i)
      for (int j = i + 1; j < k && ok; ++j)
        if (table[jidx(i, j)] != jidx(table[i], table[j])) ok = false;
    if (!ok) continue;
    for (const auto& cls : classes) {
      if (cls.size() < 2) continue;
      int first = di.resolution_to_base(table[cls[0]]);
      for (std::size_t u = 1; u < cls.size() && ok; ++u)
        if (di.resolution_to_base(table[cls[u]]) != first) ok = false;
      if (!ok) break;
    }
    if (!ok) continue;
    ++rep.validated_endos;
    for (int x = 0; x < B.n; ++x)
      gtab[x] = di.resolution_to_base(table[di.principal[x]]);
    by_g[gtab].push_back(table);
  }

  for (const auto& [g, hs] : by_g) {
    if (hs.size() < 2) continue;
    ++rep.collision_classes;
    rep.collision_pairs +=
        static_cast<std::uint64_t>(hs.size()) * (hs.size() - 1) / 2;
    if (!rep.witness) {
      rep.witness = std::make_pair(hs[0], hs[1]);
      rep.witness_g = g;
    }
  }
  return rep;
}

}  // namespace oql
