#include "oql/dynamics.hpp"

#include <string>

namespace oql {

int sasaki_project(const OrthoLattice& L, int b, int a) {
  return L.base.meet(b, L.base.join(a, L.ortho[b]));
}

int sasaki_hook(const OrthoLattice& L, int b, int c) {
  return L.base.join(L.ortho[b], L.base.meet(b, c));
}

Verdict sasaki_adjunction_check(const OrthoLattice& L) {
  const auto& B = L.base;
  for (int b = 0; b < B.n; ++b)
    for (int a = 0; a < B.n; ++a)
      for (int c = 0; c < B.n; ++c) {
        bool lhs = B.leq(sasaki_project(L, b, a), c);
        bool rhs = B.leq(a, sasaki_hook(L, b, c));
        if (lhs != rhs)
          return Verdict::fail(
              "sasaki adjunction", {b, a, c},
              "project(" + B.labels[b] + ", " + B.labels[a] + ") <= " +
                  B.labels[c] + " is " + (lhs ? "true" : "false") + " but " +
                  B.labels[a] + " <= hook(" + B.labels[b] + ", " +
                  B.labels[c] + ") is " + (rhs ? "true" : "false"));
      }
  return Verdict::ok("sasaki adjunction");
}

Verdict sasaki_join_preservation_check(const OrthoLattice& L,
                                       const Limits& lim) {
  const auto& B = L.base;
  if (B.n > lim.max_subset_elements)
    throw GuardError("join preservation scan on '" + B.name +
                     "' would enumerate 2^" + std::to_string(B.n) +
                     " subsets (limit 2^" +
                     std::to_string(lim.max_subset_elements) + ")");
  const Mask all = B.universe();
  for (Mask s = 0; ; ++s) {
    for (int b = 0; b < B.n; ++b) {
      int lhs = sasaki_project(L, b, B.join_of(s));
      int rhs = B.bottom;
      for_each_bit(s, [&](int e) { rhs = B.join(rhs, sasaki_project(L, b, e)); });
      if (lhs != rhs) {
        std::vector<int> w{b};
        for_each_bit(s, [&](int e) { w.push_back(e); });
        return Verdict::fail("sasaki join preservation", w,
                             "projection onto " + B.labels[b] +
                                 " does not distribute over the join of the "
                                 "witnessed subset");
      }
    }
    if (s == all) break;
  }
  return Verdict::ok("sasaki join preservation");
}

MeasurementSetup make_measurement(const OrthoLattice& L, int b) {
  if (b < 0 || b >= L.base.n)
    throw LatticeError("eigenproperty index out of range on '" + L.base.name +
                       "'");
  Verdict om = orthomodularity_check(L);
  if (!om)
    throw LatticeError("measurement on '" + L.base.name +
                       "' refused: " + om.detail);
  MeasurementSetup m;
  m.lattice = &L;
  m.b = b;
  m.b_prime = L.ortho[b];
  m.degenerate = (b == L.base.bottom || b == L.base.top);
  m.state_capable =
      atomisticity_check(L.base).pass && covering_law_check(L.base).pass;
  return m;
}

Mask outcome_pair(const MeasurementSetup& m, int x) {
  return bit(sasaki_project(*m.lattice, m.b, x)) |
         bit(sasaki_project(*m.lattice, m.b_prime, x));
}

Mask outcome_image(const MeasurementSetup& m, Mask x) {
  Mask out = 0;
  for_each_bit(x, [&](int e) { out |= outcome_pair(m, e); });
  return out;
}

Mask pm_states(const MeasurementSetup& m, Mask t) {
  const auto& B = m.lattice->base;
  if (!m.state_capable)
    throw LatticeError("state dynamics on '" + B.name +
                       "' refused: the lattice must be atomistic and satisfy "
                       "the covering law");
  const Mask atoms = B.atoms();
  if ((t & ~atoms) != 0)
    throw LatticeError("state set on '" + B.name + "' contains a non-atom");
  Mask out = outcome_image(m, t) & ~bit(B.bottom);
  if ((out & ~atoms) != 0)
    throw LatticeError("state dynamics on '" + B.name +
                       "' produced a non-atom outcome");
  return out;
}

Mask pm_ideals(const MeasurementSetup& m, Mask ideal, const Limits& lim) {
  return admissible_hull(m.lattice->base, outcome_image(m, ideal), lim);
}

int pm_strongest(const MeasurementSetup& m, int a) {
  return m.lattice->base.join(sasaki_project(*m.lattice, m.b, a),
                              sasaki_project(*m.lattice, m.b_prime, a));
}

int state_resolution(const FiniteLattice& L, Mask t) {
  if ((t & ~L.atoms()) != 0)
    throw LatticeError("state set on '" + L.name + "' contains a non-atom");
  return L.join_of(t);
}

std::vector<Verdict> verify_pm_diagrams(const MeasurementSetup& m,
                                        const IdealLattice& di,
                                        const Limits& lim) {
  const auto& B = m.lattice->base;
  std::vector<Verdict> out;

  // 1. state square: strongest(resolution T) = resolution(pm_states T).
  if (!m.state_capable) {
    out.push_back(Verdict::fail(
        "state square", {},
        "state dynamics unavailable: '" + B.name +
            "' must be atomistic and satisfy the covering law"));
  } else {
    Verdict v = Verdict::ok("state square");
    std::vector<int> atom_ids;
    for_each_bit(B.atoms(), [&](int p) { atom_ids.push_back(p); });
    const Mask tmax = universe_mask(static_cast<int>(atom_ids.size()));
    for (Mask tv = 0; ; ++tv) {
      Mask t = 0;
      for (std::size_t i = 0; i < atom_ids.size(); ++i)
        if (has(tv, static_cast<int>(i))) t |= bit(atom_ids[i]);
      int via_property = pm_strongest(m, state_resolution(B, t));
      int via_states = state_resolution(B, pm_states(m, t));
      if (via_property != via_states) {
        std::vector<int> w;
        for_each_bit(t, [&](int e) { w.push_back(e); });
        v = Verdict::fail("state square", w,
                          "strongest(resolution T) = " +
                              B.labels[via_property] +
                              " but resolution(outcomes T) = " +
                              B.labels[via_states]);
        break;
      }
      if (tv == tmax) break;
    }
    out.push_back(std::move(v));
  }

  // 2. ideal square: strongest(join A) = join(pm_ideals A) over closed ideals.
  {
    Verdict v = Verdict::ok("ideal square");
    for (std::size_t i = 0; i < di.ideals.size(); ++i) {
      Mask a = di.ideals[i];
      int via_property = pm_strongest(m, B.join_of(a));
      int via_ideals = B.join_of(pm_ideals(m, a, lim));
      if (via_property != via_ideals) {
        std::vector<int> w;
        for_each_bit(a, [&](int e) { w.push_back(e); });
        v = Verdict::fail("ideal square", w,
                          "strongest(join A) = " + B.labels[via_property] +
                              " but join(ideal image of A) = " +
                              B.labels[via_ideals]);
        break;
      }
    }
    out.push_back(std::move(v));
  }

  // 3. factorization: hull(image(hull X)) = hull(image X) over all X.
  {
    std::vector<Mask> images(B.n);
    for (int x = 0; x < B.n; ++x) images[x] = outcome_pair(m, x);
    auto bad = hull_factorization_scan_serial(B, B, images, lim);
    if (bad) {
      std::vector<int> w;
      for_each_bit(*bad, [&](int e) { w.push_back(e); });
      out.push_back(Verdict::fail(
          "hull factorization", w,
          "hull of the image of X differs from the hull of the image of "
          "hull(X) at the witnessed X"));
    } else {
      out.push_back(Verdict::ok("hull factorization"));
    }
  }
  return out;
}

}  // namespace oql
