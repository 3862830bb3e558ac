#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "oql/catalog.hpp"
#include "oql/dynamics.hpp"
#include "oql/hull.hpp"
#include "oql/quantaloid.hpp"

using namespace oql;

namespace {

// Brute-force enumeration of the join-preserving maps dom -> cod: every one
// of the |cod|^|dom| full tables, filtered by the definition. No
// join-irreducible shortcut, so it cross-checks the library's enumeration.
std::vector<std::vector<int>> oracle_sup_tables(const FiniteLattice& dom,
                                                const FiniteLattice& cod) {
  std::uint64_t total = 1;
  for (int i = 0; i < dom.n; ++i) total *= static_cast<std::uint64_t>(cod.n);
  std::vector<std::vector<int>> out;
  std::vector<int> t(dom.n);
  for (std::uint64_t c = 0; c < total; ++c) {
    std::uint64_t v = c;
    for (int i = 0; i < dom.n; ++i) {
      t[i] = static_cast<int>(v % cod.n);
      v /= cod.n;
    }
    bool ok = t[dom.bottom] == cod.bottom;
    for (int x = 0; x < dom.n && ok; ++x)
      for (int y = x + 1; y < dom.n && ok; ++y)
        if (t[dom.join(x, y)] != cod.join(t[x], t[y])) ok = false;
    if (ok) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> tables_of(const std::vector<SupMorphism>& ms) {
  std::vector<std::vector<int>> out;
  for (const auto& m : ms) out.push_back(m.table);
  return out;
}

}  // namespace

TEST_CASE("sup-morphism enumeration matches the full-table oracle") {
  FiniteLattice mo2 = make_mo(2).lattice;
  FiniteLattice b2 = make_boolean(2).lattice;
  FiniteLattice c2 = make_chain(2).lattice;

  auto mo2_oracle = oracle_sup_tables(mo2, mo2);  // 6^6 tables scanned
  CHECK(mo2_oracle.size() == 234);
  CHECK(tables_of(enumerate_sup_morphisms_serial(mo2, mo2)) == mo2_oracle);
  CHECK(tables_of(enumerate_sup_morphisms_omp(mo2, mo2)) == mo2_oracle);

  auto b2_oracle = oracle_sup_tables(b2, b2);
  CHECK(b2_oracle.size() == 16);
  CHECK(tables_of(enumerate_sup_morphisms_serial(b2, b2)) == b2_oracle);

  CHECK(oracle_sup_tables(c2, c2).size() == 2);
  CHECK(tables_of(enumerate_sup_morphisms_serial(c2, c2)) ==
        oracle_sup_tables(c2, c2));

  // Mixed carriers: square to chain.
  CHECK(tables_of(enumerate_sup_morphisms_serial(b2, c2)) ==
        oracle_sup_tables(b2, c2));
}

TEST_CASE("sup-morphism validation pinpoints broken tables") {
  FiniteLattice b2 = make_boolean(2).lattice;
  SupMorphism f;
  f.dom = f.cod = &b2;

  f.table = {0, 1, 2, 3};
  CHECK(validate_sup_morphism(f).pass);
  f.table = {0, 1, 2, 2};  // p v q must land on f(p) v f(q)
  CHECK(!validate_sup_morphism(f).pass);
  f.table = {2, 2, 2, 2};  // bottom must go to bottom
  CHECK(!validate_sup_morphism(f).pass);
  f.table = {0, 1, 2};
  CHECK(!validate_sup_morphism(f).pass);

  CHECK(validate_sup_morphism(identity_morphism(b2)).pass);
  CHECK(validate_sup_morphism(bottom_morphism(b2, b2)).pass);
}

TEST_CASE("composition and pointwise structure") {
  FiniteLattice mo2 = make_mo(2).lattice;
  auto all = enumerate_sup_morphisms_serial(mo2, mo2);
  SupMorphism id = identity_morphism(mo2);
  SupMorphism bot = bottom_morphism(mo2, mo2);

  for (const auto& f : all) {
    CHECK(compose(f, id) == f);
    CHECK(compose(id, f) == f);
    CHECK(compose(f, bot) == bot);
    CHECK(pointwise_leq(bot, f));
    CHECK(pointwise_join(f, bot) == f);
    CHECK(pointwise_join(f, f) == f);
  }
}

TEST_CASE("hom-sets are complete lattices under the pointwise order") {
  FiniteLattice mo2 = make_mo(2).lattice;
  HomLattice H = build_hom_lattice(mo2, mo2);
  CHECK(H.morphisms.size() == 234);
  CHECK(!H.order.has_value());  // 234 morphisms exceed the carrier cap
  CHECK(hom_completeness_check(H).pass);

  FiniteLattice b2 = make_boolean(2).lattice;
  HomLattice Hb = build_hom_lattice(b2, b2);
  CHECK(Hb.morphisms.size() == 16);
  REQUIRE(Hb.order.has_value());
  CHECK(Hb.order->n == 16);
  CHECK(hom_completeness_check(Hb).pass);
  CHECK(hom_distributivity_check(Hb).pass);

  FiniteLattice c2 = make_chain(2).lattice;
  HomLattice Hc = build_hom_lattice(c2, c2);
  CHECK(Hc.morphisms.size() == 2);
  CHECK(hom_completeness_check(Hc).pass);
  CHECK(hom_distributivity_check(Hc).pass);

  // Distributivity over composition only makes sense for endo-hom-sets.
  HomLattice Hm = build_hom_lattice(b2, c2);
  CHECK(hom_completeness_check(Hm).pass);
  CHECK(!hom_distributivity_check(Hm).pass);
}

TEST_CASE("the measurement lift on the state powerset") {
  OrthoLattice O = as_ortho(make_mo(2));
  FiniteLattice P = atom_powerset(O.base);
  REQUIRE(P.n == 16);
  SupMorphism lift = pm_states_lift(make_measurement(O, 3), P);
  CHECK(validate_sup_morphism(lift).pass);
  // Atom slots follow carrier order: a a' b b'. Measuring (b, b') sends a
  // and a' to {b, b'} and leaves b, b' alone.
  CHECK(lift.table[0] == 0);
  CHECK(lift.table[1] == 12);
  CHECK(lift.table[2] == 12);
  CHECK(lift.table[4] == 4);
  CHECK(lift.table[8] == 8);
  CHECK(lift.table[5] == 12);
  // Idempotent: measuring twice adds nothing.
  CHECK(compose(lift, lift) == lift);

  CHECK_THROWS_AS(pm_states_lift(make_measurement(O, 3),
                                 atom_powerset(make_boolean(2).lattice)),
                  LatticeError);
  CHECK_THROWS_AS(atom_powerset(make_mo(4).lattice), GuardError);
}

TEST_CASE("the induction closure of one measurement has four elements") {
  OrthoLattice O = as_ortho(make_mo(2));
  FiniteLattice P = atom_powerset(O.base);
  SupMorphism lift = pm_states_lift(make_measurement(O, 3), P);

  Quantale Q = generate_quantale(P, {lift});
  CHECK(Q.elements.size() == 4);  // bottom, freeze, the lift, and their join
  REQUIRE(Q.identity_index >= 0);
  REQUIRE(Q.bottom_index >= 0);
  CHECK(Q.elements[Q.identity_index] == identity_morphism(P));
  CHECK(Q.elements[Q.bottom_index] == bottom_morphism(P, P));
  CHECK(std::any_of(Q.elements.begin(), Q.elements.end(),
                    [&](const SupMorphism& f) { return f == lift; }));

  CHECK(quantale_associativity_check(Q).pass);
  CHECK(quantale_unit_check(Q).pass);
  CHECK(quantale_distributivity_check(Q).pass);
}

TEST_CASE("quantale generation enforces its guards") {
  OrthoLattice O = as_ortho(make_mo(2));
  FiniteLattice P = atom_powerset(O.base);
  SupMorphism lift = pm_states_lift(make_measurement(O, 3), P);

  Limits tiny;
  tiny.max_quantale_closure = 2;
  CHECK_THROWS_AS(generate_quantale(P, {lift}, tiny), GuardError);

  SupMorphism broken;
  broken.dom = broken.cod = &P;
  broken.table.assign(P.n, P.top);
  CHECK_THROWS_AS(generate_quantale(P, {broken}), LatticeError);
}

TEST_CASE("the joint closure of all atom measurements is a quantale") {
  OrthoLattice O = as_ortho(make_mo(2));
  FiniteLattice P = atom_powerset(O.base);
  std::vector<SupMorphism> gens;
  for_each_bit(O.base.atoms(), [&](int b) {
    gens.push_back(pm_states_lift(make_measurement(O, b), P));
  });
  Quantale Q = generate_quantale(P, gens);
  CHECK(Q.elements.size() >= 4);
  CHECK(quantale_associativity_check(Q).pass);
  CHECK(quantale_unit_check(Q).pass);
  CHECK(quantale_distributivity_check(Q).pass);
}

TEST_CASE("union-extended set maps and their validation") {
  OrthoLattice O = as_ortho(make_mo(2));
  const FiniteLattice& L = O.base;

  PSupMorphism id = identity_psup(L);
  CHECK(id.apply(bit(1) | bit(4)) == (bit(1) | bit(4)));
  CHECK(validate_psup(id).pass);

  for (int b = 0; b < L.n; ++b) {
    CAPTURE(b);
    PSupMorphism g = pm_image_map(make_measurement(O, b));
    CHECK(validate_psup(g).pass);
  }

  PSupMorphism g3 = pm_image_map(make_measurement(O, 3));
  PSupMorphism gg = compose(g3, g3);
  CHECK(gg.apply(bit(1)) == g3.apply(g3.apply(bit(1))));

  // Sending everything (bottom included) to the top is not compatible with
  // the hull: the empty set witnesses the failure.
  PSupMorphism all_top;
  all_top.dom = all_top.cod = &L;
  all_top.images.assign(L.n, bit(L.top));
  Verdict v = validate_psup(all_top);
  REQUIRE(!v.pass);
  CHECK(v.law == "set-map hull factorization");
}

TEST_CASE("ideal maps: validation and the resolution condition") {
  FiniteLattice mo2 = make_mo(2).lattice;
  IdealLattice di = build_ideal_lattice(mo2);
  REQUIRE(di.ideals.size() == 16);

  CHECK(validate_dcheyt(identity_dcheyt(di)).pass);

  DCHeytMorphism to_bottom;
  to_bottom.dom = to_bottom.cod = &di;
  to_bottom.table.assign(di.ideals.size(), 0);
  CHECK(validate_dcheyt(to_bottom).pass);

  // Reassign the atom ideals asymmetrically: down(a), down(b) collapse to
  // the bottom ideal while down(a'), down(b') blow up to the full carrier.
  // Joins are still preserved (the family is a powerset of the four atom
  // ideals), but two ideals with the same resolution now resolve apart.
  std::vector<int> atom_ideal(4), image(16, -1);
  for (int x : {1, 2, 3, 4}) atom_ideal[x - 1] = di.principal[x];
  int full = di.index_of(mo2.universe());
  image[atom_ideal[0]] = 0;     // down(a)  -> {0}
  image[atom_ideal[1]] = full;  // down(a') -> everything
  image[atom_ideal[2]] = 0;     // down(b)  -> {0}
  image[atom_ideal[3]] = full;  // down(b') -> everything

  DCHeytMorphism h;
  h.dom = h.cod = &di;
  h.table.resize(di.ideals.size());
  for (std::size_t i = 0; i < di.ideals.size(); ++i) {
    Mask members = bit(mo2.bottom);
    for (int t = 0; t < 4; ++t)
      if ((di.ideals[atom_ideal[t]] & ~di.ideals[i]) == 0)
        members |= di.ideals[image[atom_ideal[t]]];
    h.table[i] = di.index_of(di.closure_of(members));
  }
  Verdict v = validate_dcheyt(h);
  REQUIRE(!v.pass);
  CHECK(v.law == "ideal map resolution condition");

  CHECK(compose(identity_dcheyt(di), to_bottom) == to_bottom);
}

TEST_CASE("functors between the three pictures") {
  OrthoLattice O = as_ortho(make_mo(2));
  const FiniteLattice& L = O.base;
  IdealLattice di = build_ideal_lattice(L);

  PSupMorphism id = identity_psup(L);
  CHECK(functor_F(id, di, di) == identity_dcheyt(di));
  CHECK(functor_G(identity_dcheyt(di)) == identity_morphism(L));
  CHECK(functor_H(id) == identity_morphism(L));
  CHECK(triangle_check(id, di, di).pass);

  std::vector<PSupMorphism> maps;
  for (int b = 0; b < L.n; ++b)
    maps.push_back(pm_image_map(make_measurement(O, b)));

  for (const auto& g : maps) {
    CHECK(validate_dcheyt(functor_F(g, di, di)).pass);
    CHECK(triangle_check(g, di, di).pass);
    // H reads off the strongest-property transition.
    SupMorphism hg = functor_H(g);
    CHECK(validate_sup_morphism(hg).pass);
  }

  for (const auto& g1 : maps)
    for (const auto& g2 : maps) {
      PSupMorphism g = compose(g2, g1);
      CHECK(functor_F(g, di, di) ==
            compose(functor_F(g2, di, di), functor_F(g1, di, di)));
      CHECK(functor_H(g) == compose(functor_H(g2), functor_H(g1)));
      CHECK(triangle_check(g, di, di).pass);
    }
}

TEST_CASE("the resolution forgets enough to merge distinct ideal maps") {
  FiniteLattice mo2 = make_mo(2).lattice;
  IdealLattice di = build_ideal_lattice(mo2);
  NonfaithfulReport r = nonfaithful_search(di);

  CHECK(r.space == 65536);  // 16 ideals, 4 irreducible ones
  CHECK(r.examined == 65536);
  CHECK(!r.truncated);
  CHECK(r.validated_endos >= 2);
  CHECK(r.collision_classes >= 1);
  CHECK(r.collision_pairs >= 1);
  REQUIRE(r.witness.has_value());

  DCHeytMorphism h1, h2;
  h1.dom = h1.cod = &di;
  h2.dom = h2.cod = &di;
  h1.table = r.witness->first;
  h2.table = r.witness->second;
  CHECK(h1.table != h2.table);
  CHECK(validate_dcheyt(h1).pass);
  CHECK(validate_dcheyt(h2).pass);
  CHECK(functor_G(h1) == functor_G(h2));
  CHECK(functor_G(h1).table == r.witness_g);

  // The search is deterministic.
  NonfaithfulReport again = nonfaithful_search(di);
  CHECK(again.witness == r.witness);
  CHECK(again.validated_endos == r.validated_endos);
  CHECK(again.collision_pairs == r.collision_pairs);
}

TEST_CASE("no resolution collisions on classical carriers") {
  for (const char* name : {"boolean2", "chain2"}) {
    CAPTURE(name);
    FiniteLattice L = make_by_name({name}).lattice;
    IdealLattice di = build_ideal_lattice(L);
    NonfaithfulReport r = nonfaithful_search(di);
    CHECK(!r.witness.has_value());
    CHECK(r.collision_classes == 0);
    CHECK(r.collision_pairs == 0);
    CHECK(!r.truncated);
  }
  CHECK(nonfaithful_search(build_ideal_lattice(make_boolean(2).lattice))
            .validated_endos == 16);
  CHECK(nonfaithful_search(build_ideal_lattice(make_chain(2).lattice))
            .validated_endos == 2);
}

TEST_CASE("the candidate guard truncates the search honestly") {
  FiniteLattice mo2 = make_mo(2).lattice;
  IdealLattice di = build_ideal_lattice(mo2);
  Limits lim;
  lim.max_search_candidates = 10;
  NonfaithfulReport r = nonfaithful_search(di, lim);
  CHECK(r.truncated);
  CHECK(r.examined == 10);
  CHECK(r.space == 65536);
}
