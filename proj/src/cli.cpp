#include "oql/cli.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "oql/catalog.hpp"
#include "oql/dynamics.hpp"
#include "oql/hull.hpp"
#include "oql/io.hpp"
#include "oql/lattice.hpp"
#include "oql/quantaloid.hpp"

namespace oql {

namespace {

using ordered_json = nlohmann::ordered_json;

// Accumulates check verdicts plus free-form report data, and renders either
// plain text (as it goes) or one JSON object (at the end).
struct Report {
  std::ostream& out;
  bool json;
  ordered_json doc = ordered_json::object();
  std::vector<ordered_json> checks;
  bool all_pass = true;

  Report(std::ostream& o, bool j, const std::string& command) : out(o), json(j) {
    doc["command"] = command;
  }

  void info(const std::string& key, const ordered_json& value) {
    if (json)
      doc[key] = value;
    else if (value.is_string())
      out << key << ": " << value.get<std::string>() << "\n";
    else
      out << key << ": " << value.dump() << "\n";
  }

  void check(const Verdict& v, const std::vector<std::string>* labels) {
    all_pass = all_pass && v.pass;
    ordered_json c = ordered_json::object();
    c["name"] = v.law;
    c["pass"] = v.pass;
    if (!v.pass && !v.witness.empty()) {
      ordered_json w = ordered_json::array();
      for (int i : v.witness)
        if (labels && i >= 0 && i < static_cast<int>(labels->size()))
          w.push_back((*labels)[i]);
        else
          w.push_back(i);
      c["witness"] = std::move(w);
    }
    if (!v.pass && !v.detail.empty()) c["detail"] = v.detail;
    checks.push_back(std::move(c));
    if (!json) {
      out << "check " << v.law << ": " << (v.pass ? "pass" : "FAIL");
      if (!v.pass && !v.detail.empty()) out << " -- " << v.detail;
      out << "\n";
    }
  }

  int finish(bool exit_on_failures) {
    if (json) {
      doc["checks"] = ordered_json::array();
      for (auto& c : checks) doc["checks"].push_back(std::move(c));
      out << doc.dump(2) << "\n";
    }
    return (exit_on_failures && !all_pass) ? 1 : 0;
  }
};

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

ordered_json set_json(const FiniteLattice& L, Mask m) {
  ordered_json a = ordered_json::array();
  for_each_bit(m, [&](int e) { a.push_back(L.labels[e]); });
  return a;
}

int element_by_label(const FiniteLattice& L, const std::string& label) {
  for (int i = 0; i < L.n; ++i)
    if (L.labels[i] == label) return i;
  throw ParseError("no element labeled '" + label + "' in '" + L.name + "'");
}

Mask parse_element_set(const FiniteLattice& L, const std::string& csv) {
  Mask m = 0;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) m |= bit(element_by_label(L, item));
  return m;
}

struct LoadedLattice {
  FiniteLattice lattice;
  std::optional<std::vector<int>> ortho;
};

LoadedLattice load(const std::string& path, int max_size) {
  LatticeDocument doc = read_lattice_file(path);
  if (static_cast<int>(doc.labels.size()) > max_size)
    throw GuardError("'" + doc.name + "' has " +
                     std::to_string(doc.labels.size()) +
                     " elements, above the size guard of " +
                     std::to_string(max_size) +
                     " (raise --max-size to proceed)");
  LoadedLattice out{build_lattice(doc), {}};
  out.ortho = ortho_table(doc, out.lattice);
  return out;
}

OrthoLattice require_ortho(const LoadedLattice& l) {
  if (!l.ortho)
    throw LatticeError("'" + l.lattice.name +
                       "' carries no orthocomplement table");
  return attach_ortho(l.lattice, *l.ortho);
}

// --- subcommand bodies ------------------------------------------------------

int cmd_validate(const std::string& path, int max_size, bool json,
                 std::ostream& out) {
  Report rep(out, json, "validate");
  LatticeDocument doc = read_lattice_file(path);
  if (static_cast<int>(doc.labels.size()) > max_size)
    throw GuardError("'" + doc.name + "' exceeds the size guard of " +
                     std::to_string(max_size));
  rep.info("name", doc.name);
  rep.info("elements", static_cast<int>(doc.labels.size()));
  try {
    FiniteLattice L = build_lattice(doc);
    rep.check(Verdict::ok("partial order with all meets and joins"), nullptr);
    if (auto ortho = ortho_table(doc, L)) {
      try {
        attach_ortho(L, *ortho);
        rep.check(Verdict::ok("orthocomplement axioms"), nullptr);
      } catch (const LatticeError& e) {
        rep.check(Verdict::fail("orthocomplement axioms", {}, e.what()),
                  nullptr);
      }
    }
  } catch (const LatticeError& e) {
    rep.check(
        Verdict::fail("partial order with all meets and joins", {}, e.what()),
        nullptr);
  }
  return rep.finish(true);
}

int cmd_report(const std::string& path, int max_size, bool json,
               std::ostream& out) {
  LoadedLattice l = load(path, max_size);
  const FiniteLattice& L = l.lattice;
  Report rep(out, json, "report");
  rep.info("name", L.name);
  rep.info("elements", L.n);
  rep.info("bottom", L.labels[L.bottom]);
  rep.info("top", L.labels[L.top]);
  rep.info("atoms", set_json(L, L.atoms()));
  rep.info("orthocomplemented", l.ortho ? "yes" : "no");
  if (l.ortho) {
    OrthoLattice O = require_ortho(l);
    rep.check(orthomodularity_check(O), &L.labels);
    rep.check(de_morgan_check(O), &L.labels);
  }
  rep.check(atomisticity_check(L), &L.labels);
  rep.check(covering_law_check(L), &L.labels);
  rep.check(frame_check(L), &L.labels);
  rep.check(modularity_check(L), &L.labels);
  rep.check(superposition_check(L), &L.labels);
  // Structure flags are informational: a valid lattice always reports 0.
  return rep.finish(false);
}

int cmd_hull(const std::string& path, int max_size, bool list_ideals,
             bool json, std::ostream& out) {
  LoadedLattice l = load(path, max_size);
  const FiniteLattice& L = l.lattice;
  Limits lim;
  lim.max_subset_elements = max_size;
  IdealLattice di = build_ideal_lattice(L, lim);
  Report rep(out, json, "hull");
  rep.info("name", L.name);
  rep.info("ideals", static_cast<int>(di.ideals.size()));
  if (list_ideals) {
    if (json) {
      ordered_json a = ordered_json::array();
      for (Mask m : di.ideals) a.push_back(set_json(L, m));
      rep.info("ideal_members", a);
    } else {
      for (std::size_t i = 0; i < di.ideals.size(); ++i)
        out << "ideal " << i << ": " << set_text(L, di.ideals[i]) << "\n";
    }
  }

  if (di.order)
    rep.check(frame_check(*di.order), &di.order->labels);
  else
    rep.info("note", "ideal family exceeds 64 members; order not materialised");

  {
    Verdict v = Verdict::ok("principal embedding");
    for (int a = 0; a < L.n && v.pass; ++a) {
      for (int b = 0; b < L.n && v.pass; ++b) {
        if (a < b && di.principal[a] == di.principal[b])
          v = Verdict::fail("principal embedding", {a, b},
                            "two elements share a principal ideal");
        Mask meet_ideal = di.ideals[di.principal[L.meet(a, b)]];
        if (meet_ideal != (di.ideals[di.principal[a]] & di.ideals[di.principal[b]]))
          v = Verdict::fail("principal embedding", {a, b},
                            "principal ideals do not intersect to the "
                            "principal ideal of the meet");
      }
    }
    rep.check(v, &L.labels);
  }
  {
    Verdict v = Verdict::ok("resolution closure");
    for (std::size_t i = 0; i < di.ideals.size() && v.pass; ++i) {
      int ri = di.resolution(static_cast<int>(i));
      Mask a = di.ideals[i];
      Mask ra = di.ideals[ri];
      if ((a & ~ra) != 0)
        v = Verdict::fail("resolution closure", {},
                          "resolution is not extensive at ideal " +
                              set_text(L, a));
      else if (di.resolution(ri) != ri)
        v = Verdict::fail("resolution closure", {},
                          "resolution is not idempotent at ideal " +
                              set_text(L, a));
    }
    for (std::size_t i = 0; i < di.ideals.size() && v.pass; ++i)
      for (std::size_t j = 0; j < di.ideals.size() && v.pass; ++j)
        if ((di.ideals[i] & ~di.ideals[j]) == 0 &&
            (di.ideals[di.resolution(static_cast<int>(i))] &
             ~di.ideals[di.resolution(static_cast<int>(j))]) != 0)
          v = Verdict::fail("resolution closure", {},
                            "resolution is not monotone");
    rep.check(v, &L.labels);
  }
  {
    Verdict v = Verdict::ok("principal ideals join-dense");
    for (std::size_t i = 0; i < di.ideals.size() && v.pass; ++i) {
      Mask u = 0;
      for (int x = 0; x < L.n; ++x)
        if ((di.ideals[di.principal[x]] & ~di.ideals[i]) == 0)
          u |= di.ideals[di.principal[x]];
      if (di.closure_of(u) != di.ideals[i])
        v = Verdict::fail("principal ideals join-dense", {},
                          "ideal " + set_text(L, di.ideals[i]) +
                              " is not the join of the principal ideals "
                              "below it");
    }
    rep.check(v, &L.labels);
  }
  return rep.finish(true);
}

int cmd_dynamics(const std::string& path, int max_size, const std::string& b,
                 const std::string& input, bool json, std::ostream& out) {
  LoadedLattice l = load(path, max_size);
  OrthoLattice O = require_ortho(l);
  const FiniteLattice& L = O.base;
  Limits lim;
  lim.max_subset_elements = max_size;
  MeasurementSetup m = make_measurement(O, element_by_label(L, b));
  Mask in = parse_element_set(L, input);

  Report rep(out, json, "dynamics");
  rep.info("name", L.name);
  rep.info("eigenproperties",
           ordered_json::array({L.labels[m.b], L.labels[m.b_prime]}));
  rep.info("degenerate", m.degenerate ? "yes" : "no");
  rep.info("input", set_json(L, in));

  const Mask atoms = L.atoms();
  if (!m.state_capable) {
    rep.info("states",
             "unavailable: the lattice must be atomistic and satisfy the "
             "covering law");
  } else if ((in & ~atoms) != 0) {
    rep.info("states", "skipped: the input contains non-atoms");
  } else {
    Mask outcome = pm_states(m, in);
    rep.info("outcome_states", set_json(L, outcome));
    rep.info("state_resolution", L.labels[state_resolution(L, outcome)]);
  }

  Mask ideal = admissible_hull(L, in, lim);
  rep.info("input_ideal", set_json(L, ideal));
  Mask image = pm_ideals(m, ideal, lim);
  rep.info("outcome_ideal", set_json(L, image));
  rep.info("strongest", L.labels[pm_strongest(m, L.join_of(in))]);
  return rep.finish(true);
}

int cmd_diagrams(const std::string& path, int max_size, const std::string& b,
                 bool json, std::ostream& out) {
  LoadedLattice l = load(path, max_size);
  OrthoLattice O = require_ortho(l);
  const FiniteLattice& L = O.base;
  Limits lim;
  lim.max_subset_elements = max_size;
  IdealLattice di = build_ideal_lattice(L, lim);

  std::vector<int> bs;
  if (b.empty())
    for (int x = 0; x < L.n; ++x) bs.push_back(x);
  else
    bs.push_back(element_by_label(L, b));

  Report rep(out, json, "diagrams");
  rep.info("name", L.name);
  for (int eb : bs) {
    MeasurementSetup m = make_measurement(O, eb);
    for (Verdict v : verify_pm_diagrams(m, di, lim)) {
      v.law += " (b = " + L.labels[eb] + ")";
      rep.check(v, &L.labels);
    }
  }
  return rep.finish(true);
}

int cmd_quantale(const std::string& path, int max_size,
                 const std::string& generators, bool json, std::ostream& out) {
  LoadedLattice l = load(path, max_size);
  OrthoLattice O = require_ortho(l);
  const FiniteLattice& L = O.base;
  Limits lim;
  lim.max_subset_elements = max_size;

  std::vector<int> gens;
  if (generators.empty()) {
    for_each_bit(L.atoms(), [&](int p) { gens.push_back(p); });
  } else {
    for_each_bit(parse_element_set(L, generators),
                 [&](int p) { gens.push_back(p); });
  }

  FiniteLattice P = atom_powerset(L);
  std::vector<SupMorphism> lifts;
  for (int b : gens) lifts.push_back(pm_states_lift(make_measurement(O, b), P));

  Quantale Q = generate_quantale(P, lifts, lim);
  Report rep(out, json, "quantale");
  rep.info("name", L.name);
  rep.info("carrier", P.name);
  rep.info("generators", static_cast<int>(lifts.size()));
  rep.info("closure_size", static_cast<int>(Q.elements.size()));
  rep.check(quantale_associativity_check(Q), nullptr);
  rep.check(quantale_unit_check(Q), nullptr);
  rep.check(quantale_distributivity_check(Q, lim), nullptr);
  return rep.finish(true);
}

int cmd_triangle(const std::string& path, int max_size, bool json,
                 std::ostream& out) {
  LoadedLattice l = load(path, max_size);
  OrthoLattice O = require_ortho(l);
  const FiniteLattice& L = O.base;
  Limits lim;
  lim.max_subset_elements = max_size;
  IdealLattice di = build_ideal_lattice(L, lim);

  Report rep(out, json, "triangle");
  rep.info("name", L.name);

  {
    PSupMorphism id = identity_psup(L);
    Verdict v = validate_psup(id, lim);
    v.law = "identity set map";
    rep.check(v, &L.labels);
    DCHeytMorphism fid = functor_F(id, di, di, lim);
    Verdict fv = (fid == identity_dcheyt(di))
                     ? Verdict::ok("F(identity) = identity")
                     : Verdict::fail("F(identity) = identity", {},
                                     "F of the identity set map is not the "
                                     "identity ideal map");
    rep.check(fv, nullptr);
    Verdict tv = triangle_check(id, di, di, lim);
    tv.law = "triangle (identity)";
    rep.check(tv, &L.labels);
  }

  std::vector<PSupMorphism> maps(L.n);
  for (int b = 0; b < L.n; ++b) {
    MeasurementSetup m = make_measurement(O, b);
    maps[b] = pm_image_map(m);
    Verdict v = validate_psup(maps[b], lim);
    v.law = "measurement set map (b = " + L.labels[b] + ")";
    rep.check(v, &L.labels);
    Verdict tv = triangle_check(maps[b], di, di, lim);
    tv.law = "triangle (b = " + L.labels[b] + ")";
    rep.check(tv, &L.labels);
  }

  {
    Verdict v = Verdict::ok("functor composition");
    for (int b1 = 0; b1 < L.n && v.pass; ++b1)
      for (int b2 = 0; b2 < L.n && v.pass; ++b2) {
        PSupMorphism g = compose(maps[b2], maps[b1]);
        if (!(functor_F(g, di, di, lim) ==
              compose(functor_F(maps[b2], di, di, lim),
                      functor_F(maps[b1], di, di, lim))))
          v = Verdict::fail("functor composition", {b1, b2},
                            "F of a composite differs from the composite of "
                            "the F images (b1 = " + L.labels[b1] +
                                ", b2 = " + L.labels[b2] + ")");
        else if (!(compose(functor_G(functor_F(maps[b2], di, di, lim)),
                           functor_G(functor_F(maps[b1], di, di, lim)))
                       .table ==
                   functor_G(compose(functor_F(maps[b2], di, di, lim),
                                     functor_F(maps[b1], di, di, lim)))
                       .table))
          v = Verdict::fail("functor composition", {b1, b2},
                            "G of a composite differs from the composite of "
                            "the G images");
        else if (!(functor_H(g).table ==
                   compose(functor_H(maps[b2]), functor_H(maps[b1])).table))
          v = Verdict::fail("functor composition", {b1, b2},
                            "H of a composite differs from the composite of "
                            "the H images");
        else if (!(triangle_check(g, di, di, lim).pass))
          v = Verdict::fail("functor composition", {b1, b2},
                            "triangle fails on a composite measurement map");
      }
    rep.check(v, &L.labels);
  }
  return rep.finish(true);
}

int cmd_search(const std::string& path, int max_size, std::uint64_t bound,
               bool json, std::ostream& out) {
  LoadedLattice l = load(path, max_size);
  const FiniteLattice& L = l.lattice;
  Limits lim;
  lim.max_subset_elements = max_size;
  lim.max_search_candidates = bound;
  IdealLattice di = build_ideal_lattice(L, lim);
  NonfaithfulReport r = nonfaithful_search(di, lim);

  Report rep(out, json, "search-nonfaithful");
  rep.info("name", L.name);
  rep.info("ideals", static_cast<int>(di.ideals.size()));
  rep.info("candidate_space", r.space);
  rep.info("examined", r.examined);
  rep.info("truncated", r.truncated ? "yes" : "no");
  rep.info("validated_endomorphisms", r.validated_endos);
  rep.info("collision_classes", r.collision_classes);
  rep.info("collision_pairs", r.collision_pairs);
  if (r.witness) {
    auto table_json = [&](const std::vector<int>& t) {
      ordered_json a = ordered_json::array();
      for (std::size_t i = 0; i < t.size(); ++i)
        a.push_back(ordered_json::array(
            {set_json(L, di.ideals[i]), set_json(L, di.ideals[t[i]])}));
      return a;
    };
    if (json) {
      rep.info("witness_first", table_json(r.witness->first));
      rep.info("witness_second", table_json(r.witness->second));
      ordered_json g = ordered_json::array();
      for (int x = 0; x < L.n; ++x)
        g.push_back(ordered_json::array(
            {L.labels[x], L.labels[r.witness_g[x]]}));
      rep.info("shared_g_image", g);
    } else {
      out << "witness: two distinct validated ideal maps share a G-image\n";
      for (std::size_t i = 0; i < r.witness->first.size(); ++i)
        out << "  " << set_text(L, di.ideals[i]) << " -> "
            << set_text(L, di.ideals[r.witness->first[i]]) << "   |   "
            << set_text(L, di.ideals[r.witness->second[i]]) << "\n";
      out << "shared G table:";
      for (int x = 0; x < L.n; ++x)
        out << " " << L.labels[x] << "->" << L.labels[r.witness_g[x]];
      out << "\n";
    }
  } else {
    rep.info("witness", "none");
  }
  return rep.finish(false);
}

int cmd_catalog(const std::vector<std::string>& words,
                const std::string& out_path, bool json, std::ostream& out) {
  CatalogEntry e = make_by_name(words);
  std::string text = serialize_lattice(e.lattice, e.ortho);
  if (out_path.empty())
    out << text;
  else
    write_text_file(out_path, text);
  (void)json;
  return 0;
}

int cmd_dot(const std::string& path, int max_size, const std::string& out_path,
            std::ostream& out) {
  LoadedLattice l = load(path, max_size);
  std::string text = to_dot(l.lattice, l.ortho);
  if (out_path.empty())
    out << text;
  else
    write_text_file(out_path, text);
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"finite lattice toolkit: orthomodular structure checks, "
               "distributive-ideal hulls, measurement dynamics, and the "
               "sup-enriched layer over them"};
  app.require_subcommand(1);
  app.fallthrough();

  int max_size = 12;
  bool json = false;
  app.add_option("--max-size", max_size,
                 "size guard for subset-exhaustive computations")
      ->capture_default_str();
  app.add_flag("--json", json, "machine-readable report");

  std::string file, b, input, generators, out_path;
  std::uint64_t bound = Limits{}.max_search_candidates;
  std::vector<std::string> catalog_words;

  auto* validate = app.add_subcommand("validate", "check that a file is a lattice");
  validate->add_option("file", file)->required();

  auto* report = app.add_subcommand("report", "structure flag report");
  report->add_option("file", file)->required();

  auto* hull = app.add_subcommand("hull", "distributive-ideal family");
  hull->add_option("file", file)->required();
  bool list_ideals = false;
  hull->add_flag("--list-ideals", list_ideals, "print every ideal");

  auto* dynamics = app.add_subcommand("dynamics", "apply a measurement");
  dynamics->add_option("file", file)->required();
  dynamics->add_option("--b", b, "eigenproperty label")->required();
  dynamics->add_option("--input", input,
                       "comma-separated element labels (states or properties)");

  auto* diagrams = app.add_subcommand("diagrams", "verify commutation squares");
  diagrams->add_option("file", file)->required();
  diagrams->add_option("--b", b, "eigenproperty label (default: all)");

  auto* quantale = app.add_subcommand("quantale", "induction quantale laws");
  quantale->add_option("file", file)->required();
  quantale->add_option("--generators", generators,
                       "comma-separated eigenproperty labels (default: atoms)");

  auto* triangle = app.add_subcommand("triangle", "functor and triangle laws");
  triangle->add_option("file", file)->required();

  auto* search = app.add_subcommand("search-nonfaithful",
                                    "look for distinct ideal maps with equal "
                                    "G-image");
  search->add_option("file", file)->required();
  search->add_option("--bound", bound, "candidate guard")
      ->capture_default_str();

  auto* catalog = app.add_subcommand("catalog", "emit a builtin lattice");
  catalog->add_option("name", catalog_words, "e.g. mo2 | boolean 3 | product mo2 chain2")
      ->required()
      ->expected(1, 3);
  catalog->add_option("-o,--output", out_path, "output file (default stdout)");

  auto* dot = app.add_subcommand("dot", "Hasse diagram in DOT form");
  dot->add_option("file", file)->required();
  dot->add_option("-o,--output", out_path, "output file (default stdout)");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(file, max_size, json, out);
    if (report->parsed()) return cmd_report(file, max_size, json, out);
    if (hull->parsed())
      return cmd_hull(file, max_size, list_ideals, json, out);
    if (dynamics->parsed())
      return cmd_dynamics(file, max_size, b, input, json, out);
    if (diagrams->parsed()) return cmd_diagrams(file, max_size, b, json, out);
    if (quantale->parsed())
      return cmd_quantale(file, max_size, generators, json, out);
    if (triangle->parsed()) return cmd_triangle(file, max_size, json, out);
    if (search->parsed())
      return cmd_search(file, max_size, bound, json, out);
    if (catalog->parsed()) return cmd_catalog(catalog_words, out_path, json, out);
    if (dot->parsed()) return cmd_dot(file, max_size, out_path, out);
    err << "error: no command\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const GuardError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const LatticeError& e) {
    err << "violation: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace oql
