#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oql/cli.hpp"

using namespace oql;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

const fs::path& work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "oql-cli-tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  std::string path = (work_dir() / name).string();
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

// Generate a builtin lattice file through the CLI itself.
std::string catalog_file(const std::string& name) {
  std::string path = (work_dir() / (name + ".json")).string();
  CliResult r = cli({"catalog", name, "-o", path});
  REQUIRE(r.code == 0);
  return path;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos;
       at = text.find(needle, at + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("catalog emits a parsable lattice document") {
  CliResult r = cli({"catalog", "mo2"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["name"] == "mo2");
  CHECK(j["elements"].size() == 6);
  CHECK(j.contains("ortho"));

  CliResult split = cli({"catalog", "boolean", "3"});
  CHECK(split.code == 0);
  CHECK(nlohmann::json::parse(split.out)["elements"].size() == 8);

  CliResult prod = cli({"catalog", "product", "mo2", "chain2"});
  CHECK(prod.code == 0);
  CHECK(nlohmann::json::parse(prod.out)["elements"].size() == 12);

  CliResult bad = cli({"catalog", "pentagon"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("error:") == 0);
}

TEST_CASE("validate accepts every generated builtin") {
  for (const char* name : {"mo2", "o6", "boolean3", "chain4", "m3", "n5"}) {
    CAPTURE(name);
    CliResult r = cli({"validate", catalog_file(name)});
    CHECK(r.code == 0);
    CHECK(r.out.find("check partial order with all meets and joins: pass") !=
          std::string::npos);
  }
  CliResult mo2 = cli({"validate", catalog_file("mo2")});
  CHECK(mo2.out.find("check orthocomplement axioms: pass") !=
        std::string::npos);
}

TEST_CASE("validate fails on posets without meets or joins") {
  std::string bowtie = write_file(
      "bowtie.json",
      R"({"name":"bowtie","elements":["a","b","c","d"],
          "covers":[["a","c"],["a","d"],["b","c"],["b","d"]]})");
  CliResult r = cli({"validate", bowtie});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("malformed documents are usage errors") {
  CliResult missing = cli({"validate", (work_dir() / "no-such.json").string()});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot open") != std::string::npos);

  CliResult garbage = cli({"validate", write_file("garbage.json", "{nope")});
  CHECK(garbage.code == 2);
  CHECK(garbage.err.find("error:") == 0);

  CliResult dup = cli({"validate", write_file("dup.json",
      R"({"name":"d","elements":["x","x"],"covers":[]})")});
  CHECK(dup.code == 2);
  CHECK(dup.err.find("duplicate element label 'x'") != std::string::npos);

  CliResult dangling = cli({"validate", write_file("dangling.json",
      R"({"name":"d","elements":["x"],"covers":[["x","y"]]})")});
  CHECK(dangling.code == 2);
  CHECK(dangling.err.find("undeclared label") != std::string::npos);

  CliResult twisted = cli({"validate", write_file("twisted.json",
      R"({"name":"t","elements":["0","1"],"covers":[["0","1"]],
          "ortho":{"0":"1","1":"1"}})")});
  CHECK(twisted.code == 2);
  CHECK(twisted.err.find("not involutive") != std::string::npos);
}

TEST_CASE("orthocomplement laws are a lattice violation, not a usage error") {
  // Involutive table, so it parses; the middle element is its own
  // complement, which no lattice admits.
  std::string path = write_file("selfc.json",
      R"({"name":"selfc","elements":["0","c1","1"],
          "covers":[["0","c1"],["c1","1"]],
          "ortho":{"0":"1","1":"0","c1":"c1"}})");
  CliResult r = cli({"validate", path});
  CHECK(r.code == 1);
  CHECK(r.out.find("check orthocomplement axioms: FAIL") != std::string::npos);
}

TEST_CASE("the size guard is enforced and adjustable") {
  CliResult blocked = cli({"validate", catalog_file("o6"), "--max-size", "4"});
  CHECK(blocked.code == 2);
  CHECK(blocked.err.find("size guard") != std::string::npos);

  std::string b4 = catalog_file("boolean4");
  CliResult deflt = cli({"report", b4});
  CHECK(deflt.code == 2);
  CHECK(deflt.err.find("size guard") != std::string::npos);

  CliResult raised = cli({"hull", b4, "--max-size", "16"});
  CHECK(raised.code == 0);
  CHECK(raised.out.find("ideals: 16") != std::string::npos);
}

TEST_CASE("report prints structure flags without failing the run") {
  CliResult o6 = cli({"report", catalog_file("o6")});
  CHECK(o6.code == 0);  // informational even when laws fail
  CHECK(o6.out.find("orthocomplemented: yes") != std::string::npos);
  CHECK(o6.out.find("check orthomodularity: FAIL") != std::string::npos);
  CHECK(o6.out.find("check de morgan: pass") != std::string::npos);
  CHECK(o6.out.find("check covering law: FAIL") != std::string::npos);

  CliResult mo2 = cli({"report", catalog_file("mo2")});
  CHECK(mo2.code == 0);
  CHECK(mo2.out.find("check orthomodularity: pass") != std::string::npos);
  CHECK(mo2.out.find("check frame law: FAIL") != std::string::npos);
  CHECK(mo2.out.find("check superposition: pass") != std::string::npos);

  CliResult m3 = cli({"report", catalog_file("m3")});
  CHECK(m3.code == 0);
  CHECK(m3.out.find("orthocomplemented: no") != std::string::npos);
  CHECK(m3.out.find("orthomodularity") == std::string::npos);
}

TEST_CASE("hull lists the ideal family and its structure") {
  CliResult r = cli({"hull", catalog_file("mo2"), "--list-ideals"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ideals: 16") != std::string::npos);
  CHECK(r.out.find("ideal 0: {0}") != std::string::npos);
  CHECK(r.out.find("check frame law: pass") != std::string::npos);
  CHECK(r.out.find("check principal embedding: pass") != std::string::npos);
  CHECK(r.out.find("check resolution closure: pass") != std::string::npos);
  CHECK(r.out.find("check principal ideals join-dense: pass") !=
        std::string::npos);
}

TEST_CASE("dynamics reports states, ideals, and the strongest property") {
  std::string mo2 = catalog_file("mo2");
  CliResult r = cli({"dynamics", mo2, "--b", "b", "--input", "a"});
  CHECK(r.code == 0);
  CHECK(r.out.find("eigenproperties: [\"b\",\"b'\"]") != std::string::npos);
  CHECK(r.out.find("degenerate: no") != std::string::npos);
  CHECK(r.out.find("outcome_states: [\"b\",\"b'\"]") != std::string::npos);
  CHECK(r.out.find("state_resolution: 1") != std::string::npos);
  CHECK(r.out.find("input_ideal: [\"0\",\"a\"]") != std::string::npos);
  CHECK(r.out.find("outcome_ideal: [\"0\",\"b\",\"b'\"]") != std::string::npos);
  CHECK(r.out.find("strongest: 1") != std::string::npos);

  // A non-atom input skips the state picture but the ideals still move.
  CliResult top = cli({"dynamics", mo2, "--b", "b", "--input", "1"});
  CHECK(top.code == 0);
  CHECK(top.out.find("states: skipped") != std::string::npos);
  CHECK(top.out.find("outcome_ideal: [\"0\",\"b\",\"b'\"]") !=
        std::string::npos);

  CliResult degen = cli({"dynamics", mo2, "--b", "1", "--input", "a"});
  CHECK(degen.code == 0);
  CHECK(degen.out.find("degenerate: yes") != std::string::npos);
  CHECK(degen.out.find("outcome_states: [\"a\"]") != std::string::npos);
}

TEST_CASE("dynamics rejects bad setups with distinct exit codes") {
  CliResult no_ortho = cli({"dynamics", catalog_file("m3"), "--b", "x"});
  CHECK(no_ortho.code == 1);
  CHECK(no_ortho.err.find("violation:") == 0);
  CHECK(no_ortho.err.find("orthocomplement") != std::string::npos);

  CliResult unknown = cli({"dynamics", catalog_file("mo2"), "--b", "zz"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("no element labeled 'zz'") != std::string::npos);

  CliResult missing = cli({"dynamics", catalog_file("mo2")});
  CHECK(missing.code == 2);
}

TEST_CASE("diagrams verify the three squares per eigenproperty") {
  std::string mo2 = catalog_file("mo2");
  CliResult one = cli({"diagrams", mo2, "--b", "b"});
  CHECK(one.code == 0);
  CHECK(one.out.find("check state square (b = b): pass") != std::string::npos);
  CHECK(one.out.find("check ideal square (b = b): pass") != std::string::npos);
  CHECK(one.out.find("check hull factorization (b = b): pass") !=
        std::string::npos);

  CliResult all = cli({"diagrams", mo2});
  CHECK(all.code == 0);
  CHECK(count(all.out, ": pass") == 18);  // six eigenproperties, three squares
}

TEST_CASE("quantale reports the closure of the chosen inductions") {
  std::string mo2 = catalog_file("mo2");
  CliResult one = cli({"quantale", mo2, "--generators", "b"});
  CHECK(one.code == 0);
  CHECK(one.out.find("generators: 1") != std::string::npos);
  CHECK(one.out.find("closure_size: 4") != std::string::npos);
  CHECK(one.out.find("check quantale associativity: pass") !=
        std::string::npos);
  CHECK(one.out.find("check quantale unit: pass") != std::string::npos);
  CHECK(one.out.find("check quantale distributivity: pass") !=
        std::string::npos);

  CliResult all = cli({"quantale", mo2});
  CHECK(all.code == 0);
  CHECK(all.out.find("generators: 4") != std::string::npos);
}

TEST_CASE("triangle checks the functor laws end to end") {
  CliResult r = cli({"triangle", catalog_file("mo2")});
  CHECK(r.code == 0);
  CHECK(r.out.find("check identity set map: pass") != std::string::npos);
  CHECK(r.out.find("check F(identity) = identity: pass") != std::string::npos);
  CHECK(r.out.find("check triangle (identity): pass") != std::string::npos);
  CHECK(r.out.find("check triangle (b = b): pass") != std::string::npos);
  CHECK(r.out.find("check functor composition: pass") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("search-nonfaithful prints what it found and never fails the run") {
  std::string mo2 = catalog_file("mo2");
  CliResult hit = cli({"search-nonfaithful", mo2});
  CHECK(hit.code == 0);
  CHECK(hit.out.find("candidate_space: 65536") != std::string::npos);
  CHECK(hit.out.find("truncated: no") != std::string::npos);
  CHECK(hit.out.find(
            "witness: two distinct validated ideal maps share a G-image") !=
        std::string::npos);
  CHECK(hit.out.find("shared G table:") != std::string::npos);

  CliResult none = cli({"search-nonfaithful", catalog_file("boolean2")});
  CHECK(none.code == 0);
  CHECK(none.out.find("validated_endomorphisms: 16") != std::string::npos);
  CHECK(none.out.find("collision_pairs: 0") != std::string::npos);
  CHECK(none.out.find("witness: none") != std::string::npos);

  CliResult cut = cli({"search-nonfaithful", mo2, "--bound", "10"});
  CHECK(cut.code == 0);
  CHECK(cut.out.find("examined: 10") != std::string::npos);
  CHECK(cut.out.find("truncated: yes") != std::string::npos);
}

TEST_CASE("dot renders the Hasse diagram with orthocomplement edges") {
  std::string mo2 = catalog_file("mo2");
  CliResult r = cli({"dot", mo2});
  CHECK(r.code == 0);
  CHECK(r.out.find("digraph \"mo2\"") != std::string::npos);
  CHECK(r.out.find("rankdir=BT;") != std::string::npos);
  CHECK(r.out.find("n0 -> n1;") != std::string::npos);
  CHECK(r.out.find("style=dashed") != std::string::npos);

  std::string out_path = (work_dir() / "mo2.dot").string();
  CliResult to_file = cli({"dot", mo2, "-o", out_path});
  CHECK(to_file.code == 0);
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == r.out);
}

TEST_CASE("repeated runs are byte-identical") {
  std::string mo2 = catalog_file("mo2");
  for (const char* cmd : {"report", "hull", "dot", "search-nonfaithful"}) {
    CAPTURE(cmd);
    CliResult a = cli({cmd, mo2});
    CliResult b = cli({cmd, mo2});
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("json mode emits one machine-readable object") {
  std::string mo2 = catalog_file("mo2");
  CliResult r = cli({"--json", "report", mo2});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "report");
  CHECK(j["name"] == "mo2");
  CHECK(j["atoms"] == nlohmann::json::array({"a", "a'", "b", "b'"}));
  REQUIRE(j["checks"].is_array());
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c["pass"].is_boolean());
  }

  // Flags can follow the subcommand too.
  CliResult tail = cli({"report", mo2, "--json"});
  CHECK(tail.out == r.out);

  CliResult o6 = cli({"--json", "report", catalog_file("o6")});
  auto jo = nlohmann::json::parse(o6.out);
  bool found = false;
  for (const auto& c : jo["checks"])
    if (c["name"] == "orthomodularity") {
      found = true;
      CHECK(c["pass"] == false);
      CHECK(c["witness"] == nlohmann::json::array({"a", "b"}));
      CHECK(c.contains("detail"));
    }
  CHECK(found);

  CliResult hull = cli({"--json", "hull", mo2, "--list-ideals"});
  auto jh = nlohmann::json::parse(hull.out);
  CHECK(jh["ideals"] == 16);
  CHECK(jh["ideal_members"][0] == nlohmann::json::array({"0"}));

  CliResult diag = cli({"--json", "diagrams", mo2});
  auto jd = nlohmann::json::parse(diag.out);
  CHECK(jd["checks"].size() == 18);
}

TEST_CASE("usage errors and help") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"validate"}).code == 2);  // missing file argument

  CliResult help = cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("Usage") != std::string::npos);
  CHECK(help.out.find("validate") != std::string::npos);
}
