#include "oql/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace oql {

namespace {

using ordered_json = nlohmann::ordered_json;

int label_index(const std::map<std::string, int>& index,
                const std::string& label, const char* where) {
  auto it = index.find(label);
  if (it == index.end())
    throw ParseError(std::string(where) + " references undeclared label '" +
                     label + "'");
  return it->second;
}

}  // namespace

LatticeDocument parse_lattice_document(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("lattice document is not valid JSON: ") +
                     e.what());
  }
  if (!j.is_object()) throw ParseError("lattice document must be an object");

  LatticeDocument doc;
  if (!j.contains("name") || !j["name"].is_string())
    throw ParseError("lattice document needs a string field 'name'");
  doc.name = j["name"].get<std::string>();

  if (!j.contains("elements") || !j["elements"].is_array())
    throw ParseError("lattice document needs an array field 'elements'");
  std::set<std::string> seen;
  for (const auto& el : j["elements"]) {
    if (!el.is_string()) throw ParseError("element labels must be strings");
    std::string label = el.get<std::string>();
    if (label.empty()) throw ParseError("element labels must be nonempty");
    if (!seen.insert(label).second)
      throw ParseError("duplicate element label '" + label + "'");
    doc.labels.push_back(std::move(label));
  }
  if (doc.labels.empty()) throw ParseError("lattice document has no elements");

  if (!j.contains("covers") || !j["covers"].is_array())
    throw ParseError("lattice document needs an array field 'covers'");
  for (const auto& pair : j["covers"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
        !pair[1].is_string())
      throw ParseError("cover entries must be [lower, upper] label pairs");
    std::string lo = pair[0].get<std::string>();
    std::string hi = pair[1].get<std::string>();
    if (!seen.count(lo))
      throw ParseError("cover pair references undeclared label '" + lo + "'");
    if (!seen.count(hi))
      throw ParseError("cover pair references undeclared label '" + hi + "'");
    doc.covers.emplace_back(std::move(lo), std::move(hi));
  }

  if (j.contains("ortho")) {
    if (!j["ortho"].is_object())
      throw ParseError("field 'ortho' must map labels to labels");
    std::map<std::string, std::string> table;
    for (const auto& [key, value] : j["ortho"].items()) {
      if (!value.is_string())
        throw ParseError("field 'ortho' must map labels to labels");
      if (!seen.count(key))
        throw ParseError("ortho table references undeclared label '" + key +
                         "'");
      std::string v = value.get<std::string>();
      if (!seen.count(v))
        throw ParseError("ortho table references undeclared label '" + v +
                         "'");
      table[key] = std::move(v);
    }
    if (table.size() != doc.labels.size())
      throw ParseError("ortho table must cover every element");
    for (const auto& [key, value] : table) {
      auto back = table.find(value);
      if (back == table.end() || back->second != key)
        throw ParseError("ortho table is not involutive at '" + key + "'");
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& label : doc.labels) pairs.emplace_back(label, table[label]);
    doc.ortho = std::move(pairs);
  }
  return doc;
}

LatticeDocument read_lattice_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lattice_document(buf.str());
}

FiniteLattice build_lattice(const LatticeDocument& doc) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < doc.labels.size(); ++i)
    index[doc.labels[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> covers;
  for (const auto& [lo, hi] : doc.covers)
    covers.emplace_back(label_index(index, lo, "cover pair"),
                        label_index(index, hi, "cover pair"));
  return build_from_covers(doc.name, doc.labels, covers);
}

std::optional<std::vector<int>> ortho_table(const LatticeDocument& doc,
                                            const FiniteLattice& L) {
  if (!doc.ortho) return std::nullopt;
  std::map<std::string, int> index;
  for (int i = 0; i < L.n; ++i) index[L.labels[i]] = i;
  std::vector<int> ortho(L.n, -1);
  for (const auto& [from, to] : *doc.ortho)
    ortho[label_index(index, from, "ortho table")] =
        label_index(index, to, "ortho table");
  return ortho;
}

std::string serialize_lattice(const FiniteLattice& L,
                              const std::optional<std::vector<int>>& ortho) {
  ordered_json j;
  j["name"] = L.name;
  j["elements"] = ordered_json::array();
  for (const auto& label : L.labels) j["elements"].push_back(label);
  j["covers"] = ordered_json::array();
  for (int x = 0; x < L.n; ++x)
    for (int y : L.upper_covers(x))
      j["covers"].push_back(ordered_json::array({L.labels[x], L.labels[y]}));
  if (ortho) {
    ordered_json table = ordered_json::object();
    for (int x = 0; x < L.n; ++x) table[L.labels[x]] = L.labels[(*ortho)[x]];
    j["ortho"] = std::move(table);
  }
  return j.dump(2) + "\n";
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const FiniteLattice& L,
                   const std::optional<std::vector<int>>& ortho) {
  std::ostringstream out;
  out << "digraph " << dot_quote(L.name) << " {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=plaintext];\n";
  out << "  edge [arrowhead=none];\n";
  for (int x = 0; x < L.n; ++x)
    out << "  n" << x << " [label=" << dot_quote(L.labels[x]) << "];\n";
  out << "  { rank=source; n" << L.bottom << "; }\n";
  out << "  { rank=sink; n" << L.top << "; }\n";
  for (int x = 0; x < L.n; ++x)
    for (int y : L.upper_covers(x)) out << "  n" << x << " -> n" << y << ";\n";
  if (ortho) {
    out << "  edge [style=dashed, constraint=false];\n";
    for (int x = 0; x < L.n; ++x)
      if (x < (*ortho)[x]) out << "  n" << x << " -> n" << (*ortho)[x] << ";\n";
  }
  out << "}\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

}  // namespace oql
