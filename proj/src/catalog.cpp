#include "oql/catalog.hpp"

#include <algorithm>
#include <cctype>

namespace oql {

namespace {

const char kAtomLetters[] = {'p', 'q', 'r', 's'};

std::string boolean_label(int subset, int n) {
  if (subset == 0) return "0";
  std::string s;
  for (int i = 0; i < n; ++i)
    if (subset & (1 << i)) s += kAtomLetters[i];
  return s;
}

}  // namespace

CatalogEntry make_boolean(int n) {
  if (n < 1 || n > 4)
    throw ParseError("boolean expects a parameter between 1 and 4");
  const int size = 1 << n;
  std::vector<std::string> labels(size);
  for (int i = 0; i < size; ++i) labels[i] = boolean_label(i, n);
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < size; ++i)
    for (int b = 0; b < n; ++b)
      if (!(i & (1 << b))) covers.emplace_back(i, i | (1 << b));
  CatalogEntry e;
  e.name = "boolean" + std::to_string(n);
  e.lattice = build_from_covers(e.name, std::move(labels), covers);
  std::vector<int> ortho(size);
  for (int i = 0; i < size; ++i) ortho[i] = (size - 1) & ~i;
  e.ortho = std::move(ortho);
  e.orthomodular = true;
  e.atomistic = true;
  e.covering = true;
  e.frame = true;
  e.modular = true;
  e.faithful = (n <= 1);
  return e;
}

CatalogEntry make_chain(int n) {
  if (n < 2 || n > 8)
    throw ParseError("chain expects a parameter between 2 and 8");
  std::vector<std::string> labels(n);
  labels[0] = "0";
  labels[n - 1] = "1";
  for (int i = 1; i + 1 < n; ++i) labels[i] = "c" + std::to_string(i);
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  CatalogEntry e;
  e.name = "chain" + std::to_string(n);
  e.lattice = build_from_covers(e.name, std::move(labels), covers);
  if (n == 2) {
    e.ortho = std::vector<int>{1, 0};
    e.orthomodular = true;
  }
  e.atomistic = (n == 2);
  e.covering = true;
  e.frame = true;
  e.modular = true;
  e.faithful = true;  // a chain has one atom; the predicate is vacuous
  return e;
}

CatalogEntry make_mo(int n) {
  if (n < 1 || n > 4)
    throw ParseError("mo expects a parameter between 1 and 4");
  const int size = 2 * n + 2;
  std::vector<std::string> labels(size);
  labels[0] = "0";
  labels[size - 1] = "1";
  for (int i = 0; i < n; ++i) {
    labels[1 + 2 * i] = std::string(1, static_cast<char>('a' + i));
    labels[2 + 2 * i] = labels[1 + 2 * i] + "'";
  }
  std::vector<std::pair<int, int>> covers;
  for (int x = 1; x + 1 < size; ++x) {
    covers.emplace_back(0, x);
    covers.emplace_back(x, size - 1);
  }
  CatalogEntry e;
  e.name = "mo" + std::to_string(n);
  e.lattice = build_from_covers(e.name, std::move(labels), covers);
  std::vector<int> ortho(size);
  ortho[0] = size - 1;
  ortho[size - 1] = 0;
  for (int i = 0; i < n; ++i) {
    ortho[1 + 2 * i] = 2 + 2 * i;
    ortho[2 + 2 * i] = 1 + 2 * i;
  }
  e.ortho = std::move(ortho);
  e.orthomodular = true;
  e.atomistic = true;
  e.covering = true;
  e.frame = (n == 1);
  e.modular = true;
  e.faithful = (n >= 2);
  return e;
}

CatalogEntry make_o6() {
  // 0 < a < b < 1 and 0 < b' < a' < 1: the hexagon.
  std::vector<std::string> labels{"0", "a", "b", "b'", "a'", "1"};
  std::vector<std::pair<int, int>> covers{{0, 1}, {1, 2}, {2, 5},
                                          {0, 3}, {3, 4}, {4, 5}};
  CatalogEntry e;
  e.name = "o6";
  e.lattice = build_from_covers(e.name, std::move(labels), covers);
  e.ortho = std::vector<int>{5, 4, 3, 2, 1, 0};
  e.orthomodular = false;
  e.atomistic = false;
  e.covering = false;
  e.frame = false;
  e.modular = false;
  e.faithful = false;
  return e;
}

CatalogEntry make_m3() {
  std::vector<std::string> labels{"0", "x", "y", "z", "1"};
  std::vector<std::pair<int, int>> covers{{0, 1}, {0, 2}, {0, 3},
                                          {1, 4}, {2, 4}, {3, 4}};
  CatalogEntry e;
  e.name = "m3";
  e.lattice = build_from_covers(e.name, std::move(labels), covers);
  e.atomistic = true;
  e.covering = true;
  e.frame = false;
  e.modular = true;
  e.faithful = true;
  return e;
}

CatalogEntry make_n5() {
  // 0 < a < 1 on one side, 0 < b < c < 1 on the other.
  std::vector<std::string> labels{"0", "a", "b", "c", "1"};
  std::vector<std::pair<int, int>> covers{{0, 1}, {1, 4}, {0, 2}, {2, 3}, {3, 4}};
  CatalogEntry e;
  e.name = "n5";
  e.lattice = build_from_covers(e.name, std::move(labels), covers);
  e.atomistic = false;
  e.covering = false;
  e.frame = false;
  e.modular = false;
  e.faithful = false;
  return e;
}

CatalogEntry make_product(const CatalogEntry& a, const CatalogEntry& b) {
  const auto& A = a.lattice;
  const auto& B = b.lattice;
  const int n = A.n * B.n;
  if (n > kMaxElements)
    throw ParseError("product of " + a.name + " and " + b.name +
                     " exceeds 64 elements");
  std::vector<std::string> labels(n);
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  auto id = [&](int x, int y) { return x * B.n + y; };
  for (int x = 0; x < A.n; ++x)
    for (int y = 0; y < B.n; ++y) {
      labels[id(x, y)] = "(" + A.labels[x] + "," + B.labels[y] + ")";
      for (int u = 0; u < A.n; ++u)
        for (int v = 0; v < B.n; ++v)
          leq[id(x, y)][id(u, v)] = A.leq(x, u) && B.leq(y, v);
    }
  CatalogEntry e;
  e.name = a.name + "*" + b.name;
  e.lattice = build_from_leq(e.name, std::move(labels), leq);
  if (a.ortho && b.ortho) {
    std::vector<int> ortho(n);
    for (int x = 0; x < A.n; ++x)
      for (int y = 0; y < B.n; ++y)
        ortho[id(x, y)] = id((*a.ortho)[x], (*b.ortho)[y]);
    e.ortho = std::move(ortho);
  }
  auto both = [](std::optional<bool> u, std::optional<bool> v) {
    if (!u || !v) return std::optional<bool>{};
    return std::optional<bool>{*u && *v};
  };
  if (e.ortho) e.orthomodular = both(a.orthomodular, b.orthomodular);
  e.atomistic = both(a.atomistic, b.atomistic);
  e.covering = both(a.covering, b.covering);
  e.frame = both(a.frame, b.frame);
  e.modular = both(a.modular, b.modular);
  e.faithful = std::nullopt;  // not determined by the factors
  return e;
}

namespace {

int parse_param(const std::string& text) {
  if (text.empty() || text.size() > 2 ||
      !std::all_of(text.begin(), text.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      }))
    throw ParseError("bad catalog parameter '" + text + "'");
  return std::stoi(text);
}

// Split a compact name like "mo2" into ("mo", 2); names without a parameter
// come back with -1.
std::pair<std::string, int> split_compact(const std::string& word) {
  std::size_t i = word.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(word[i - 1]))) --i;
  if (i == word.size()) return {word, -1};
  return {word.substr(0, i), parse_param(word.substr(i))};
}

CatalogEntry make_parametric(const std::string& base, int param) {
  if (base == "boolean") return make_boolean(param);
  if (base == "chain") return make_chain(param);
  if (base == "mo") return make_mo(param);
  throw ParseError("unknown catalog name '" + base + "'");
}

CatalogEntry make_compact(const std::string& word) {
  if (word == "o6") return make_o6();
  if (word == "m3") return make_m3();
  if (word == "n5") return make_n5();
  auto [base, param] = split_compact(word);
  if (param < 0)
    throw ParseError("catalog name '" + word + "' needs a parameter");
  return make_parametric(base, param);
}

}  // namespace

CatalogEntry make_by_name(const std::vector<std::string>& words) {
  if (words.empty()) throw ParseError("empty catalog name");
  if (words[0] == "product") {
    if (words.size() != 3)
      throw ParseError("product expects two compact catalog names");
    return make_product(make_compact(words[1]), make_compact(words[2]));
  }
  if (words.size() == 1) return make_compact(words[0]);
  if (words.size() == 2) {
    if (words[0] == "o6" || words[0] == "m3" || words[0] == "n5")
      throw ParseError("catalog name '" + words[0] + "' takes no parameter");
    return make_parametric(words[0], parse_param(words[1]));
  }
  throw ParseError("too many catalog parameters");
}

std::vector<CatalogEntry> standard_catalog() {
  std::vector<CatalogEntry> out;
  for (int n = 1; n <= 3; ++n) out.push_back(make_boolean(n));
  for (int n = 2; n <= 5; ++n) out.push_back(make_chain(n));
  for (int n = 1; n <= 3; ++n) out.push_back(make_mo(n));
  out.push_back(make_o6());
  out.push_back(make_m3());
  out.push_back(make_n5());
  return out;
}

OrthoLattice as_ortho(const CatalogEntry& e) {
  if (!e.ortho)
    throw LatticeError("'" + e.name + "' carries no orthocomplement");
  return attach_ortho(e.lattice, *e.ortho);
}

}  // namespace oql
