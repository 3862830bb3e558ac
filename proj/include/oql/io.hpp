#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oql/lattice.hpp"

namespace oql {

/// The on-disk form of a lattice: a JSON object with a name, element labels,
/// Hasse cover pairs [lower, upper], and an optional orthocomplement table.
struct LatticeDocument {
  std::string name;
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  std::optional<std::vector<std::pair<std::string, std::string>>> ortho;
};

/// Parse the JSON text of a lattice document. Throws ParseError on malformed
/// JSON, duplicate labels, dangling references, or a non-involutive ortho
/// table. (Order axioms are checked later, at build time.)
LatticeDocument parse_lattice_document(const std::string& text);

LatticeDocument read_lattice_file(const std::string& path);

/// Build the lattice (and orthocomplement, when present) from a document.
FiniteLattice build_lattice(const LatticeDocument& doc);
std::optional<std::vector<int>> ortho_table(const LatticeDocument& doc,
                                            const FiniteLattice& L);

/// Serialize in the same format, covers derived from the Hasse diagram,
/// element order preserved. Output is deterministic.
std::string serialize_lattice(const FiniteLattice& L,
                              const std::optional<std::vector<int>>& ortho);

/// DOT rendering of the Hasse diagram: bottom ranked lowest, one edge per
/// cover, orthocomplement pairs joined by dashed edges.
std::string to_dot(const FiniteLattice& L,
                   const std::optional<std::vector<int>>& ortho);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace oql
