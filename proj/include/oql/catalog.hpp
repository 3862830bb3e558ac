#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oql/lattice.hpp"

namespace oql {

/// A builtin test lattice together with the structure flags it is expected
/// to have. A flag is empty when the property does not apply (orthomodularity
/// without an orthocomplement, faithfulness of a product).
struct CatalogEntry {
  std::string name;
  FiniteLattice lattice;
  std::optional<std::vector<int>> ortho;

  std::optional<bool> orthomodular;
  std::optional<bool> atomistic;
  std::optional<bool> covering;
  std::optional<bool> frame;
  std::optional<bool> modular;
  std::optional<bool> faithful;  // superposition predicate
};

/// Generators. Conventions:
///   boolean n (1..4): subsets of n atoms, complement as orthocomplement
///   chain n (2..8):   a single chain; chain 2 carries 0 <-> 1
///   mo n (1..4):      0, 1 and n orthocomplementary atom pairs
///   o6:               the benzene ring ortholattice
///   m3, n5:           the diamond and the pentagon, no orthocomplement
CatalogEntry make_boolean(int n);
CatalogEntry make_chain(int n);
CatalogEntry make_mo(int n);
CatalogEntry make_o6();
CatalogEntry make_m3();
CatalogEntry make_n5();

/// Componentwise product of two entries; orthocomplement present when both
/// factors carry one. Expected flags combine conjunctively where defined.
CatalogEntry make_product(const CatalogEntry& a, const CatalogEntry& b);

/// Parse a compact catalog name: "mo2", "boolean3", "chain4", "o6", "m3",
/// "n5", or "product" followed by two compact names in `rest`. Also accepts
/// the split form ("mo", "2"). Throws ParseError for unknown names or
/// out-of-range parameters.
CatalogEntry make_by_name(const std::vector<std::string>& words);

/// Every entry the acceptance matrix covers, in a fixed order.
std::vector<CatalogEntry> standard_catalog();

/// The entry's ortholattice view; throws LatticeError when it carries none.
OrthoLattice as_ortho(const CatalogEntry& e);

}  // namespace oql
