#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oql {

// Element sets are bitmasks over element indices. Everything in this library
// is built for small finite lattices, so carriers are capped at 64 elements.
using Mask = std::uint64_t;

inline constexpr int kMaxElements = 64;

inline Mask bit(int i) { return Mask{1} << i; }
inline bool has(Mask m, int i) { return (m >> i) & Mask{1}; }
inline int popcount(Mask m) { return std::popcount(m); }

inline Mask universe_mask(int n) {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

template <typename F>
inline void for_each_bit(Mask m, F&& f) {
  while (m) {
    f(std::countr_zero(m));
    m &= m - 1;
  }
}

/// Malformed input text or documents (bad JSON, dangling labels, ...).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structural law needed for construction fails: the data is not a lattice,
/// an orthocomplement axiom is violated, a precondition of an operation does
/// not hold. The message names the offending elements.
struct LatticeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An operation would exceed a configured size guard.
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Outcome of a law check. A failing verdict carries the offending elements
/// (indices into the carrier the check ran on) plus a rendered explanation;
/// re-evaluating the named law on the witness reproduces the violation.
struct Verdict {
  bool pass = true;
  std::string law;
  std::vector<int> witness;
  std::string detail;

  static Verdict ok(std::string law_name) {
    return Verdict{true, std::move(law_name), {}, {}};
  }
  static Verdict fail(std::string law_name, std::vector<int> w, std::string why) {
    return Verdict{false, std::move(law_name), std::move(w), std::move(why)};
  }
  explicit operator bool() const { return pass; }
};

/// Size guards for the operations that enumerate subsets or candidate maps.
struct Limits {
  int max_subset_elements = 12;            // gates 2^n subset scans
  std::size_t max_quantale_closure = 4096; // quantale closure fixpoint bound
  std::uint64_t max_search_candidates = 4'000'000; // morphism enumerations
};

}  // namespace oql
