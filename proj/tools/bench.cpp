// Timing harness for the subset-exhaustive kernels: each one runs in its
// serial reference form and its OpenMP form on the same input, results are
// compared, and both timings are printed.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "oql/catalog.hpp"
#include "oql/dynamics.hpp"
#include "oql/hull.hpp"
#include "oql/lattice.hpp"
#include "oql/quantaloid.hpp"

using namespace oql;

namespace {

double seconds(std::function<void()> f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

int failures = 0;

void row(const char* name, const std::string& input, double serial, double omp,
         bool agree) {
  std::printf("%-28s %-16s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n",
              name, input.c_str(), serial, omp, omp > 0 ? serial / omp : 0.0,
              agree ? "agree" : "MISMATCH");
  if (!agree) ++failures;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads: %d\n\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both columns run serially.\n\n");
#endif

  Limits lim;
  lim.max_subset_elements = 18;
  lim.max_search_candidates = 200'000'000;

  {
    CatalogEntry e = make_boolean(4);
    std::optional<std::pair<int, Mask>> a, b;
    double ts = seconds([&] { a = frame_law_scan_serial(e.lattice, lim); });
    double tp = seconds([&] { b = frame_law_scan_omp(e.lattice, lim); });
    row("frame law scan", e.name, ts, tp, a == b);
  }
  {
    CatalogEntry e = make_mo(4);
    std::optional<Mask> a, b;
    double ts = seconds([&] { a = closure_agreement_scan_serial(e.lattice, lim); });
    double tp = seconds([&] { b = closure_agreement_scan_omp(e.lattice, lim); });
    row("closure agreement scan", e.name, ts, tp, a == b);
  }
  {
    CatalogEntry e = make_product(make_mo(2), make_chain(2));
    std::vector<Mask> a, b;
    double ts = seconds([&] { a = enumerate_closed_ideals_serial(e.lattice, lim); });
    double tp = seconds([&] { b = enumerate_closed_ideals_omp(e.lattice, lim); });
    row("ideal enumeration", e.name, ts, tp, a == b);
  }
  {
    CatalogEntry e = make_mo(4);
    OrthoLattice O = as_ortho(e);
    MeasurementSetup m = make_measurement(O, 1);
    std::vector<Mask> images(O.base.n);
    for (int x = 0; x < O.base.n; ++x) images[x] = outcome_pair(m, x);
    std::optional<Mask> a, b;
    double ts = seconds(
        [&] { a = hull_factorization_scan_serial(O.base, O.base, images, lim); });
    double tp = seconds(
        [&] { b = hull_factorization_scan_omp(O.base, O.base, images, lim); });
    row("hull factorization scan", e.name, ts, tp, a == b);
  }
  {
    CatalogEntry e = make_mo(2);
    std::vector<SupMorphism> a, b;
    double ts =
        seconds([&] { a = enumerate_sup_morphisms_serial(e.lattice, e.lattice, lim); });
    double tp =
        seconds([&] { b = enumerate_sup_morphisms_omp(e.lattice, e.lattice, lim); });
    bool agree = a.size() == b.size();
    for (std::size_t i = 0; agree && i < a.size(); ++i)
      agree = a[i].table == b[i].table;
    row("sup-morphism enumeration", e.name, ts, tp, agree);
  }
  {
    // A larger morphism space: mo2 * chain2 has five irreducibles.
    CatalogEntry e = make_product(make_mo(2), make_chain(2));
    std::vector<SupMorphism> a, b;
    double ts =
        seconds([&] { a = enumerate_sup_morphisms_serial(e.lattice, e.lattice, lim); });
    double tp =
        seconds([&] { b = enumerate_sup_morphisms_omp(e.lattice, e.lattice, lim); });
    bool agree = a.size() == b.size();
    for (std::size_t i = 0; agree && i < a.size(); ++i)
      agree = a[i].table == b[i].table;
    row("sup-morphism enumeration", e.name, ts, tp, agree);
  }

  if (failures) {
    std::printf("\n%d kernel pair(s) disagreed\n", failures);
    return 1;
  }
  std::printf("\nall kernel pairs agree\n");
  return 0;
}
