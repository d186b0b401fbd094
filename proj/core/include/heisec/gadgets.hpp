// Combinatorial gadget families and their exhaustive verifiers:
// super-increasing sequences, unique-product element families in H3/<z^e>,
// the H5 vector family, and convex-polygon support-vector families.

#ifndef HEISEC_GADGETS_HPP
#define HEISEC_GADGETS_HPP

#include <vector>

#include "heisec/certify.hpp"
#include "heisec/group.hpp"
#include "heisec/words.hpp"

namespace heisec {

/// Positive integers with b_1 >= 1 and b_i > i*b_{i-1}: the vectors (1, b_i)
/// then admit only the all-ones recombination of their sum.
struct SuperIncreasingSequence {
  std::vector<Int> b;

  int size() const { return static_cast<int>(b.size()); }
};

/// Minimal canonical choice b_1 = 1, b_i = i*b_{i-1} + 1.
SuperIncreasingSequence make_superincreasing(int m);

/// Elements h_i = x^{b_i} y of H3 whose ordered product has a unique value
/// among all positive words in them, preserved in H3/<z^e>.
struct UniqueProductGadget {
  int n = 0;
  SuperIncreasingSequence b;
  Int e = 1;  // smallest modulus beating every permutation defect
  std::vector<HeisenbergElement> h;
  QuotientHeisenbergElement v;  // image of h_1 ... h_n
};

UniqueProductGadget make_unique_product_gadget(int n);

/// Max permutation defect sum_{i<j} (b_j - b_i); e exceeds it by one.
Int unique_product_defect_bound(const SuperIncreasingSequence& b);

/// z-defect of the permuted product: value(h_{order[0]} ... ) = v * z^defect.
Int unique_product_defect(const UniqueProductGadget& g, const std::vector<int>& order);

/// Plane vectors u_1..u_n, v_1..v_{n-1} with sign-split inner products
/// (<u_i,v_j> < 0 iff i <= j), unique recombination of sum(v_j), and
/// sum(u_i) = 0.
struct H5VectorGadget {
  int n = 0;
  std::vector<IntVec> u;
  std::vector<IntVec> v;
  std::vector<Int> chain_a;  // interleaved chain a_1 < b_1 < a_2 < ... < a_n
  std::vector<Int> chain_b;  // (empty for the bespoke n = 2 case)
  std::vector<std::vector<Int>> e_matrix;  // e[i][j] = <u_i, v_j>
};

H5VectorGadget make_h5_vectors(int n);

/// Integer convex-polygon vertices u_k (zero sum) with support directions v_k
/// such that <x, v_k> over the polygon peaks exactly at x = u_k, and
/// <u_i, v_i> > <u_i, v_j> for j != i (the conjugation-law margin).
struct PolygonGadget {
  int n = 0;
  Int radius = 0;  // scale at which the rounded circle construction verified
  std::vector<IntVec> u;
  std::vector<IntVec> v;
};

PolygonGadget make_polygon_gadget(int n);

namespace detail {
/// Same construction admitting the degenerate two-vertex case.
PolygonGadget make_polygon_vectors(int n);
}  // namespace detail

/// Heisenberg H5 elements derived from an H5VectorGadget:
/// uu_i = x^{u_i} z^{sum_{j<i} e_ij}, vv_j = y^{v_j}, h = vv_1 ... vv_{n-1}.
struct MainGadgetElements {
  H5VectorGadget gadget;
  std::vector<HeisenbergElement> uu;
  std::vector<HeisenbergElement> vv;
  HeisenbergElement h;
};

MainGadgetElements make_main_gadget_elements(const H5VectorGadget& g);

enum class UniqueProductMode { Permutations, AllWords };

// Exhaustive verifiers. Every "verified" certificate means the full stated
// space was enumerated; bounds too small to decide yield "inconclusive".
GadgetCertificate verify_gadget(const SuperIncreasingSequence& g, const EnumerationBudget& budget,
                                int workers = 1);
GadgetCertificate verify_gadget(const UniqueProductGadget& g, UniqueProductMode mode,
                                const EnumerationBudget& budget);
GadgetCertificate verify_gadget(const H5VectorGadget& g, const EnumerationBudget& budget);
GadgetCertificate verify_gadget(const PolygonGadget& g);
GadgetCertificate verify_gadget(const MainGadgetElements& g, const EnumerationBudget& budget);

}  // namespace heisec

#endif
