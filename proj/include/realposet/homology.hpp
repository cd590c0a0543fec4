#pragma once

#include <map>
#include <string>
#include <vector>

#include "realposet/functor.hpp"

namespace rp {

// Colimit of a functor restricted to a full subposet (given as a bitmask),
// presented as the cokernel of the difference map over the induced covers.
// proj holds the cocone components; stacked is their horizontal stack over
// the members in ascending element order.
struct Colimit {
  int dim = 0;
  std::vector<Elem> members;        // ascending
  std::vector<int> offsets;         // block offset per member inside stacked
  std::map<Elem, FpMatrix> proj;    // cocone component per member
  FpMatrix stacked;                 // dim x (sum of member dimensions)
};

// reduce_to_max: when the mask has a greatest member t, present the colimit
// on G(t) directly with proj_x the structure maps into t.
Colimit colimit(const VectFunctor& G, const BitRow& mask, bool reduce_to_max = false);

// Unique factorisation of a cocone through the colimit: the map
// colim -> W with factor * proj_x = cocone[x] for every member.
FpMatrix colimit_factor(const Colimit& c, const std::map<Elem, FpMatrix>& cocone, int w_dim,
                        std::int64_t p);

// The induced map colim(A) -> colim(B) for nested masks A subset of B.
FpMatrix colimit_map(const Colimit& A, const Colimit& B, std::int64_t p);

// Strictly-below mask {y : y < a}.
BitRow lessthan_mask(const Poset& P, Elem a);

// Cofinal subset of {y : y < a}: all products of subsets of lower covers of
// a that admit a common ancestor. Each such product must exist
// (NotSemilattice otherwise).
BitRow cofinal_mask(const Poset& P, Elem a, const SearchBudget& budget = {});

// Colimit of G over {y : y < a}, optionally over the cofinal subset instead.
Colimit colimit_below(const VectFunctor& G, Elem a, bool use_cofinal,
                      const SearchBudget& budget = {});

// Sum of the images of the structure maps from the lower covers.
std::vector<FpMatrix> radical_bases(const VectFunctor& G);
std::vector<int> radical_dims(const VectFunctor& G);
// Dimensions of G / rad G; for a free functor this recovers its generator
// multiplicities.
std::vector<int> radical_quotient_dims(const VectFunctor& G);

// Free functor surjecting onto G with generator complements chosen
// deterministically; the kernel meets every value inside the radical.
struct MinimalCover {
  FreeFunctor cover;
  std::vector<FpMatrix> pi;  // component per element, dims G(a) x cover(a)
};
MinimalCover minimal_cover(const VectFunctor& G);

// Pointwise kernel of a natural transformation, with its inclusion.
struct Subfunctor {
  VectFunctor K;
  std::vector<FpMatrix> incl;  // component per element, dims F(a) x K(a)
};
Subfunctor kernel_functor(const VectFunctor& F, const VectFunctor& G,
                          const std::vector<FpMatrix>& phi);

// Minimal free resolution out to the requested homological degree.
// maps[0] is the augmentation onto G; maps[i] for i >= 1 is the differential
// from steps[i] to steps[i-1]. complete is true when the final kernel is 0.
struct Resolution {
  std::vector<FreeFunctor> steps;
  std::vector<std::vector<FpMatrix>> maps;
  std::vector<BettiDiagram> betti;  // betti[i] = generators of steps[i]
  bool complete = false;
};
Resolution minimal_resolution(const VectFunctor& G, int length);

BettiDiagram betti_resolution(const VectFunctor& G, int i);

// Chain complex attached to an element: degree 0 is G(a); degree k lists a
// colimit of G below the meet of each k-subset of lower covers of a that
// admits a common ancestor. differential[k] maps degree k+1 to degree k.
struct KoszulComplex {
  Elem a = -1;
  std::vector<int> dims;                         // per degree
  std::vector<FpMatrix> differential;            // differential[k]: deg k+1 -> deg k
  std::vector<std::vector<std::vector<int>>> summands;  // per degree >= 1: parent-index subsets
  std::vector<std::vector<int>> summand_dims;    // aligned with summands
};
KoszulComplex koszul_complex(const VectFunctor& G, Elem a, const SearchBudget& budget = {});

std::vector<int> koszul_homology_dims(const KoszulComplex& K);

// Every non-empty subset of the lower covers of a with a common ancestor has
// a product.
bool parent_products_exist(const Poset& P, Elem a, const SearchBudget& budget = {});

// Generator multiplicity in homological degree i at a, read off the complex
// above. Certified for i <= 2, and for all i when parent products exist at
// a; otherwise throws KoszulValidityUnknown.
int betti_koszul(const VectFunctor& G, Elem a, int i, const SearchBudget& budget = {});

// Degreewise comparison of the complexes of a short exact sequence
// F -> G -> H at one element. Throws NotExact unless the maps form a
// pointwise short exact sequence.
struct ExactnessReport {
  std::vector<bool> degree_additive;  // dim K(G) == dim K(F) + dim K(H) per degree
  std::vector<int> h_sub, h_mid, h_quot;
  bool euler_consistent = false;
};
ExactnessReport exactness_report(const VectFunctor& F, const VectFunctor& G,
                                 const VectFunctor& H, const std::vector<FpMatrix>& phi,
                                 const std::vector<FpMatrix>& psi, Elem a,
                                 const SearchBudget& budget = {});

}  // namespace rp
