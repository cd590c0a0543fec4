#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "realposet/fpmatrix.hpp"
#include "realposet/poset.hpp"

namespace rp {

// Functor from a finite poset to finite-dimensional vector spaces over a
// prime field: a dimension per element and a matrix per cover pair.
struct VectFunctor {
  const Poset* P = nullptr;
  std::int64_t p = 2;
  std::vector<int> dims;
  std::map<std::pair<Elem, Elem>, FpMatrix> cover_maps;  // key (lower, upper)

  const FpMatrix& cover_map(Elem lo, Elem hi) const;

  // Structure map for x <= y along the canonical cover path (always through
  // the smallest eligible parent). validate_functor certifies that every
  // path gives the same matrix.
  FpMatrix map(Elem x, Elem y) const;
};

// Shape checks plus construction; the square check is validate_functor.
VectFunctor make_functor(const Poset& P, std::int64_t p, std::vector<int> dims,
                         std::map<std::pair<Elem, Elem>, FpMatrix> cover_maps);

// Checks every cover pair has a map of the right shape and that all cover
// paths between comparable elements compose to the same matrix. Throws
// NotFunctorial naming the offending square.
void validate_functor(const VectFunctor& F);

// Moves a functor onto another poset object with the same element ids and
// covers, translating indices by id. Throws PreconditionFailed when the two
// posets do not match.
VectFunctor rebind_functor(const VectFunctor& F, const Poset& Q);

// Natural transformation between functors on the same poset.
struct Nat {
  const VectFunctor* F = nullptr;  // source
  const VectFunctor* G = nullptr;  // target
  std::vector<FpMatrix> comp;      // per element, dims G(a) x F(a)
};

// Throws PreconditionFailed when shapes mismatch or a square fails.
void validate_nat(const Nat& t);

// Dimension of the space of natural transformations F -> G, computed as the
// kernel of the naturality constraints over all covers.
int nat_space_dim(const VectFunctor& F, const VectFunctor& G);

// A basis of that space, each vector unpacked into per-element components.
std::vector<std::vector<FpMatrix>> nat_space_basis(const VectFunctor& F, const VectFunctor& G);

// One generator multiplicity per element.
using BettiDiagram = std::vector<int>;

// Free functor: value at a is the direct sum of generator blocks for all
// b <= a, with structure maps the block inclusions.
struct FreeFunctor {
  VectFunctor F;
  BettiDiagram betti;

  // Offset of the generator block of b inside F(a); requires b <= a.
  int block_offset(Elem a, Elem b) const;
};

FreeFunctor make_free(const Poset& P, std::int64_t p, BettiDiagram betti);

}  // namespace rp
