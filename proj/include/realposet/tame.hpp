#pragma once

#include <memory>

#include "realposet/homology.hpp"
#include "realposet/transfer.hpp"

namespace rp {

// Functor on the realisation presented by its restriction to a finite grid;
// values anywhere are recovered through the grid transfer.
struct TameFunctor {
  std::shared_ptr<const Grid> grid;
  Elem top = -1;  // greatest base element of the grid
  VectFunctor vals;  // on grid->poset
};

// Validates the grid (principal down-set over a consistent semilattice) and
// the functor, which must live on the grid poset.
TameFunctor make_tame(std::shared_ptr<const Grid> grid, VectFunctor vals);

// Value dimension at an arbitrary realisation point.
int tame_eval_dim(const TameFunctor& T, const RealPoint& p);

// Structure map between two comparable realisation points.
FpMatrix tame_eval_map(const TameFunctor& T, const RealPoint& p, const RealPoint& q);

// Generator multiplicities in homological degree i at every grid point.
// Degrees above 2 are certified only at points whose coordinates all lie
// strictly above some grid value; when a point fails this, the grid is
// refined by one extra value below everything already present and the
// functor is transported to the refined grid first.
BettiDiagram tame_betti(const TameFunctor& T, int i, const SearchBudget& budget = {});

}  // namespace rp
