#pragma once

#include <optional>
#include <string>
#include <vector>

#include "realposet/functor.hpp"
#include "realposet/homology.hpp"
#include "realposet/poset.hpp"
#include "realposet/realisation.hpp"

namespace rp {

// Right adjoint of a monotone map f: I -> J on the level of elements,
// extended over an adjoined bottom: of[a] is the join in I of
// {x : f(x) <= a}, or -1 when that set is empty.
struct Transfer {
  const Poset* I = nullptr;
  const Poset* J = nullptr;
  std::vector<Elem> of;  // indexed by J

  Elem operator()(Elem a) const { return of[a]; }
};

// Computes the transfer; throws NotSemilattice when a needed join is
// missing in the source.
Transfer transfer_of(const MonotoneMap& f);

// Same, for an arbitrary function given by its value table (monotonicity of
// the input is not required; the resulting table is checked instead).
Transfer transfer_of_function(const Poset& I, const Poset& J, const std::vector<Elem>& to);

// Itemized report over the interaction laws between f and its transfer.
// Items that require injectivity or surjectivity are marked inapplicable
// when f lacks them. `detail` carries the first counterexample.
struct TransferProps {
  struct Item {
    std::string name;
    bool applicable = true;
    bool holds = true;
    std::string detail;
  };
  std::vector<Item> items;
  bool all_applicable_hold() const;
};
TransferProps check_transfer_props(const MonotoneMap& f);

// Left Kan extension along a join-preserving map, evaluated through the
// transfer: value at a is G at the transfer of a, zero when that is absent.
// Throws NotHomomorphism unless f preserves joins.
VectFunctor kan_extend_hom(const VectFunctor& G, const MonotoneMap& f);

// Left Kan extension along any monotone map, via colimits over {x: f(x)<=a}.
VectFunctor kan_extend_general(const VectFunctor& G, const MonotoneMap& f);

// Canonical comparison from the colimit-based extension to the
// transfer-based one, one matrix per target element. Requires f to be a
// homomorphism.
std::vector<FpMatrix> kan_comparison(const VectFunctor& G, const MonotoneMap& f);

// Both hom-sets of the extension adjunction, with explicit round-trips on
// bases. G lives on the source of f, F on the target.
struct AdjunctionReport {
  int dim_extended_side = 0;  // Nat(extension of G, F)
  int dim_restricted_side = 0;  // Nat(G, restriction of F)
  bool bijective = false;
};
AdjunctionReport adjunction_check(const MonotoneMap& f, const VectFunctor& G,
                                  const VectFunctor& F);

// Blocks of the fibre partition of J under a |-> {x : f(x) <= a}, with
// convexity and least-element data.
struct FibreBlock {
  std::vector<Elem> members;     // elements of J sharing one down-set
  bool convex = false;
  std::optional<Elem> least;     // present iff the block has a global min
};
std::vector<FibreBlock> transfer_fibres(const MonotoneMap& f);

// A grid whose bases form a principal down-set of a consistent upper
// semilattice; the transfer of the grid inclusion into the realisation has
// the closed form implemented by grid_transfer.
struct DownClosedGrid {
  const Grid* grid = nullptr;
  Elem top = -1;  // the greatest base element
};
DownClosedGrid as_down_closed(const Grid& grid);

// Largest grid point below the given realisation point, or nullopt when no
// grid point lies below it.
std::optional<Elem> grid_transfer(const DownClosedGrid& g, const RealPoint& p);

}  // namespace rp
