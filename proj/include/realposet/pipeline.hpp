#pragma once

#include <map>
#include <string>
#include <vector>

#include "realposet/functor.hpp"
#include "realposet/rational.hpp"
#include "realposet/realisation.hpp"

namespace rp {

// Finite metric-like dataset: symmetric non-negative distances with zero
// diagonal, all strictly below the bound m.
struct MetricDataset {
  std::vector<std::string> point_ids;
  std::vector<std::vector<Rat>> dist;
  Rat m;
};

void validate_dataset(const MetricDataset& data);

// Monotone assignment of non-empty subsets of dataset points to poset
// elements: x <= y implies members(x) is contained in members(y).
struct CoverSystem {
  std::vector<std::vector<int>> members;  // per poset element, sorted
};

void validate_cover_system(const Poset& I, const CoverSystem& U, int n_points);

// Subsets attached to every grid point: start from the subset at the base
// and intersect, for every lower cover with a negative coordinate, the
// points within (1 + coordinate) * m of the subset at that cover. A zero
// coordinate keeps the base subset unchanged.
struct GridCoverSystem {
  std::vector<std::vector<int>> members;  // per grid element, sorted
};

GridCoverSystem extend_cover_system(const Grid& grid, const CoverSystem& U,
                                    const MetricDataset& data);

// Functor of connected components: the value at a grid point is spanned by
// the components of the subset under edges of length at most eps; structure
// maps send a component to the component containing it.
VectFunctor h0_functor(const Grid& grid, const GridCoverSystem& S, const MetricDataset& data,
                       const Rat& eps, std::int64_t p);

}  // namespace rp
