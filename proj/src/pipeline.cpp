#include "realposet/pipeline.hpp"

#include <algorithm>
#include <numeric>

namespace rp {

void validate_dataset(const MetricDataset& data) {
  const std::size_t n = data.point_ids.size();
  if (data.dist.size() != n) throw PreconditionFailed("distance matrix size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (data.dist[i].size() != n) throw PreconditionFailed("distance matrix row size mismatch");
    if (data.dist[i][i] != Rat(0)) throw PreconditionFailed("non-zero self distance");
    for (std::size_t j = 0; j < n; ++j) {
      if (data.dist[i][j] != data.dist[j][i]) throw PreconditionFailed("asymmetric distances");
      if (data.dist[i][j] < Rat(0)) throw ValueOutOfRange("negative distance");
      if (data.dist[i][j] >= data.m)
        throw ValueOutOfRange("distance " + format_rat(data.dist[i][j]) +
                              " not strictly below the bound " + format_rat(data.m));
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (data.dist[i][j] == Rat(0)) throw PreconditionFailed("distinct points at distance zero");
}

void validate_cover_system(const Poset& I, const CoverSystem& U, int n_points) {
  if (static_cast<int>(U.members.size()) != I.size())
    throw PreconditionFailed("cover system size mismatch");
  for (Elem x = 0; x < I.size(); ++x) {
    const auto& mem = U.members[x];
    if (mem.empty()) throw EmptyValue("empty subset at " + I.id(x));
    if (!std::is_sorted(mem.begin(), mem.end()) ||
        std::adjacent_find(mem.begin(), mem.end()) != mem.end())
      throw PreconditionFailed("subset at " + I.id(x) + " not sorted or not distinct");
    if (mem.front() < 0 || mem.back() >= n_points)
      throw PreconditionFailed("subset at " + I.id(x) + " references unknown points");
  }
  for (const auto& [lo, hi] : I.cover_pairs())
    if (!std::includes(U.members[hi].begin(), U.members[hi].end(), U.members[lo].begin(),
                       U.members[lo].end()))
      throw PreconditionFailed("subsets not monotone along " + I.id(lo) + " -> " + I.id(hi));
}

GridCoverSystem extend_cover_system(const Grid& grid, const CoverSystem& U,
                                    const MetricDataset& data) {
  validate_dataset(data);
  const Poset& I = *grid.I;
  validate_cover_system(I, U, static_cast<int>(data.point_ids.size()));
  GridCoverSystem out;
  out.members.reserve(grid.points.size());
  for (const auto& pt : grid.points) {
    std::vector<int> cur = U.members[pt.base];
    for (const auto& [cover, v] : pt.coords) {
      if (v == Rat(0)) continue;
      const Rat radius = (Rat(1) + v) * data.m;
      const auto& anchor = U.members[cover];
      std::vector<int> kept;
      for (const int u : cur) {
        bool close = false;
        for (const int w : anchor)
          if (data.dist[u][w] < radius) {
            close = true;
            break;
          }
        if (close) kept.push_back(u);
      }
      cur = std::move(kept);
    }
    if (cur.empty()) throw EmptyValue("extension empty at grid point " + point_id(I, pt));
    out.members.push_back(std::move(cur));
  }
  for (const auto& [lo, hi] : grid.poset.cover_pairs())
    if (!std::includes(out.members[hi].begin(), out.members[hi].end(), out.members[lo].begin(),
                       out.members[lo].end()))
      throw PreconditionFailed("extension not monotone along " + grid.poset.id(lo) + " -> " +
                               grid.poset.id(hi));
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }
};

// Components of the subset under edges of length <= eps, each component a
// sorted list, components ordered by smallest member.
std::vector<std::vector<int>> components(const std::vector<int>& subset,
                                         const MetricDataset& data, const Rat& eps) {
  const int k = static_cast<int>(subset.size());
  UnionFind uf(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (data.dist[subset[i]][subset[j]] <= eps) uf.unite(i, j);
  std::map<int, std::vector<int>> by_root;
  for (int i = 0; i < k; ++i) by_root[uf.find(i)].push_back(subset[i]);
  std::vector<std::vector<int>> out;
  for (auto& [root, mem] : by_root) out.push_back(std::move(mem));
  return out;
}

}  // namespace

VectFunctor h0_functor(const Grid& grid, const GridCoverSystem& S, const MetricDataset& data,
                       const Rat& eps, std::int64_t p) {
  validate_dataset(data);
  if (eps < Rat(0)) throw ValueOutOfRange("negative scale");
  const Poset& GP = grid.poset;
  if (static_cast<int>(S.members.size()) != GP.size())
    throw PreconditionFailed("grid cover system size mismatch");
  std::vector<std::vector<std::vector<int>>> comps(GP.size());
  std::vector<int> dims(GP.size());
  for (Elem g = 0; g < GP.size(); ++g) {
    comps[g] = components(S.members[g], data, eps);
    dims[g] = static_cast<int>(comps[g].size());
  }
  std::map<std::pair<Elem, Elem>, FpMatrix> maps;
  for (const auto& [lo, hi] : GP.cover_pairs()) {
    FpMatrix m(dims[hi], dims[lo], p);
    for (int c = 0; c < dims[lo]; ++c) {
      const int representative = comps[lo][c].front();
      int target = -1;
      for (int t = 0; t < dims[hi]; ++t)
        if (std::binary_search(comps[hi][t].begin(), comps[hi][t].end(), representative))
          target = t;
      if (target == -1)
        throw PreconditionFailed("component lost along " + GP.id(lo) + " -> " + GP.id(hi));
      m.set(target, c, 1);
    }
    maps.emplace(std::pair<Elem, Elem>{lo, hi}, std::move(m));
  }
  VectFunctor F = make_functor(GP, p, std::move(dims), std::move(maps));
  validate_functor(F);
  return F;
}

}  // namespace rp
