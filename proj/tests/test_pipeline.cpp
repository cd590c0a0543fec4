#include <doctest.h>

#include <set>

#include <realposet/homology.hpp>
#include <realposet/pipeline.hpp>

#include "fixtures.hpp"
#include "gen.hpp"

using namespace rp;

namespace {

// Two named points at distance 1 with bound 2.
MetricDataset two_points() {
  MetricDataset d;
  d.point_ids = {"p", "q"};
  d.dist = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
  d.m = Rat(2);
  return d;
}

// Two far points x, y and a bridge z close to both.
MetricDataset bridge() {
  MetricDataset d;
  d.point_ids = {"x", "y", "z"};
  d.dist = {{Rat(0), Rat(1), Rat(1, 4)},
            {Rat(1), Rat(0), Rat(1, 4)},
            {Rat(1, 4), Rat(1, 4), Rat(0)}};
  d.m = Rat(2);
  return d;
}

Grid full_grid(const Poset& I, std::vector<Rat> V) {
  GridSpec spec{&I, {}, std::move(V)};
  for (Elem x = 0; x < I.size(); ++x) spec.D.push_back(x);
  return build_grid(spec);
}

}  // namespace

TEST_CASE("dataset validation") {
  MetricDataset d = two_points();
  CHECK_NOTHROW(validate_dataset(d));

  MetricDataset asym = two_points();
  asym.dist[0][1] = Rat(1, 2);
  CHECK_THROWS_AS(validate_dataset(asym), PreconditionFailed);

  MetricDataset diag = two_points();
  diag.dist[0][0] = Rat(1, 8);
  CHECK_THROWS_AS(validate_dataset(diag), PreconditionFailed);

  MetricDataset neg = two_points();
  neg.dist[0][1] = neg.dist[1][0] = Rat(-1, 2);
  CHECK_THROWS_AS(validate_dataset(neg), ValueOutOfRange);

  // the bound must strictly dominate every distance
  MetricDataset tight = two_points();
  tight.m = Rat(1);
  CHECK_THROWS_AS(validate_dataset(tight), ValueOutOfRange);

  MetricDataset dup = two_points();
  dup.dist[0][1] = dup.dist[1][0] = Rat(0);
  CHECK_THROWS_AS(validate_dataset(dup), PreconditionFailed);
}

TEST_CASE("cover system validation") {
  const Poset C = chain(1);
  CoverSystem U{{{0}, {0, 1}}};
  CHECK_NOTHROW(validate_cover_system(C, U, 2));

  CoverSystem shrink{{{0, 1}, {1}}};
  CHECK_THROWS_AS(validate_cover_system(C, shrink, 2), PreconditionFailed);

  CoverSystem hole{{{}, {0, 1}}};
  CHECK_THROWS_AS(validate_cover_system(C, hole, 2), EmptyValue);

  CoverSystem oob{{{0}, {0, 5}}};
  CHECK_THROWS_AS(validate_cover_system(C, oob, 2), PreconditionFailed);

  CoverSystem unsorted{{{0}, {1, 0}}};
  CHECK_THROWS_AS(validate_cover_system(C, unsorted, 2), PreconditionFailed);
}

TEST_CASE("extension shrinks with the coordinates and keeps zeros intact") {
  const Poset C = chain(1);
  const MetricDataset data = two_points();
  const CoverSystem U{{{0}, {0, 1}}};
  const Grid g = full_grid(C, {Rat(-1, 2), Rat(-1, 4)});
  REQUIRE(g.poset.size() == 4);

  const GridCoverSystem S = extend_cover_system(g, U, data);

  const Elem at0 = *g.find(RealPoint{C.index("0"), {}});
  const Elem at1 = *g.find(RealPoint{C.index("1"), {}});
  RealPoint half{C.index("1"), {{C.index("0"), Rat(-1, 2)}}};
  RealPoint quarter{C.index("1"), {{C.index("0"), Rat(-1, 4)}}};

  // zero coordinates reproduce the input subsets
  CHECK(S.members[at0] == std::vector<int>{0});
  CHECK(S.members[at1] == std::vector<int>{0, 1});
  // radius (1 - 1/2) * 2 = 1 is an open bound, so q at distance 1 drops out
  CHECK(S.members[*g.find(half)] == std::vector<int>{0});
  // radius (1 - 1/4) * 2 = 3/2 keeps both
  CHECK(S.members[*g.find(quarter)] == std::vector<int>{0, 1});

  // monotone along every grid cover
  for (const auto& [lo, hi] : g.poset.cover_pairs())
    CHECK(std::includes(S.members[hi].begin(), S.members[hi].end(), S.members[lo].begin(),
                        S.members[lo].end()));
}

TEST_CASE("the subset at an ancestor of the support survives extension") {
  const Poset I = product_poset(chain(1), chain(1));
  const MetricDataset data = bridge();
  CoverSystem U;
  U.members.resize(4);
  U.members[I.index("(0,0)")] = {2};
  U.members[I.index("(1,0)")] = {0, 2};
  U.members[I.index("(0,1)")] = {1, 2};
  U.members[I.index("(1,1)")] = {0, 1, 2};
  const Grid g = full_grid(I, {Rat(-1, 2)});
  const GridCoverSystem S = extend_cover_system(g, U, data);

  for (Elem gp = 0; gp < g.poset.size(); ++gp) {
    const auto& pt = g.points[gp];
    if (pt.support().empty()) continue;
    // (0,0) is an ancestor of every support here
    const auto& w = U.members[I.index("(0,0)")];
    CHECK(std::includes(S.members[gp].begin(), S.members[gp].end(), w.begin(), w.end()));
  }
}

TEST_CASE("an empty input subset is rejected") {
  const Poset C = chain(1);
  const MetricDataset data = two_points();
  const Grid g = full_grid(C, {});
  CoverSystem broken{{{}, {0, 1}}};
  CHECK_THROWS_AS(extend_cover_system(g, broken, data), EmptyValue);
}

TEST_CASE("component functor on singletons is constant") {
  MetricDataset one;
  one.point_ids = {"only"};
  one.dist = {{Rat(0)}};
  one.m = Rat(1);
  const Poset C = chain(2);
  const Grid g = full_grid(C, {Rat(-1, 2)});
  GridCoverSystem S;
  S.members.assign(g.poset.size(), {0});
  const VectFunctor F = h0_functor(g, S, one, Rat(0), 2);
  for (Elem x = 0; x < g.poset.size(); ++x) CHECK(F.dims[x] == 1);
  for (const auto& [pr, m] : F.cover_maps) CHECK(m == FpMatrix::identity(1, 2));
}

TEST_CASE("scales past the bound connect everything") {
  const MetricDataset data = bridge();
  const Poset C = chain(1);
  const Grid g = full_grid(C, {});
  GridCoverSystem S;
  S.members = {{0, 1}, {0, 1, 2}};
  const VectFunctor F = h0_functor(g, S, data, data.m, 5);
  CHECK(F.dims == std::vector<int>{1, 1});
}

TEST_CASE("two clusters merge through the bridge with a fold map") {
  const MetricDataset data = bridge();
  const Poset C = chain(1);
  const Grid g = full_grid(C, {});
  GridCoverSystem S;
  S.members = {{0, 1}, {0, 1, 2}};  // x, y first; the bridge z arrives later

  const VectFunctor F = h0_functor(g, S, data, Rat(1, 4), 2);
  const Elem lo = *g.find(RealPoint{C.index("0"), {}});
  const Elem hi = *g.find(RealPoint{C.index("1"), {}});
  CHECK(F.dims[lo] == 2);
  CHECK(F.dims[hi] == 1);
  CHECK(F.cover_map(lo, hi) == FpMatrix::from_rows({{1, 1}}, 2));

  // one generator per cluster birth, one relation at the merge
  BettiDiagram b0(2, 0), b1(2, 0);
  b0[lo] = 2;
  b1[hi] = 1;
  CHECK(betti_resolution(F, 0) == b0);
  CHECK(betti_resolution(F, 1) == b1);
  CHECK(betti_koszul(F, hi, 1) == 1);

  // negative scales are rejected
  CHECK_THROWS_AS(h0_functor(g, S, data, Rat(-1), 2), ValueOutOfRange);
}

TEST_CASE("component counts match an independent union-find") {
  tg::Rng rng(811);
  const std::vector<Rat> pool{Rat(1, 8), Rat(1, 4), Rat(1, 2), Rat(1), Rat(3, 2)};
  for (int trial = 0; trial < 10; ++trial) {
    const int n = tg::pick(rng, 2, 6);
    MetricDataset data;
    data.m = Rat(2);
    for (int i = 0; i < n; ++i) data.point_ids.push_back("y" + std::to_string(i));
    data.dist.assign(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        data.dist[i][j] = data.dist[j][i] = pool[tg::pick(rng, 0, 4)];

    const Poset C = chain(2);
    const Grid g = full_grid(C, {Rat(-1, 2)});
    // grow a random monotone family of subsets along the chain order
    std::vector<std::vector<int>> chain_subsets(3);
    chain_subsets[0] = {tg::pick(rng, 0, n - 1)};
    for (int k = 1; k <= 2; ++k) {
      std::set<int> s(chain_subsets[k - 1].begin(), chain_subsets[k - 1].end());
      const int extra = tg::pick(rng, 0, n - 1);
      for (int a = 0; a <= extra; ++a) s.insert(tg::pick(rng, 0, n - 1));
      chain_subsets[k] = std::vector<int>(s.begin(), s.end());
    }
    CoverSystem U;
    U.members.resize(3);
    for (int k = 0; k <= 2; ++k) U.members[C.index(std::to_string(k))] = chain_subsets[k];

    const GridCoverSystem S = extend_cover_system(g, U, data);
    const Rat eps = pool[tg::pick(rng, 0, 4)];
    const VectFunctor F = h0_functor(g, S, data, eps, 2);
    validate_functor(F);

    for (Elem x = 0; x < g.poset.size(); ++x) {
      const auto& mem = S.members[x];
      const int k = static_cast<int>(mem.size());
      // plain union-find over all close pairs
      std::vector<int> root(k);
      for (int i = 0; i < k; ++i) root[i] = i;
      const auto find = [&](int i) {
        while (root[i] != i) i = root[i] = root[root[i]];
        return i;
      };
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          if (data.dist[mem[i]][mem[j]] <= eps) root[find(i)] = find(j);
      std::set<int> reps;
      for (int i = 0; i < k; ++i) reps.insert(find(i));
      CHECK(F.dims[x] == static_cast<int>(reps.size()));
    }
  }
}

TEST_CASE("rebuilding the same pipeline reproduces identical structures") {
  const MetricDataset data = bridge();
  const Poset I = product_poset(chain(1), chain(1));
  CoverSystem U;
  U.members.resize(4);
  U.members[I.index("(0,0)")] = {2};
  U.members[I.index("(1,0)")] = {0, 2};
  U.members[I.index("(0,1)")] = {1, 2};
  U.members[I.index("(1,1)")] = {0, 1, 2};
  const Grid g1 = full_grid(I, {Rat(-1, 2)});
  const Grid g2 = full_grid(I, {Rat(-1, 2)});

  const GridCoverSystem S1 = extend_cover_system(g1, U, data);
  const GridCoverSystem S2 = extend_cover_system(g2, U, data);
  CHECK(S1.members == S2.members);

  const VectFunctor F1 = h0_functor(g1, S1, data, Rat(1, 4), 2);
  const VectFunctor F2 = h0_functor(g2, S2, data, Rat(1, 4), 2);
  CHECK(F1.dims == F2.dims);
  CHECK(F1.cover_maps == F2.cover_maps);
  CHECK(betti_resolution(F1, 1) == betti_resolution(F2, 1));
}