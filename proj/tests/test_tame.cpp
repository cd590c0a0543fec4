#include <doctest.h>

#include <memory>

#include <realposet/tame.hpp>

#include "coords.hpp"
#include "fixtures.hpp"
#include "gen.hpp"

using namespace rp;

namespace {

// Grid over the full square [n]^2 with the given values.
std::shared_ptr<Grid> square_grid(const Poset& I, std::vector<Rat> V) {
  GridSpec spec{&I, {}, std::move(V)};
  for (Elem x = 0; x < I.size(); ++x) spec.D.push_back(x);
  return std::make_shared<Grid>(build_grid(spec));
}

}  // namespace

TEST_CASE("tame functors demand a functor on the grid poset") {
  const Poset I = tc::chain_power(1, 2);
  auto grid = square_grid(I, {Rat(-1, 2)});
  tg::Rng rng(711);

  const VectFunctor good = tg::random_functor(rng, grid->poset, 2);
  CHECK_NOTHROW(make_tame(grid, good));

  const Poset copy = tg::shuffled_copy(rng, grid->poset);
  const VectFunctor other = tg::random_functor(rng, copy, 2);
  CHECK_THROWS_AS(make_tame(grid, other), PreconditionFailed);
}

TEST_CASE("evaluation at grid points returns the stored values") {
  const Poset I = tc::chain_power(2, 2);
  auto grid = square_grid(I, {Rat(-1, 2)});
  tg::Rng rng(712);
  const VectFunctor vals = tg::random_functor(rng, grid->poset, 5);
  const TameFunctor T = make_tame(grid, vals);

  for (Elem g = 0; g < grid->poset.size(); ++g) {
    CHECK(tame_eval_dim(T, grid->points[g]) == T.vals.dims[g]);
    const FpMatrix self = tame_eval_map(T, grid->points[g], grid->points[g]);
    CHECK(self == FpMatrix::identity(T.vals.dims[g], 5));
  }
}

TEST_CASE("points sharing a grid fibre are connected by identities") {
  const Poset I = tc::chain_power(2, 2);
  auto grid = square_grid(I, {Rat(-1, 2)});
  tg::Rng rng(713);
  const VectFunctor vals = tg::random_functor(rng, grid->poset, 5);
  const TameFunctor T = make_tame(grid, vals);

  // (0.55, 0) and (0.7, 0) both round down to (0.5, 0)
  const RealPoint p = tc::real_of(I, {Rat(11, 20), Rat(0)});
  const RealPoint q = tc::real_of(I, {Rat(7, 10), Rat(0)});
  RealPoint anchor;
  anchor.base = I.index("(1,0)");
  anchor.coords[I.index("(0,0)")] = Rat(-1, 2);
  const Elem g = *grid->find(anchor);

  CHECK(tame_eval_dim(T, p) == T.vals.dims[g]);
  CHECK(tame_eval_dim(T, q) == T.vals.dims[g]);
  CHECK(tame_eval_map(T, p, q) == FpMatrix::identity(T.vals.dims[g], 5));
  CHECK_THROWS_AS(tame_eval_map(T, q, p), NotRelated);
}

TEST_CASE("a one-parameter step functor jumps at its grid points") {
  const Poset C = chain(2);
  GridSpec spec{&C, {}, {}};
  for (Elem x = 0; x < C.size(); ++x) spec.D.push_back(x);
  auto grid = std::make_shared<Grid>(build_grid(spec));
  REQUIRE(grid->poset.size() == 3);

  // one bar alive on [0, 2)
  std::vector<int> dims(3);
  dims[*grid->find(RealPoint{C.index("0"), {}})] = 1;
  dims[*grid->find(RealPoint{C.index("1"), {}})] = 1;
  dims[*grid->find(RealPoint{C.index("2"), {}})] = 0;
  std::map<std::pair<Elem, Elem>, FpMatrix> maps;
  for (const auto& [lo, hi] : grid->poset.cover_pairs())
    maps.emplace(std::make_pair(lo, hi), FpMatrix(dims[hi], dims[lo], 2));
  for (auto& [pr, m] : maps)
    if (m.rows() == 1 && m.cols() == 1) m = FpMatrix::identity(1, 2);
  const TameFunctor T = make_tame(grid, make_functor(grid->poset, 2, dims, maps));

  // value 1 on [0, 2), value 0 from 2 on
  RealPoint quarter;  // 0.25
  quarter.base = C.index("1");
  quarter.coords[C.index("0")] = Rat(-3, 4);
  RealPoint midway;  // 1.5
  midway.base = C.index("2");
  midway.coords[C.index("1")] = Rat(-1, 2);
  const RealPoint end{C.index("2"), {}};

  CHECK(tame_eval_dim(T, quarter) == 1);
  CHECK(tame_eval_dim(T, midway) == 1);
  CHECK(tame_eval_dim(T, end) == 0);
  CHECK(tame_eval_map(T, quarter, midway) == FpMatrix::identity(1, 2));
  CHECK(tame_eval_map(T, quarter, end).rows() == 0);
}

TEST_CASE("free grid functors have no higher generators") {
  const Poset I = tc::chain_power(2, 2);
  auto grid = square_grid(I, {Rat(-1, 2)});
  tg::Rng rng(714);
  BettiDiagram beta(grid->poset.size(), 0);
  for (auto& b : beta) b = tg::pick(rng, 0, 1);
  const TameFunctor T = make_tame(grid, make_free(grid->poset, 2, beta).F);

  CHECK(tame_betti(T, 0) == beta);
  CHECK(tame_betti(T, 1) == BettiDiagram(grid->poset.size(), 0));
  // degree three runs through the refinement transport
  CHECK(tame_betti(T, 3) == BettiDiagram(grid->poset.size(), 0));
}

TEST_CASE("grid generators agree with the resolution of the restriction") {
  const Poset I = tc::chain_power(2, 2);
  auto grid = square_grid(I, {Rat(-1, 2)});
  tg::Rng rng(715);
  const VectFunctor vals = tg::random_functor(rng, grid->poset, 2);
  const TameFunctor T = make_tame(grid, vals);

  for (int i = 0; i <= 2; ++i) CHECK(tame_betti(T, i) == betti_resolution(T.vals, i));
  CHECK(tame_betti(T, 0) == radical_quotient_dims(T.vals));
}

TEST_CASE("the refinement keeps degree-three generators certified") {
  const Poset I = suspension({"1", "2", "3"});
  GridSpec spec{&I, {}, {Rat(-1, 2)}};
  for (Elem x = 0; x < I.size(); ++x) spec.D.push_back(x);
  auto grid = std::make_shared<Grid>(build_grid(spec));
  REQUIRE(grid->poset.size() == 15);

  tg::Rng rng(716);
  for (int t = 0; t < 3; ++t) {
    const VectFunctor vals = tg::random_functor(rng, grid->poset, 2);
    const TameFunctor T = make_tame(grid, vals);
    CHECK(tame_betti(T, 3) == betti_resolution(T.vals, 3));
  }
}

TEST_CASE("generators vanish above the point dimension") {
  const Poset I = suspension({"1", "2", "3"});
  GridSpec spec{&I, {}, {Rat(-1, 2)}};
  for (Elem x = 0; x < I.size(); ++x) spec.D.push_back(x);
  auto grid = std::make_shared<Grid>(build_grid(spec));

  tg::Rng rng(717);
  const VectFunctor vals = tg::random_functor(rng, grid->poset, 2);
  const TameFunctor T = make_tame(grid, vals);

  std::vector<BettiDiagram> by_degree;
  for (int i = 0; i <= 4; ++i) by_degree.push_back(tame_betti(T, i));
  for (Elem g = 0; g < grid->poset.size(); ++g) {
    const int rd = real_dim(*grid->I, grid->points[g]);
    for (int i = rd + 1; i <= 4; ++i) CHECK(by_degree[i][g] == 0);
  }
}
