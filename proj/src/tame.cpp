#include "realposet/tame.hpp"

#include <algorithm>

namespace rp {

TameFunctor make_tame(std::shared_ptr<const Grid> grid, VectFunctor vals) {
  if (!grid) throw PreconditionFailed("tame functor needs a grid");
  if (vals.P != &grid->poset) throw PreconditionFailed("functor must live on the grid poset");
  const DownClosedGrid dc = as_down_closed(*grid);
  validate_functor(vals);
  TameFunctor t;
  t.grid = std::move(grid);
  t.top = dc.top;
  t.vals = std::move(vals);
  return t;
}

int tame_eval_dim(const TameFunctor& T, const RealPoint& p) {
  const auto g = grid_transfer(DownClosedGrid{T.grid.get(), T.top}, p);
  return g ? T.vals.dims[*g] : 0;
}

FpMatrix tame_eval_map(const TameFunctor& T, const RealPoint& p, const RealPoint& q) {
  const Poset& I = *T.grid->I;
  if (!real_leq(I, p, q)) throw NotRelated("structure map needs comparable points");
  const DownClosedGrid dc{T.grid.get(), T.top};
  const auto gp = grid_transfer(dc, p);
  const auto gq = grid_transfer(dc, q);
  const int qdim = gq ? T.vals.dims[*gq] : 0;
  if (!gp) return FpMatrix(qdim, 0, T.vals.p);
  return T.vals.map(*gp, *gq);
}

namespace {

// Some grid value must sit strictly below every coordinate of the point; the
// length-3 truncation of a minimal resolution is only known to restrict to
// the grid correctly at such points.
bool below_all_coords(const Poset& I, const std::vector<Rat>& V, const RealPoint& pt) {
  bool have_min = false;
  Rat lo(0);
  for (Elem x : I.parents(pt.base)) {
    const Rat v = pt.at(x);
    if (!have_min || v < lo) {
      lo = v;
      have_min = true;
    }
  }
  for (const Rat& eps : V)
    if (!have_min || eps < lo) return true;
  return false;
}

}  // namespace

BettiDiagram tame_betti(const TameFunctor& T, int i, const SearchBudget& budget) {
  if (i < 0) throw PreconditionFailed("negative homological degree");
  const Poset& GP = T.grid->poset;
  const int n = GP.size();
  bool need_refine = false;
  if (i > 2)
    for (Elem g = 0; g < n && !need_refine; ++g)
      if (!below_all_coords(*T.grid->I, T.grid->spec.V, T.grid->points[g]))
        need_refine = true;
  if (!need_refine) {
    BettiDiagram out(n, 0);
    for (Elem g = 0; g < n; ++g) out[g] = betti_koszul(T.vals, g, i, budget);
    return out;
  }

  // Add one value below everything already present, rebuild, and transport
  // the functor along the inclusion of the coarse grid.
  const std::vector<Rat>& V = T.grid->spec.V;
  Rat low(0);
  for (const Rat& v : V) low = std::min(low, v);
  const Rat eps = (low + Rat(-1)) / 2;
  GridSpec fine_spec = T.grid->spec;
  fine_spec.V.push_back(eps);
  const Grid fine = build_grid(fine_spec);

  std::vector<std::pair<std::string, std::string>> assignment;
  for (Elem g = 0; g < n; ++g) assignment.push_back({GP.id(g), GP.id(g)});
  const MonotoneMap incl = make_map(GP, fine.poset, assignment);
  const VectFunctor moved = kan_extend_hom(T.vals, incl);

  BettiDiagram out(n, 0);
  for (Elem g = 0; g < n; ++g)
    out[g] = betti_koszul(moved, fine.poset.index(GP.id(g)), i, budget);
  return out;
}

}  // namespace rp
