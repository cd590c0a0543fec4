#include "realposet/functor.hpp"

#include <string>

namespace rp {

const FpMatrix& VectFunctor::cover_map(Elem lo, Elem hi) const {
  const auto it = cover_maps.find({lo, hi});
  if (it == cover_maps.end())
    throw PreconditionFailed("missing cover map " + P->id(lo) + " -> " + P->id(hi));
  return it->second;
}

FpMatrix VectFunctor::map(Elem x, Elem y) const {
  if (!P->leq(x, y)) throw NotRelated("structure map needs x <= y");
  if (x == y) return FpMatrix::identity(dims[x], p);
  for (const Elem q : P->parents(y))
    if (P->leq(x, q)) return cover_map(q, y) * map(x, q);
  throw NotRelated("no cover path found");  // unreachable on a valid poset
}

VectFunctor make_functor(const Poset& P, std::int64_t p, std::vector<int> dims,
                         std::map<std::pair<Elem, Elem>, FpMatrix> cover_maps) {
  check_prime(p);
  if (static_cast<int>(dims.size()) != P.size())
    throw DimensionMismatch("dimension list does not match poset size");
  for (const int d : dims)
    if (d < 0) throw DimensionMismatch("negative fibre dimension");
  VectFunctor F;
  F.P = &P;
  F.p = p;
  F.dims = std::move(dims);
  F.cover_maps = std::move(cover_maps);
  for (const auto& [lo, hi] : P.cover_pairs()) {
    const auto it = F.cover_maps.find({lo, hi});
    if (it == F.cover_maps.end())
      throw PreconditionFailed("missing cover map " + P.id(lo) + " -> " + P.id(hi));
    const FpMatrix& m = it->second;
    if (m.p() != p) throw DimensionMismatch("cover map over the wrong field");
    if (m.rows() != F.dims[hi] || m.cols() != F.dims[lo])
      throw ShapeMismatch("cover map " + P.id(lo) + " -> " + P.id(hi) + " has shape " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (F.cover_maps.size() != P.cover_pairs().size())
    throw PreconditionFailed("cover map for a non-cover pair supplied");
  return F;
}

void validate_functor(const VectFunctor& F) {
  const Poset& P = *F.P;
  for (Elem z = 0; z < P.size(); ++z)
    for (const Elem x : P.strict_down(z).members()) {
      bool have = false;
      FpMatrix first;
      for (const Elem q : P.parents(z)) {
        if (!P.leq(x, q)) continue;
        const FpMatrix via = F.cover_map(q, z) * F.map(x, q);
        if (!have) {
          first = via;
          have = true;
        } else if (!(via == first)) {
          throw NotFunctorial("paths from " + P.id(x) + " to " + P.id(z) +
                              " disagree at parent " + P.id(q));
        }
      }
    }
}

VectFunctor rebind_functor(const VectFunctor& F, const Poset& Q) {
  const Poset& P = *F.P;
  if (P.size() != Q.size()) throw PreconditionFailed("posets have different sizes");
  std::vector<Elem> to(P.size());
  for (Elem x = 0; x < P.size(); ++x) to[x] = Q.index(P.id(x));
  if (P.cover_pairs().size() != Q.cover_pairs().size())
    throw PreconditionFailed("posets have different covers");
  std::vector<int> dims(Q.size());
  for (Elem x = 0; x < P.size(); ++x) dims[to[x]] = F.dims[x];
  std::map<std::pair<Elem, Elem>, FpMatrix> maps;
  for (const auto& [lo, hi] : P.cover_pairs()) {
    if (!Q.leq(to[lo], to[hi])) throw PreconditionFailed("cover missing in the target poset");
    maps[{to[lo], to[hi]}] = F.cover_map(lo, hi);
  }
  return make_functor(Q, F.p, std::move(dims), std::move(maps));
}

void validate_nat(const Nat& t) {
  if (t.F == nullptr || t.G == nullptr || t.F->P != t.G->P)
    throw PreconditionFailed("natural transformation needs functors on one poset");
  const Poset& P = *t.F->P;
  if (static_cast<int>(t.comp.size()) != P.size())
    throw PreconditionFailed("component count mismatch");
  for (Elem a = 0; a < P.size(); ++a)
    if (t.comp[a].rows() != t.G->dims[a] || t.comp[a].cols() != t.F->dims[a])
      throw ShapeMismatch("component at " + P.id(a) + " has the wrong shape");
  for (const auto& [lo, hi] : P.cover_pairs())
    if (!(t.comp[hi] * t.F->cover_map(lo, hi) == t.G->cover_map(lo, hi) * t.comp[lo]))
      throw PreconditionFailed("naturality fails on cover " + P.id(lo) + " -> " + P.id(hi));
}

namespace {

// Offset of each element's component inside the flattened variable vector.
std::vector<int> component_offsets(const VectFunctor& F, const VectFunctor& G, int* total) {
  std::vector<int> off(F.P->size() + 1, 0);
  for (Elem a = 0; a < F.P->size(); ++a) off[a + 1] = off[a] + G.dims[a] * F.dims[a];
  *total = off[F.P->size()];
  return off;
}

FpMatrix naturality_system(const VectFunctor& F, const VectFunctor& G) {
  if (F.P != G.P) throw PreconditionFailed("functors live on different posets");
  if (F.p != G.p) throw DimensionMismatch("functors over different fields");
  int total = 0;
  const auto off = component_offsets(F, G, &total);
  int rows = 0;
  for (const auto& [lo, hi] : F.P->cover_pairs()) rows += G.dims[hi] * F.dims[lo];
  FpMatrix sys(rows, total, F.p);
  int r0 = 0;
  for (const auto& [lo, hi] : F.P->cover_pairs()) {
    const FpMatrix& Fm = F.cover_map(lo, hi);
    const FpMatrix& Gm = G.cover_map(lo, hi);
    // Rows for (X_hi * Fm - Gm * X_lo)(i, j) = 0, i < G.dims[hi], j < F.dims[lo].
    for (int i = 0; i < G.dims[hi]; ++i)
      for (int j = 0; j < F.dims[lo]; ++j) {
        const int row = r0 + i * F.dims[lo] + j;
        for (int k = 0; k < F.dims[hi]; ++k)
          sys.set(row, off[hi] + i * F.dims[hi] + k,
                  (sys.at(row, off[hi] + i * F.dims[hi] + k) + Fm.at(k, j)) % F.p);
        for (int k = 0; k < G.dims[lo]; ++k)
          sys.set(row, off[lo] + k * F.dims[lo] + j,
                  (sys.at(row, off[lo] + k * F.dims[lo] + j) - Gm.at(i, k)) % F.p);
      }
    r0 += G.dims[hi] * F.dims[lo];
  }
  return sys;
}

}  // namespace

int nat_space_dim(const VectFunctor& F, const VectFunctor& G) {
  int total = 0;
  component_offsets(F, G, &total);
  return total - naturality_system(F, G).rank();
}

std::vector<std::vector<FpMatrix>> nat_space_basis(const VectFunctor& F, const VectFunctor& G) {
  int total = 0;
  const auto off = component_offsets(F, G, &total);
  const FpMatrix kernel = naturality_system(F, G).kernel_basis();
  std::vector<std::vector<FpMatrix>> out;
  for (int c = 0; c < kernel.cols(); ++c) {
    std::vector<FpMatrix> comps;
    for (Elem a = 0; a < F.P->size(); ++a) {
      FpMatrix X(G.dims[a], F.dims[a], F.p);
      for (int i = 0; i < G.dims[a]; ++i)
        for (int j = 0; j < F.dims[a]; ++j) X.set(i, j, kernel.at(off[a] + i * F.dims[a] + j, c));
      comps.push_back(std::move(X));
    }
    out.push_back(std::move(comps));
  }
  return out;
}

int FreeFunctor::block_offset(Elem a, Elem b) const {
  const Poset& P = *F.P;
  if (!P.leq(b, a)) throw NotRelated("generator block requires b <= a");
  int off = 0;
  for (Elem c = 0; c < b; ++c)
    if (P.leq(c, a)) off += betti[c];
  return off;
}

FreeFunctor make_free(const Poset& P, std::int64_t p, BettiDiagram betti) {
  check_prime(p);
  if (static_cast<int>(betti.size()) != P.size())
    throw DimensionMismatch("generator list does not match poset size");
  for (const int b : betti)
    if (b < 0) throw DimensionMismatch("negative generator multiplicity");
  FreeFunctor out;
  out.betti = std::move(betti);
  std::vector<int> dims(P.size(), 0);
  for (Elem a = 0; a < P.size(); ++a) {
    int d = 0;
    for (const Elem b : P.down(a).members()) d += out.betti[b];
    dims[a] = d;
  }
  std::map<std::pair<Elem, Elem>, FpMatrix> maps;
  for (const auto& [lo, hi] : P.cover_pairs()) {
    FpMatrix m(dims[hi], dims[lo], p);
    int col = 0;
    for (const Elem b : P.down(lo).members()) {
      int row = 0;
      for (const Elem c : P.down(hi).members()) {
        if (c == b) break;
        row += out.betti[c];
      }
      for (int i = 0; i < out.betti[b]; ++i) m.set(row + i, col + i, 1);
      col += out.betti[b];
    }
    maps.emplace(std::pair<Elem, Elem>{lo, hi}, std::move(m));
  }
  out.F = make_functor(P, p, std::move(dims), std::move(maps));
  return out;
}

}  // namespace rp
