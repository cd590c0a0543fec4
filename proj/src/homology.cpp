#include "realposet/homology.hpp"

#include <algorithm>
#include <string>

namespace rp {

namespace {

std::vector<std::pair<Elem, Elem>> induced_covers(const Poset& P, const BitRow& mask) {
  std::vector<std::pair<Elem, Elem>> out;
  const auto mem = mask.members();
  for (const Elem y : mem)
    for (const Elem x : mem) {
      if (!P.less(x, y)) continue;
      bool immediate = true;
      for (const Elem z : mem)
        if (z != x && z != y && P.less(x, z) && P.less(z, y)) {
          immediate = false;
          break;
        }
      if (immediate) out.push_back({x, y});
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Colimit colimit(const VectFunctor& G, const BitRow& mask, bool reduce_to_max) {
  const Poset& P = *G.P;
  Colimit c;
  c.members = mask.members();
  c.offsets.clear();
  int total = 0;
  for (const Elem x : c.members) {
    c.offsets.push_back(total);
    total += G.dims[x];
  }
  if (reduce_to_max) {
    for (const Elem t : c.members)
      if (mask.is_subset_of(P.down(t))) {
        c.dim = G.dims[t];
        for (const Elem x : c.members) c.proj[x] = G.map(x, t);
        FpMatrix stacked(c.dim, total, G.p);
        for (std::size_t i = 0; i < c.members.size(); ++i) {
          const FpMatrix& b = c.proj.at(c.members[i]);
          for (int r = 0; r < b.rows(); ++r)
            for (int j = 0; j < b.cols(); ++j) stacked.set(r, c.offsets[i] + j, b.at(r, j));
        }
        c.stacked = std::move(stacked);
        return c;
      }
  }
  const auto covers = induced_covers(P, mask);
  int rel_cols = 0;
  for (const auto& [lo, hi] : covers) rel_cols += G.dims[lo];
  FpMatrix rel(total, rel_cols, G.p);
  std::map<Elem, int> off;
  for (std::size_t i = 0; i < c.members.size(); ++i) off[c.members[i]] = c.offsets[i];
  int col = 0;
  for (const auto& [lo, hi] : covers) {
    const FpMatrix m = G.map(lo, hi);
    for (int j = 0; j < G.dims[lo]; ++j) {
      for (int r = 0; r < G.dims[hi]; ++r) rel.set(off[hi] + r, col + j, m.at(r, j));
      rel.set(off[lo] + j, col + j, rel.at(off[lo] + j, col + j) - 1);
    }
    col += G.dims[lo];
  }
  const FpMatrix proj = rel.cokernel_projection();
  c.dim = proj.rows();
  for (std::size_t i = 0; i < c.members.size(); ++i)
    c.proj[c.members[i]] = proj.submatrix(0, c.offsets[i], c.dim, G.dims[c.members[i]]);
  c.stacked = proj;
  return c;
}

FpMatrix colimit_factor(const Colimit& c, const std::map<Elem, FpMatrix>& cocone, int w_dim,
                        std::int64_t p) {
  int total = 0;
  for (const Elem x : c.members) total += cocone.at(x).cols();
  FpMatrix C(w_dim, total, p);
  int col = 0;
  for (const Elem x : c.members) {
    const FpMatrix& b = cocone.at(x);
    if (b.rows() != w_dim) throw DimensionMismatch("cocone component height mismatch");
    for (int r = 0; r < b.rows(); ++r)
      for (int j = 0; j < b.cols(); ++j) C.set(r, col + j, b.at(r, j));
    col += b.cols();
  }
  if (C.cols() != c.stacked.cols()) throw DimensionMismatch("cocone width mismatch");
  // Unique M with M * stacked = C; transpose to use column solving.
  const FpMatrix Mt = c.stacked.transposed().solve(C.transposed());
  return Mt.transposed();
}

FpMatrix colimit_map(const Colimit& A, const Colimit& B, std::int64_t p) {
  std::map<Elem, FpMatrix> cocone;
  for (const Elem x : A.members) cocone[x] = B.proj.at(x);
  return colimit_factor(A, cocone, B.dim, p);
}

BitRow lessthan_mask(const Poset& P, Elem a) { return P.strict_down(a); }

BitRow cofinal_mask(const Poset& P, Elem a, const SearchBudget& budget) {
  const auto& pars = P.parents(a);
  if (static_cast<int>(pars.size()) > budget.parents_cap)
    throw SearchBudgetExceeded("lower covers of " + P.id(a) + " exceed the cap");
  BitRow out(P.size());
  for (std::uint32_t mask = 1; mask < (1u << pars.size()); ++mask) {
    std::vector<Elem> S;
    for (std::size_t i = 0; i < pars.size(); ++i)
      if ((mask >> i) & 1u) S.push_back(pars[i]);
    if (!has_common_ancestor(P, S)) continue;
    const auto prod = product(P, S);
    if (!prod)
      throw NotSemilattice("lower covers of " + P.id(a) + " lack a product");
    out.set(*prod);
  }
  return out;
}

Colimit colimit_below(const VectFunctor& G, Elem a, bool use_cofinal,
                      const SearchBudget& budget) {
  const BitRow mask = use_cofinal ? cofinal_mask(*G.P, a, budget) : lessthan_mask(*G.P, a);
  return colimit(G, mask, use_cofinal);
}

std::vector<FpMatrix> radical_bases(const VectFunctor& G) {
  const Poset& P = *G.P;
  std::vector<FpMatrix> out;
  out.reserve(P.size());
  for (Elem a = 0; a < P.size(); ++a) {
    FpMatrix stacked(G.dims[a], 0, G.p);
    for (const Elem q : P.parents(a)) stacked = stacked.hstack(G.cover_map(q, a));
    out.push_back(stacked.image_basis());
  }
  return out;
}

std::vector<int> radical_dims(const VectFunctor& G) {
  std::vector<int> out;
  for (const auto& b : radical_bases(G)) out.push_back(b.cols());
  return out;
}

std::vector<int> radical_quotient_dims(const VectFunctor& G) {
  const auto rad = radical_dims(G);
  std::vector<int> out(rad.size());
  for (std::size_t a = 0; a < rad.size(); ++a) out[a] = G.dims[a] - rad[a];
  return out;
}

MinimalCover minimal_cover(const VectFunctor& G) {
  const Poset& P = *G.P;
  const auto rad = radical_bases(G);
  BettiDiagram beta(P.size(), 0);
  std::vector<FpMatrix> complement(P.size());
  for (Elem a = 0; a < P.size(); ++a) {
    const FpMatrix full = complete_basis(rad[a]);
    const int r = rad[a].cols();
    complement[a] = full.submatrix(0, r, G.dims[a], G.dims[a] - r);
    beta[a] = G.dims[a] - r;
  }
  MinimalCover mc;
  mc.cover = make_free(P, G.p, beta);
  mc.pi.reserve(P.size());
  for (Elem a = 0; a < P.size(); ++a) {
    FpMatrix pa(G.dims[a], mc.cover.F.dims[a], G.p);
    int col = 0;
    for (const Elem b : P.down(a).members()) {
      if (beta[b] == 0) continue;
      const FpMatrix img = G.map(b, a) * complement[b];
      for (int r = 0; r < pa.rows(); ++r)
        for (int j = 0; j < img.cols(); ++j) pa.set(r, col + j, img.at(r, j));
      col += beta[b];
    }
    if (pa.rank() != G.dims[a])
      throw PreconditionFailed("cover fails to surject at " + P.id(a));
    mc.pi.push_back(std::move(pa));
  }
  return mc;
}

Subfunctor kernel_functor(const VectFunctor& F, const VectFunctor& G,
                          const std::vector<FpMatrix>& phi) {
  const Poset& P = *F.P;
  Subfunctor out;
  out.incl.reserve(P.size());
  std::vector<int> kdims(P.size());
  for (Elem a = 0; a < P.size(); ++a) {
    if (phi[a].rows() != G.dims[a] || phi[a].cols() != F.dims[a])
      throw ShapeMismatch("kernel: component shape mismatch at " + P.id(a));
    out.incl.push_back(phi[a].kernel_basis());
    kdims[a] = out.incl[a].cols();
  }
  std::map<std::pair<Elem, Elem>, FpMatrix> maps;
  for (const auto& [lo, hi] : P.cover_pairs())
    maps.emplace(std::pair<Elem, Elem>{lo, hi},
                 out.incl[hi].solve(F.cover_map(lo, hi) * out.incl[lo]));
  out.K = make_functor(P, F.p, std::move(kdims), std::move(maps));
  validate_functor(out.K);
  return out;
}

Resolution minimal_resolution(const VectFunctor& G, int length) {
  if (length < 0) throw PreconditionFailed("resolution length must be non-negative");
  Resolution res;
  VectFunctor cur = G;
  std::vector<FpMatrix> prev_incl;
  for (int step = 0; step <= length; ++step) {
    MinimalCover mc = minimal_cover(cur);
    res.betti.push_back(mc.cover.betti);
    std::vector<FpMatrix> d;
    if (step == 0) {
      d = mc.pi;
    } else {
      d.reserve(G.P->size());
      for (Elem a = 0; a < G.P->size(); ++a) d.push_back(prev_incl[a] * mc.pi[a]);
    }
    res.maps.push_back(std::move(d));
    Subfunctor ker = kernel_functor(mc.cover.F, cur, mc.pi);
    res.steps.push_back(std::move(mc.cover));
    bool zero = true;
    for (const int kd : ker.K.dims)
      if (kd != 0) zero = false;
    if (zero) {
      res.complete = true;
      break;
    }
    cur = std::move(ker.K);
    prev_incl = std::move(ker.incl);
  }
  // The composite of consecutive differentials must vanish.
  for (std::size_t k = 1; k < res.maps.size(); ++k)
    for (Elem a = 0; a < G.P->size(); ++a)
      if (!(res.maps[k - 1][a] * res.maps[k][a]).is_zero())
        throw PreconditionFailed("resolution differentials fail to compose to zero");
  return res;
}

BettiDiagram betti_resolution(const VectFunctor& G, int i) {
  if (i < 0) throw PreconditionFailed("negative homological degree");
  const Resolution res = minimal_resolution(G, i);
  if (i < static_cast<int>(res.betti.size())) return res.betti[i];
  return BettiDiagram(G.P->size(), 0);
}

KoszulComplex koszul_complex(const VectFunctor& G, Elem a, const SearchBudget& budget) {
  const Poset& P = *G.P;
  const auto& pars = P.parents(a);
  const int np = static_cast<int>(pars.size());
  if (np > budget.parents_cap)
    throw SearchBudgetExceeded("lower covers of " + P.id(a) + " exceed the cap");

  KoszulComplex K;
  K.a = a;
  // Subsets of lower covers with a common ancestor, grouped by size; the
  // position bitmask keeps members sorted by parent index.
  std::vector<std::vector<std::uint32_t>> by_size(np + 1);
  std::vector<std::map<std::uint32_t, int>> index_of(np + 1);
  std::map<std::uint32_t, Colimit> colim;
  std::map<std::uint32_t, BitRow> masks;
  for (std::uint32_t sub = 1; sub < (1u << np); ++sub) {
    BitRow anc = BitRow::all(P.size());
    for (int i = 0; i < np; ++i)
      if ((sub >> i) & 1u) anc &= P.down(pars[i]);
    if (anc.none()) continue;
    const int k = __builtin_popcount(sub);
    index_of[k][sub] = static_cast<int>(by_size[k].size());
    by_size[k].push_back(sub);
    masks[sub] = anc;
  }
  int kmax = 0;
  for (int k = 1; k <= np; ++k)
    if (!by_size[k].empty()) kmax = k;

  K.dims.assign(kmax + 1, 0);
  K.dims[0] = G.dims[a];
  K.summands.assign(kmax + 1, {});
  K.summand_dims.assign(kmax + 1, {});
  std::vector<std::vector<int>> offsets(kmax + 1);
  for (int k = 1; k <= kmax; ++k) {
    int off = 0;
    for (const std::uint32_t sub : by_size[k]) {
      colim[sub] = colimit(G, masks[sub], true);
      offsets[k].push_back(off);
      off += colim[sub].dim;
      std::vector<int> positions;
      for (int i = 0; i < np; ++i)
        if ((sub >> i) & 1u) positions.push_back(i);
      K.summands[k].push_back(std::move(positions));
      K.summand_dims[k].push_back(colim[sub].dim);
    }
    K.dims[k] = off;
  }

  K.differential.clear();
  if (kmax >= 1) {
    // Degree 1 -> 0: factor the cocone of structure maps into G(a).
    FpMatrix d0(K.dims[0], K.dims[1], G.p);
    for (std::size_t s = 0; s < by_size[1].size(); ++s) {
      const std::uint32_t sub = by_size[1][s];
      std::map<Elem, FpMatrix> cocone;
      for (const Elem x : colim[sub].members) cocone[x] = G.map(x, a);
      const FpMatrix block = colimit_factor(colim[sub], cocone, K.dims[0], G.p);
      for (int r = 0; r < block.rows(); ++r)
        for (int j = 0; j < block.cols(); ++j) d0.set(r, offsets[1][s] + j, block.at(r, j));
    }
    K.differential.push_back(std::move(d0));
  }
  for (int k = 1; k < kmax; ++k) {
    FpMatrix d(K.dims[k], K.dims[k + 1], G.p);
    for (std::size_t s = 0; s < by_size[k + 1].size(); ++s) {
      const std::uint32_t sub = by_size[k + 1][s];
      std::vector<int> positions;
      for (int i = 0; i < np; ++i)
        if ((sub >> i) & 1u) positions.push_back(i);
      for (std::size_t j = 0; j < positions.size(); ++j) {
        const std::uint32_t tgt = sub & ~(1u << positions[j]);
        const int t = index_of[k].at(tgt);
        const FpMatrix block = colimit_map(colim[sub], colim[tgt], G.p);
        const std::int64_t sign = (j % 2 == 0) ? 1 : G.p - 1;
        for (int r = 0; r < block.rows(); ++r)
          for (int c = 0; c < block.cols(); ++c) {
            const int rr = offsets[k][t] + r;
            const int cc = offsets[k + 1][s] + c;
            d.set(rr, cc, d.at(rr, cc) + sign * block.at(r, c));
          }
      }
    }
    K.differential.push_back(std::move(d));
  }
  for (std::size_t k = 1; k < K.differential.size(); ++k)
    if (!(K.differential[k - 1] * K.differential[k]).is_zero())
      throw PreconditionFailed("complex differentials fail to compose to zero");
  return K;
}

std::vector<int> koszul_homology_dims(const KoszulComplex& K) {
  const int top = static_cast<int>(K.dims.size()) - 1;
  std::vector<int> h(top + 1, 0);
  auto rank_of = [&](int k) {  // rank of the map from degree k+1 into degree k
    if (k < 0 || k >= static_cast<int>(K.differential.size())) return 0;
    return K.differential[k].rank();
  };
  for (int k = 0; k <= top; ++k) {
    const int out_rank = k == 0 ? 0 : rank_of(k - 1);
    h[k] = K.dims[k] - out_rank - rank_of(k);
  }
  return h;
}

bool parent_products_exist(const Poset& P, Elem a, const SearchBudget& budget) {
  const auto& pars = P.parents(a);
  if (static_cast<int>(pars.size()) > budget.parents_cap)
    throw SearchBudgetExceeded("lower covers of " + P.id(a) + " exceed the cap");
  for (std::uint32_t sub = 1; sub < (1u << pars.size()); ++sub) {
    std::vector<Elem> S;
    for (std::size_t i = 0; i < pars.size(); ++i)
      if ((sub >> i) & 1u) S.push_back(pars[i]);
    if (!has_common_ancestor(P, S)) continue;
    if (!product(P, S)) return false;
  }
  return true;
}

int betti_koszul(const VectFunctor& G, Elem a, int i, const SearchBudget& budget) {
  if (i < 0) throw PreconditionFailed("negative homological degree");
  if (i > 2 && !parent_products_exist(*G.P, a, budget))
    throw KoszulValidityUnknown("degree " + std::to_string(i) + " at " + G.P->id(a) +
                                " needs products of lower covers");
  const auto h = koszul_homology_dims(koszul_complex(G, a, budget));
  return i < static_cast<int>(h.size()) ? h[i] : 0;
}

ExactnessReport exactness_report(const VectFunctor& F, const VectFunctor& G,
                                 const VectFunctor& H, const std::vector<FpMatrix>& phi,
                                 const std::vector<FpMatrix>& psi, Elem a,
                                 const SearchBudget& budget) {
  const Poset& P = *G.P;
  if (F.P != G.P || G.P != H.P) throw PreconditionFailed("functors live on different posets");
  Nat nphi{&F, &G, phi}, npsi{&G, &H, psi};
  validate_nat(nphi);
  validate_nat(npsi);
  for (Elem x = 0; x < P.size(); ++x) {
    if (phi[x].rank() != F.dims[x]) throw NotExact("first map not injective at " + P.id(x));
    if (psi[x].rank() != H.dims[x]) throw NotExact("second map not surjective at " + P.id(x));
    if (!(psi[x] * phi[x]).is_zero()) throw NotExact("composite non-zero at " + P.id(x));
    if (G.dims[x] != F.dims[x] + H.dims[x]) throw NotExact("dimensions not additive at " + P.id(x));
  }
  const KoszulComplex KF = koszul_complex(F, a, budget);
  const KoszulComplex KG = koszul_complex(G, a, budget);
  const KoszulComplex KH = koszul_complex(H, a, budget);
  const std::size_t deg =
      std::max({KF.dims.size(), KG.dims.size(), KH.dims.size()});
  auto dim_at = [](const KoszulComplex& K, std::size_t k) {
    return k < K.dims.size() ? K.dims[k] : 0;
  };
  ExactnessReport rep;
  bool all_additive = true;
  for (std::size_t k = 0; k < deg; ++k) {
    const bool add = dim_at(KG, k) == dim_at(KF, k) + dim_at(KH, k);
    rep.degree_additive.push_back(add);
    all_additive = all_additive && add;
  }
  rep.h_sub = koszul_homology_dims(KF);
  rep.h_mid = koszul_homology_dims(KG);
  rep.h_quot = koszul_homology_dims(KH);
  auto euler = [](const std::vector<int>& h) {
    int e = 0;
    for (std::size_t k = 0; k < h.size(); ++k) e += (k % 2 == 0 ? 1 : -1) * h[k];
    return e;
  };
  rep.euler_consistent =
      !all_additive || euler(rep.h_mid) == euler(rep.h_sub) + euler(rep.h_quot);
  return rep;
}

}  // namespace rp
