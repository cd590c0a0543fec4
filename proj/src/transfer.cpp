#include "realposet/transfer.hpp"

#include <algorithm>
#include <map>

namespace rp {

Transfer transfer_of_function(const Poset& I, const Poset& J, const std::vector<Elem>& to) {
  if (static_cast<int>(to.size()) != I.size())
    throw DimensionMismatch("function table does not cover the source");
  Transfer t;
  t.I = &I;
  t.J = &J;
  t.of.assign(J.size(), -1);
  for (Elem a = 0; a < J.size(); ++a) {
    std::vector<Elem> S;
    for (Elem x = 0; x < I.size(); ++x)
      if (J.leq(to[x], a)) S.push_back(x);
    if (S.empty()) continue;
    const auto j = coproduct(I, S);
    if (!j) throw NotSemilattice("join of the preimage below " + J.id(a) + " does not exist");
    t.of[a] = *j;
  }
  // The table is monotone even for non-monotone inputs: a <= b only enlarges
  // the preimage, hence the join can only go up.
  for (Elem a = 0; a < J.size(); ++a)
    for (Elem b = 0; b < J.size(); ++b)
      if (J.leq(a, b) && t.of[a] != -1 && (t.of[b] == -1 || !I.leq(t.of[a], t.of[b])))
        throw PreconditionFailed("transfer table is not monotone");
  return t;
}

Transfer transfer_of(const MonotoneMap& f) { return transfer_of_function(*f.src, *f.tgt, f.to); }

bool TransferProps::all_applicable_hold() const {
  for (const auto& it : items)
    if (it.applicable && !it.holds) return false;
  return true;
}

TransferProps check_transfer_props(const MonotoneMap& f) {
  const Poset& I = *f.src;
  const Poset& J = *f.tgt;
  const Transfer t = transfer_of(f);
  TransferProps rep;
  auto add = [&rep](const std::string& name, bool applicable, bool holds,
                    const std::string& detail) {
    rep.items.push_back({name, applicable, holds, applicable && !holds ? detail : ""});
  };

  {  // x <= transfer(f(x)) for every x
    bool ok = true;
    std::string det;
    for (Elem x = 0; x < I.size() && ok; ++x)
      if (t.of[f.to[x]] == -1 || !I.leq(x, t.of[f.to[x]])) {
        ok = false;
        det = "fails at " + I.id(x);
      }
    add("unit_below_transfer", true, ok, det);
  }
  {  // f(transfer(a)) <= a whenever the transfer is defined
    bool ok = true;
    std::string det;
    for (Elem a = 0; a < J.size() && ok; ++a)
      if (t.of[a] != -1 && !J.leq(f.to[t.of[a]], a)) {
        ok = false;
        det = "fails at " + J.id(a);
      }
    add("counit_above_image", true, ok, det);
  }
  {  // transfer(a) is the greatest element with image below a
    bool ok = true;
    std::string det;
    for (Elem a = 0; a < J.size() && ok; ++a) {
      if (t.of[a] != -1 && !J.leq(f.to[t.of[a]], a)) {
        ok = false;
        det = "transfer of " + J.id(a) + " leaves the preimage set";
        break;
      }
      for (Elem x = 0; x < I.size() && ok; ++x)
        if (J.leq(f.to[x], a) && (t.of[a] == -1 || !I.leq(x, t.of[a]))) {
          ok = false;
          det = I.id(x) + " not below the transfer of " + J.id(a);
        }
    }
    add("transfer_is_greatest_in_preimage", true, ok, det);
  }
  {  // transfer . f . transfer = transfer
    bool ok = true;
    std::string det;
    for (Elem a = 0; a < J.size() && ok; ++a) {
      if (t.of[a] == -1) continue;  // both sides collapse to the added bottom
      if (t.of[f.to[t.of[a]]] != t.of[a]) {
        ok = false;
        det = "fails at " + J.id(a);
      }
    }
    add("transfer_idempotent", true, ok, det);
  }
  {  // f . transfer . f = f
    bool ok = true;
    std::string det;
    for (Elem x = 0; x < I.size() && ok; ++x) {
      const Elem ta = t.of[f.to[x]];
      if (ta == -1 || f.to[ta] != f.to[x]) {
        ok = false;
        det = "fails at " + I.id(x);
      }
    }
    add("map_transfer_map_identity", true, ok, det);
  }
  {  // f(transfer(a)) is least among b with the same preimage down-set
    bool ok = true;
    std::string det;
    std::vector<BitRow> pre(J.size(), BitRow(I.size()));
    for (Elem a = 0; a < J.size(); ++a)
      for (Elem x = 0; x < I.size(); ++x)
        if (J.leq(f.to[x], a)) pre[a].set(x);
    for (Elem a = 0; a < J.size() && ok; ++a) {
      if (t.of[a] == -1) continue;  // the added bottom is least for empty preimages
      const Elem m = f.to[t.of[a]];
      if (!(pre[m] == pre[a])) {
        ok = false;
        det = "image of transfer changes the preimage of " + J.id(a);
        break;
      }
      for (Elem b = 0; b < J.size() && ok; ++b)
        if (pre[b] == pre[a] && !J.leq(m, b)) {
          ok = false;
          det = "not least at " + J.id(a) + " vs " + J.id(b);
        }
    }
    add("image_of_transfer_least_in_fibre", true, ok, det);
  }
  {  // equal preimage down-sets exactly when equal transfers
    bool ok = true;
    std::string det;
    std::vector<BitRow> pre(J.size(), BitRow(I.size()));
    for (Elem a = 0; a < J.size(); ++a)
      for (Elem x = 0; x < I.size(); ++x)
        if (J.leq(f.to[x], a)) pre[a].set(x);
    for (Elem a = 0; a < J.size() && ok; ++a)
      for (Elem b = a + 1; b < J.size() && ok; ++b)
        if ((pre[a] == pre[b]) != (t.of[a] == t.of[b])) {
          ok = false;
          det = "mismatch on " + J.id(a) + ", " + J.id(b);
        }
    add("preimage_determines_transfer", true, ok, det);
  }
  {  // injective maps are split by their transfer
    const bool applicable = is_injective(f);
    bool ok = true;
    std::string det;
    if (applicable)
      for (Elem x = 0; x < I.size() && ok; ++x)
        if (t.of[f.to[x]] != x) {
          ok = false;
          det = "fails at " + I.id(x);
        }
    add("injective_split", applicable, ok, det);
  }
  {  // surjective maps retract onto the target via the transfer
    const bool applicable = is_surjective(f);
    bool ok = true;
    std::string det;
    if (applicable)
      for (Elem a = 0; a < J.size() && ok; ++a)
        if (t.of[a] == -1 || f.to[t.of[a]] != a) {
          ok = false;
          det = "fails at " + J.id(a);
        }
    add("surjective_retract", applicable, ok, det);
  }
  return rep;
}

VectFunctor kan_extend_hom(const VectFunctor& G, const MonotoneMap& f) {
  if (!is_homomorphism(f)) throw NotHomomorphism("extension along a non-join-preserving map");
  const Poset& J = *f.tgt;
  const Transfer t = transfer_of(f);
  std::vector<int> dims(J.size(), 0);
  for (Elem a = 0; a < J.size(); ++a) dims[a] = t.of[a] == -1 ? 0 : G.dims[t.of[a]];
  std::map<std::pair<Elem, Elem>, FpMatrix> maps;
  for (const auto& [lo, hi] : J.cover_pairs()) {
    if (t.of[lo] == -1)
      maps.emplace(std::pair<Elem, Elem>{lo, hi}, FpMatrix(dims[hi], 0, G.p));
    else
      maps.emplace(std::pair<Elem, Elem>{lo, hi}, G.map(t.of[lo], t.of[hi]));
  }
  return make_functor(J, G.p, std::move(dims), std::move(maps));
}

namespace {

BitRow preimage_below(const MonotoneMap& f, Elem a) {
  BitRow mask(f.src->size());
  for (Elem x = 0; x < f.src->size(); ++x)
    if (f.tgt->leq(f.to[x], a)) mask.set(x);
  return mask;
}

}  // namespace

VectFunctor kan_extend_general(const VectFunctor& G, const MonotoneMap& f) {
  const Poset& J = *f.tgt;
  std::vector<Colimit> cols;
  cols.reserve(J.size());
  for (Elem a = 0; a < J.size(); ++a) cols.push_back(colimit(G, preimage_below(f, a)));
  std::vector<int> dims(J.size(), 0);
  for (Elem a = 0; a < J.size(); ++a) dims[a] = cols[a].dim;
  std::map<std::pair<Elem, Elem>, FpMatrix> maps;
  for (const auto& [lo, hi] : J.cover_pairs())
    maps.emplace(std::pair<Elem, Elem>{lo, hi}, colimit_map(cols[lo], cols[hi], G.p));
  VectFunctor out = make_functor(J, G.p, std::move(dims), std::move(maps));
  validate_functor(out);
  return out;
}

std::vector<FpMatrix> kan_comparison(const VectFunctor& G, const MonotoneMap& f) {
  if (!is_homomorphism(f)) throw NotHomomorphism("comparison needs a join-preserving map");
  const Poset& J = *f.tgt;
  const Transfer t = transfer_of(f);
  std::vector<FpMatrix> out;
  out.reserve(J.size());
  for (Elem a = 0; a < J.size(); ++a) {
    const BitRow mask = preimage_below(f, a);
    const Colimit col = colimit(G, mask);
    if (t.of[a] == -1) {
      out.push_back(FpMatrix(0, col.dim, G.p));
      continue;
    }
    std::map<Elem, FpMatrix> cocone;
    for (const Elem x : col.members) cocone[x] = G.map(x, t.of[a]);
    out.push_back(colimit_factor(col, cocone, G.dims[t.of[a]], G.p));
  }
  return out;
}

AdjunctionReport adjunction_check(const MonotoneMap& f, const VectFunctor& G,
                                  const VectFunctor& F) {
  if (!is_homomorphism(f)) throw NotHomomorphism("adjunction needs a join-preserving map");
  const Poset& I = *f.src;
  const Poset& J = *f.tgt;
  if (G.P != &I || F.P != &J) throw PreconditionFailed("functor posets do not match the map");
  if (G.p != F.p) throw DimensionMismatch("functors over different fields");
  const Transfer t = transfer_of(f);

  const VectFunctor L = kan_extend_hom(G, f);
  // Restriction of F along f.
  std::vector<int> rdims(I.size());
  for (Elem x = 0; x < I.size(); ++x) rdims[x] = F.dims[f.to[x]];
  std::map<std::pair<Elem, Elem>, FpMatrix> rmaps;
  for (const auto& [lo, hi] : I.cover_pairs())
    rmaps.emplace(std::pair<Elem, Elem>{lo, hi}, F.map(f.to[lo], f.to[hi]));
  const VectFunctor R = make_functor(I, F.p, std::move(rdims), std::move(rmaps));
  validate_functor(R);

  AdjunctionReport rep;
  rep.dim_extended_side = nat_space_dim(L, F);
  rep.dim_restricted_side = nat_space_dim(G, R);

  auto bar = [&](const std::vector<FpMatrix>& phi) {
    std::vector<FpMatrix> out;
    out.reserve(I.size());
    for (Elem x = 0; x < I.size(); ++x)
      out.push_back(phi[f.to[x]] * G.map(x, t.of[f.to[x]]));
    return out;
  };
  auto hat = [&](const std::vector<FpMatrix>& psi) {
    std::vector<FpMatrix> out;
    out.reserve(J.size());
    for (Elem a = 0; a < J.size(); ++a) {
      if (t.of[a] == -1) {
        out.push_back(FpMatrix(F.dims[a], 0, F.p));
        continue;
      }
      out.push_back(F.map(f.to[t.of[a]], a) * psi[t.of[a]]);
    }
    return out;
  };

  bool ok = rep.dim_extended_side == rep.dim_restricted_side;
  if (ok)
    for (const auto& phi : nat_space_basis(L, F)) {
      const auto round = hat(bar(phi));
      for (Elem a = 0; a < J.size(); ++a)
        if (!(round[a] == phi[a])) ok = false;
      const Nat crossed{&G, &R, bar(phi)};
      validate_nat(crossed);
    }
  if (ok)
    for (const auto& psi : nat_space_basis(G, R)) {
      const auto round = bar(hat(psi));
      for (Elem x = 0; x < I.size(); ++x)
        if (!(round[x] == psi[x])) ok = false;
      const Nat crossed{&L, &F, hat(psi)};
      validate_nat(crossed);
    }
  rep.bijective = ok;
  return rep;
}

std::vector<FibreBlock> transfer_fibres(const MonotoneMap& f) {
  const Poset& J = *f.tgt;
  std::map<std::vector<int>, std::vector<Elem>> groups;
  for (Elem a = 0; a < J.size(); ++a) groups[preimage_below(f, a).members()].push_back(a);
  std::vector<FibreBlock> out;
  for (auto& [key, members] : groups) {
    FibreBlock blk;
    blk.members = members;
    BitRow in_block(J.size());
    for (const Elem b : members) in_block.set(b);
    blk.convex = true;
    for (const Elem x : members)
      for (const Elem y : members) {
        if (!J.leq(x, y)) continue;
        const BitRow interval = J.up(x) & J.down(y);
        if (!interval.is_subset_of(in_block)) blk.convex = false;
      }
    for (const Elem m : members) {
      bool least = true;
      for (const Elem b : members)
        if (!J.leq(m, b)) least = false;
      if (least) {
        blk.least = m;
        break;
      }
    }
    out.push_back(std::move(blk));
  }
  std::sort(out.begin(), out.end(),
            [](const FibreBlock& a, const FibreBlock& b) { return a.members[0] < b.members[0]; });
  return out;
}

DownClosedGrid as_down_closed(const Grid& grid) {
  const Poset& I = *grid.I;
  if (!is_upper_semilattice(I)) throw NotSemilattice("grid base poset must be a semilattice");
  if (!is_consistent(I)) throw PreconditionFailed("grid base poset must be consistent");
  BitRow dmask(I.size());
  for (const Elem d : grid.spec.D) dmask.set(d);
  Elem top = -1;
  for (const Elem d : grid.spec.D)
    if (dmask.is_subset_of(I.down(d))) top = d;
  if (top == -1 || !(dmask == I.down(top)))
    throw PreconditionFailed("grid bases must form a principal down-set");
  return DownClosedGrid{&grid, top};
}

std::optional<Elem> grid_transfer(const DownClosedGrid& g, const RealPoint& p) {
  const Grid& grid = *g.grid;
  const Poset& I = *grid.I;
  validate_point(I, p);
  const Elem a = p.base;
  const Elem d = g.top;
  const auto supp = p.support();

  BitRow anc = I.down(a) & I.down(d);
  for (const Elem s : supp) anc &= I.down(s);
  if (anc.none()) return std::nullopt;

  const std::vector<Rat>& V = grid.spec.V;
  const Rat v0 = V.empty() ? Rat(0) : *std::min_element(V.begin(), V.end());
  std::vector<Elem> S;
  for (const Elem x : I.parents(a))
    if (p.at(x) < v0) S.push_back(x);
  Elem c;
  if (S.empty()) {
    c = *product(I, {a, d});
  } else {
    const Elem meetS = *product(I, S);
    c = *product(I, {meetS, d});
  }

  RealPoint out;
  out.base = c;
  for (const Elem y : I.parents(c)) {
    bool b_empty = true;
    Rat mn(0);
    for (const Elem x : I.parents(a)) {
      if (!I.leq(y, x)) continue;
      if (I.leq(c, x)) continue;
      const Rat v = p.at(x);
      if (b_empty || v < mn) mn = v;
      b_empty = false;
    }
    if (b_empty) continue;   // coordinate 0
    if (mn == Rat(0)) continue;  // zero rounds to zero, not into V
    Rat best(0);
    bool found = false;
    for (const Rat& v : V)
      if (v <= mn && (!found || v > best)) {
        best = v;
        found = true;
      }
    if (found) out.coords[y] = best;
  }
  const auto idx = grid.find(out);
  if (!idx) throw PreconditionFailed("computed point missing from the grid");
  return idx;
}

}  // namespace rp
