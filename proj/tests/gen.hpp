#pragma once

// Deterministic random instances for property tests: posets, semilattices
// built from union-closed set families, join-preserving maps between them,
// functors presented as cokernels of maps of free functors, natural
// transformations, and pointwise short exact sequences.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "realposet/functor.hpp"
#include "realposet/homology.hpp"
#include "realposet/poset.hpp"

namespace tg {

using rp::BitRow;
using rp::Elem;
using rp::FpMatrix;
using rp::MonotoneMap;
using rp::Poset;
using rp::VectFunctor;

using Rng = std::mt19937;

inline int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random poset on up to max_n elements: random edges on a linear order,
// closed transitively. Ids "e0", "e1", ...
inline Poset random_poset(Rng& rng, int max_n, int percent = 25) {
  const int n = pick(rng, 1, max_n);
  std::vector<BitRow> down;
  down.reserve(n);
  for (int i = 0; i < n; ++i) {
    BitRow row(n);
    row.set(i);
    for (int j = 0; j < i; ++j)
      if (pick(rng, 0, 99) < percent) row |= down[j];
    down.push_back(row);
  }
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back("e" + std::to_string(i));
  return Poset::from_relation(std::move(ids), down);
}

// Poset of a union-closed family of subsets of a small universe, ordered by
// inclusion. Always an upper semilattice: the join of two members is their
// union, which the closure guarantees to be a member.
inline Poset family_poset(std::vector<std::uint32_t> family) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  const int n = static_cast<int>(family.size());
  std::vector<BitRow> down;
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) {
    BitRow row(n);
    for (int j = 0; j < n; ++j)
      if ((family[j] & family[i]) == family[j]) row.set(j);
    down.push_back(row);
    ids.push_back("s" + std::to_string(family[i]));
  }
  return Poset::from_relation(std::move(ids), down);
}

inline std::vector<std::uint32_t> union_closure(std::vector<std::uint32_t> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t m = gens.size();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        const std::uint32_t u = gens[i] | gens[j];
        if (std::find(gens.begin(), gens.end(), u) == gens.end()) {
          gens.push_back(u);
          grew = true;
        }
      }
    std::sort(gens.begin(), gens.end());
  }
  return gens;
}

// Random upper semilattice with at most max_n elements.
inline std::vector<std::uint32_t> random_family(Rng& rng, int max_n, int universe = 5) {
  for (;;) {
    std::vector<std::uint32_t> gens;
    const int k = pick(rng, 1, 4);
    for (int i = 0; i < k; ++i)
      gens.push_back(static_cast<std::uint32_t>(pick(rng, 0, (1 << universe) - 1)));
    auto fam = union_closure(std::move(gens));
    if (static_cast<int>(fam.size()) <= max_n) return fam;
  }
}

inline Poset random_semilattice(Rng& rng, int max_n, int universe = 5) {
  return family_poset(random_family(rng, max_n, universe));
}

// Join-preserving map between semilattices of set families: either an
// inclusion of a subfamily into a larger closure, or A -> A | T into the
// translated closure. Both send unions to unions.
struct HomInstance {
  std::shared_ptr<Poset> I, J;
  MonotoneMap f;
};

inline HomInstance random_homomorphism(Rng& rng, int max_src = 10, int universe = 5) {
  const auto fam = random_family(rng, max_src, universe);
  const bool translate = pick(rng, 0, 1) == 1;
  const std::uint32_t T =
      translate ? static_cast<std::uint32_t>(pick(rng, 0, (1 << universe) - 1)) : 0;

  std::vector<std::uint32_t> target_gens;
  for (const auto m : fam) target_gens.push_back(m | T);
  const int extras = pick(rng, 0, 2);
  for (int i = 0; i < extras; ++i)
    target_gens.push_back(static_cast<std::uint32_t>(pick(rng, 0, (1 << universe) - 1)));
  const auto tfam = union_closure(std::move(target_gens));

  HomInstance h;
  h.I = std::make_shared<Poset>(family_poset(fam));
  h.J = std::make_shared<Poset>(family_poset(tfam));
  std::vector<std::pair<std::string, std::string>> assignment;
  for (const auto m : fam)
    assignment.emplace_back("s" + std::to_string(m), "s" + std::to_string(m | T));
  h.f = rp::make_map(*h.I, *h.J, assignment);
  return h;
}

// Random monotone (not necessarily join-preserving) map, built upward along
// a linear extension; retries until every element has an eligible image.
inline std::optional<MonotoneMap> random_monotone(Rng& rng, const Poset& I, const Poset& J) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<Elem> to(I.size(), -1);
    bool ok = true;
    for (const Elem x : I.topo()) {
      BitRow eligible = BitRow::all(J.size());
      for (const Elem p : I.parents(x)) eligible &= J.up(to[p]);
      const auto choices = eligible.members();
      if (choices.empty()) {
        ok = false;
        break;
      }
      to[x] = choices[pick(rng, 0, static_cast<int>(choices.size()) - 1)];
    }
    if (!ok) continue;
    MonotoneMap f{&I, &J, std::move(to)};
    return f;
  }
  return std::nullopt;
}

// Quotient of F by the image of a natural collection of maps into it: the
// projections are cokernel projections, the structure maps are induced.
struct QuotientFunctor {
  VectFunctor Q;
  std::vector<FpMatrix> proj;
};

inline QuotientFunctor quotient_functor(const VectFunctor& F, const std::vector<FpMatrix>& phi) {
  const Poset& P = *F.P;
  QuotientFunctor out;
  out.proj.reserve(P.size());
  std::vector<int> dims(P.size());
  for (Elem a = 0; a < P.size(); ++a) {
    out.proj.push_back(phi[a].cokernel_projection());
    dims[a] = out.proj.back().rows();
  }
  std::map<std::pair<Elem, Elem>, FpMatrix> maps;
  for (const auto& [lo, hi] : P.cover_pairs()) {
    const FpMatrix lift = out.proj[lo].right_inverse();
    maps[{lo, hi}] = out.proj[hi] * F.cover_map(lo, hi) * lift;
  }
  out.Q = rp::make_functor(P, F.p, std::move(dims), std::move(maps));
  rp::validate_functor(out.Q);
  return out;
}

inline std::vector<FpMatrix> random_nat(Rng& rng, const VectFunctor& F, const VectFunctor& G) {
  const auto basis = rp::nat_space_basis(F, G);
  std::vector<FpMatrix> comp;
  for (Elem a = 0; a < F.P->size(); ++a)
    comp.push_back(FpMatrix::zero(G.dims[a], F.dims[a], F.p));
  for (const auto& vec : basis) {
    const int c = pick(rng, 0, static_cast<int>(F.p) - 1);
    if (c == 0) continue;
    for (Elem a = 0; a < F.P->size(); ++a) comp[a] = comp[a] + vec[a].scaled(c);
  }
  return comp;
}

// Random functor as the cokernel of a random map between free functors.
inline VectFunctor random_functor(Rng& rng, const Poset& P, std::int64_t p, int max_beta = 2) {
  rp::BettiDiagram b0(P.size()), b1(P.size());
  for (Elem a = 0; a < P.size(); ++a) {
    b0[a] = pick(rng, 0, max_beta);
    b1[a] = pick(rng, 0, max_beta);
  }
  const rp::FreeFunctor F0 = rp::make_free(P, p, b0);
  const rp::FreeFunctor F1 = rp::make_free(P, p, b1);
  const auto phi = random_nat(rng, F1.F, F0.F);
  return quotient_functor(F0.F, phi).Q;
}

// Pointwise short exact sequence: the kernel of a random natural map,
// included into its source, followed by the projection onto the quotient.
struct Ses {
  VectFunctor sub, mid, quot;
  std::vector<FpMatrix> incl, proj;
};

inline Ses random_ses(Rng& rng, const Poset& P, std::int64_t p) {
  const VectFunctor A = random_functor(rng, P, p);
  const VectFunctor B = random_functor(rng, P, p);
  const auto alpha = random_nat(rng, A, B);
  rp::Subfunctor K = rp::kernel_functor(A, B, alpha);
  QuotientFunctor Q = quotient_functor(A, K.incl);
  Ses s;
  s.sub = std::move(K.K);
  s.mid = A;
  s.quot = std::move(Q.Q);
  s.incl = std::move(K.incl);
  s.proj = std::move(Q.proj);
  return s;
}

// Same elements inserted in a shuffled order: ids survive, indices move.
inline Poset shuffled_copy(Rng& rng, const Poset& P) {
  std::vector<int> perm(P.size());
  for (int i = 0; i < P.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::string> ids;
  for (int i = 0; i < P.size(); ++i) ids.push_back(P.id(perm[i]));
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& [lo, hi] : P.cover_pairs()) covers.emplace_back(P.id(lo), P.id(hi));
  return Poset::from_covers(std::move(ids), covers);
}

}  // namespace tg
