#include "realposet/poset.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace rp {

void Poset::intern(std::vector<std::string> ids) {
  ids_ = std::move(ids);
  by_id_.reserve(ids_.size());
  for (Elem i = 0; i < size(); ++i) {
    if (!by_id_.emplace(ids_[i], i).second)
      throw PreconditionFailed("duplicate element id: " + ids_[i]);
  }
}

Elem Poset::index(const std::string& id) const {
  const auto it = by_id_.find(id);
  if (it == by_id_.end()) throw UnknownElement("unknown element id: " + id);
  return it->second;
}

void Poset::finish_from_covers() {
  const int n = size();
  parents_.assign(n, {});
  children_.assign(n, {});
  for (const auto& [lo, hi] : covers_) {
    parents_[hi].push_back(lo);
    children_[lo].push_back(hi);
  }
  for (auto& v : parents_) std::sort(v.begin(), v.end());
  for (auto& v : children_) std::sort(v.begin(), v.end());

  // Kahn's algorithm with a min-heap for a deterministic linear extension.
  std::vector<int> indeg(n, 0);
  for (Elem x = 0; x < n; ++x) indeg[x] = static_cast<int>(parents_[x].size());
  std::priority_queue<Elem, std::vector<Elem>, std::greater<>> ready;
  for (Elem x = 0; x < n; ++x)
    if (indeg[x] == 0) ready.push(x);
  topo_.clear();
  topo_.reserve(n);
  while (!ready.empty()) {
    const Elem x = ready.top();
    ready.pop();
    topo_.push_back(x);
    for (const Elem c : children_[x])
      if (--indeg[c] == 0) ready.push(c);
  }
  if (static_cast<int>(topo_.size()) != n) throw CycleDetected("cover relation contains a cycle");

  down_.assign(n, BitRow(n));
  for (const Elem x : topo_) {
    down_[x].set(x);
    for (const Elem p : parents_[x]) down_[x] |= down_[p];
  }
  up_.assign(n, BitRow(n));
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    up_[*it].set(*it);
    for (const Elem c : children_[*it]) up_[*it] |= up_[c];
  }
}

Poset Poset::from_covers(std::vector<std::string> ids,
                         const std::vector<std::pair<std::string, std::string>>& covers) {
  Poset P;
  P.intern(std::move(ids));
  std::set<std::pair<Elem, Elem>> seen;
  for (const auto& [lo_id, hi_id] : covers) {
    const Elem lo = P.index(lo_id), hi = P.index(hi_id);
    if (lo == hi) throw CycleDetected("self-cover on element " + lo_id);
    if (!seen.insert({lo, hi}).second)
      throw PreconditionFailed("duplicate cover " + lo_id + " -> " + hi_id);
    P.covers_.push_back({lo, hi});
  }
  P.finish_from_covers();
  // A listed cover must have nothing strictly between its endpoints.
  for (const auto& [lo, hi] : P.covers_) {
    const BitRow interval = P.up_[lo] & P.down_[hi];
    if (interval.count() != 2)
      throw NotHasse("cover " + P.ids_[lo] + " -> " + P.ids_[hi] + " is not immediate");
  }
  return P;
}

Poset Poset::from_relation(std::vector<std::string> ids, const std::vector<BitRow>& down_rows) {
  Poset P;
  P.intern(std::move(ids));
  const int n = P.size();
  if (static_cast<int>(down_rows.size()) != n)
    throw PreconditionFailed("relation row count mismatch");
  for (Elem x = 0; x < n; ++x) {
    if (down_rows[x].size() != n) throw PreconditionFailed("relation row width mismatch");
    if (!down_rows[x].test(x)) throw PreconditionFailed("relation not reflexive at " + P.ids_[x]);
  }
  for (Elem y = 0; y < n; ++y)
    for (const Elem x : down_rows[y].members()) {
      if (x != y && down_rows[x].test(y))
        throw CycleDetected("relation not antisymmetric on " + P.ids_[x] + ", " + P.ids_[y]);
      if (!down_rows[x].is_subset_of(down_rows[y]))
        throw PreconditionFailed("relation not transitive at " + P.ids_[x] + " <= " + P.ids_[y]);
    }
  for (Elem y = 0; y < n; ++y)
    for (const Elem x : down_rows[y].members()) {
      if (x == y) continue;
      bool covered = true;
      for (const Elem z : down_rows[y].members()) {
        if (z != x && z != y && down_rows[z].test(x)) {
          covered = false;
          break;
        }
      }
      if (covered) P.covers_.push_back({x, y});
    }
  std::sort(P.covers_.begin(), P.covers_.end());
  P.finish_from_covers();
  return P;
}

BitRow Poset::strict_down(Elem x) const {
  BitRow b = down_[x];
  b.reset(x);
  return b;
}

BitRow Poset::strict_up(Elem x) const {
  BitRow b = up_[x];
  b.reset(x);
  return b;
}

std::vector<Elem> Poset::minimal_elements() const {
  std::vector<Elem> out;
  for (Elem x = 0; x < size(); ++x)
    if (parents_[x].empty()) out.push_back(x);
  return out;
}

std::vector<Elem> Poset::maximal_elements() const {
  std::vector<Elem> out;
  for (Elem x = 0; x < size(); ++x)
    if (children_[x].empty()) out.push_back(x);
  return out;
}

bool Poset::connected() const {
  const int n = size();
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::vector<Elem> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    const Elem x = stack.back();
    stack.pop_back();
    for (const auto& nbrs : {parents_[x], children_[x]})
      for (const Elem y : nbrs)
        if (!seen[y]) {
          seen[y] = true;
          ++reached;
          stack.push_back(y);
        }
  }
  return reached == n;
}

namespace {

// Common descendents of S, the whole poset for empty S.
BitRow descendent_mask(const Poset& P, const std::vector<Elem>& S) {
  BitRow m = BitRow::all(P.size());
  for (const Elem s : S) m &= P.up(s);
  return m;
}

BitRow ancestor_mask(const Poset& P, const std::vector<Elem>& S) {
  BitRow m = BitRow::all(P.size());
  for (const Elem s : S) m &= P.down(s);
  return m;
}

std::vector<Elem> minimal_of(const Poset& P, const BitRow& mask) {
  std::vector<Elem> out;
  for (const Elem z : mask.members())
    if (!mask.intersects(P.strict_down(z))) out.push_back(z);
  return out;
}

std::vector<Elem> maximal_of(const Poset& P, const BitRow& mask) {
  std::vector<Elem> out;
  for (const Elem z : mask.members())
    if (!mask.intersects(P.strict_up(z))) out.push_back(z);
  return out;
}

}  // namespace

std::vector<Elem> sups(const Poset& P, const std::vector<Elem>& S) {
  return minimal_of(P, descendent_mask(P, S));
}

std::vector<Elem> infs(const Poset& P, const std::vector<Elem>& S) {
  return maximal_of(P, ancestor_mask(P, S));
}

std::optional<Elem> coproduct(const Poset& P, const std::vector<Elem>& S) {
  const auto mins = sups(P, S);
  if (mins.size() != 1) return std::nullopt;
  return mins[0];
}

std::optional<Elem> product(const Poset& P, const std::vector<Elem>& S) {
  const auto maxs = infs(P, S);
  if (maxs.size() != 1) return std::nullopt;
  return maxs[0];
}

bool has_common_ancestor(const Poset& P, const std::vector<Elem>& S) {
  return ancestor_mask(P, S).any();
}

bool is_sup(const Poset& P, const std::vector<Elem>& S, Elem x) {
  for (const Elem s : S)
    if (!P.leq(s, x)) return false;
  return !descendent_mask(P, S).intersects(P.strict_down(x));
}

int dim(const Poset& P, Elem x, const SearchBudget& budget) {
  if (P.down(x).count() > budget.down_set_cap)
    throw SearchBudgetExceeded("down-set of " + P.id(x) + " exceeds the dim() cap");
  if (P.parents(x).empty()) return 0;
  const std::vector<Elem> cand = P.strict_down(x).members();
  const int m = static_cast<int>(cand.size());
  const BitRow below_x = P.strict_down(x);
  // comp[i]: bitmask of candidates comparable to candidate i (excluding i).
  std::vector<std::uint32_t> comp(m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && (P.leq(cand[i], cand[j]) || P.leq(cand[j], cand[i])))
        comp[i] |= 1u << j;
  int best = 1;  // the singleton consisting of x itself realises x here
  std::vector<BitRow> pre, suf;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    const int k = __builtin_popcount(mask);
    if (k <= best) continue;
    bool antichain = true;
    for (int i = 0; i < m && antichain; ++i)
      if ((mask >> i) & 1u)
        if (comp[i] & mask) antichain = false;
    if (!antichain) continue;
    std::vector<Elem> U;
    for (int i = 0; i < m; ++i)
      if ((mask >> i) & 1u) U.push_back(cand[i]);
    // An antichain of size >= 2 below x has an ancestor iff it has a proper one.
    if (!ancestor_mask(P, U).any()) continue;
    // Prefix and suffix meets of the descendent sets, to drop one member at a time.
    pre.assign(k + 1, BitRow());
    suf.assign(k + 1, BitRow());
    pre[0] = BitRow::all(P.size());
    suf[k] = BitRow::all(P.size());
    for (int i = 0; i < k; ++i) pre[i + 1] = pre[i] & P.up(U[i]);
    for (int i = k - 1; i >= 0; --i) suf[i] = suf[i + 1] & P.up(U[i]);
    if (pre[k].intersects(below_x)) continue;  // x is not minimal among descendents
    bool proper_subset_realises = false;
    for (int i = 0; i < k && !proper_subset_realises; ++i) {
      const BitRow desc_without = pre[i] & suf[i + 1];
      if (!desc_without.intersects(below_x)) proper_subset_realises = true;
    }
    if (proper_subset_realises) continue;
    best = k;
  }
  return best;
}

namespace {

void par_dim_rec(const Poset& P, const std::vector<Elem>& pars, std::size_t i, const BitRow& mask,
                 int count, int& best) {
  if (mask.none()) return;
  best = std::max(best, count);
  if (i == pars.size()) return;
  if (count + static_cast<int>(pars.size() - i) <= best) return;
  par_dim_rec(P, pars, i + 1, mask & P.down(pars[i]), count + 1, best);
  par_dim_rec(P, pars, i + 1, mask, count, best);
}

}  // namespace

int par_dim(const Poset& P, Elem x, const SearchBudget& budget) {
  const auto& pars = P.parents(x);
  if (static_cast<int>(pars.size()) > budget.parents_cap)
    throw SearchBudgetExceeded("lower covers of " + P.id(x) + " exceed the par_dim() cap");
  int best = 0;
  par_dim_rec(P, pars, 0, BitRow::all(P.size()), 0, best);
  return best;
}

PointClass classify(const Poset& P, Elem a, Elem x) {
  if (P.leq(a, x)) return PointClass::Dependent;
  for (const Elem p : P.parents(a))
    if (P.leq(p, x)) return PointClass::Independent;
  return PointClass::Inconsistent;
}

bool is_consistent(const Poset& P) {
  const int n = P.size();
  for (Elem a = 0; a < n; ++a)
    for (const Elem b : P.strict_up(a).members())
      for (Elem x = 0; x < n; ++x) {
        if (classify(P, b, x) != PointClass::Independent) continue;
        if (!P.down(x).intersects(P.down(a))) continue;
        if (classify(P, a, x) == PointClass::Inconsistent) return false;
      }
  return true;
}

bool is_upper_semilattice(const Poset& P) {
  const int n = P.size();
  for (Elem x = 0; x < n; ++x)
    for (Elem y = x + 1; y < n; ++y) {
      if (P.leq(x, y) || P.leq(y, x)) continue;
      if (!coproduct(P, {x, y})) return false;
    }
  return true;
}

bool is_distributive(const Poset& P) {
  if (!is_upper_semilattice(P))
    throw DistributivityRequiresSemilattice("distributivity needs an upper semilattice");
  const int n = P.size();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a; b < n; ++b)
      for (Elem x = 0; x < n; ++x) {
        const auto ax = product(P, {a, x});
        const auto bx = product(P, {b, x});
        if (!ax || !bx) continue;
        const Elem j = *coproduct(P, {a, b});
        const auto jx = product(P, {j, x});
        if (!jx) return false;
        if (*jx != *coproduct(P, {*ax, *bx})) return false;
      }
  return true;
}

bool is_forest(const Poset& P) {
  const int n = P.size();
  for (Elem x = 0; x < n; ++x)
    for (Elem y = x + 1; y < n; ++y) {
      if (P.leq(x, y) || P.leq(y, x)) continue;
      if (P.down(x).intersects(P.down(y))) return false;
    }
  return true;
}

bool is_tree(const Poset& P) { return P.size() > 0 && P.connected() && is_forest(P); }

std::vector<Elem> sublattice_generated(const Poset& P, const std::vector<Elem>& U) {
  if (!is_upper_semilattice(P)) throw NotSemilattice("join closure needs an upper semilattice");
  BitRow in(P.size());
  for (const Elem u : U) in.set(u);
  bool changed = true;
  while (changed) {
    changed = false;
    const auto mem = in.members();
    for (std::size_t i = 0; i < mem.size(); ++i)
      for (std::size_t j = i + 1; j < mem.size(); ++j) {
        const Elem v = *coproduct(P, {mem[i], mem[j]});
        if (!in.test(v)) {
          in.set(v);
          changed = true;
        }
      }
  }
  return in.members();
}

Poset induced_subposet(const Poset& P, const std::vector<Elem>& members) {
  std::vector<std::string> ids;
  ids.reserve(members.size());
  for (const Elem x : members) ids.push_back(P.id(x));
  const int m = static_cast<int>(members.size());
  std::vector<BitRow> rows(m, BitRow(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (P.leq(members[j], members[i])) rows[i].set(j);
  return Poset::from_relation(std::move(ids), rows);
}

Poset chain(int n) {
  if (n < 0) throw PreconditionFailed("chain length must be non-negative");
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 0; i <= n; ++i) ids.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i) covers.push_back({std::to_string(i), std::to_string(i + 1)});
  return Poset::from_covers(std::move(ids), covers);
}

namespace {

std::string subset_id(const std::vector<std::string>& labels, std::uint32_t mask) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if ((mask >> i) & 1u) {
      if (!first) out += ",";
      out += labels[i];
      first = false;
    }
  return out + "}";
}

}  // namespace

Poset cube(const std::vector<std::string>& labels) {
  if (labels.size() > 16) throw PreconditionFailed("cube ground set too large");
  const std::uint32_t full = 1u << labels.size();
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::uint32_t m = 0; m < full; ++m) ids.push_back(subset_id(labels, m));
  for (std::uint32_t m = 0; m < full; ++m)
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (!((m >> i) & 1u)) covers.push_back({subset_id(labels, m), subset_id(labels, m | (1u << i))});
  return Poset::from_covers(std::move(ids), covers);
}

Poset suspension(const std::vector<std::string>& labels) {
  std::vector<std::string> ids{"bot"};
  for (const auto& l : labels) {
    if (l == "bot" || l == "top") throw PreconditionFailed("label collides with bot/top");
    ids.push_back(l);
  }
  ids.push_back("top");
  std::vector<std::pair<std::string, std::string>> covers;
  if (labels.empty()) {
    covers.push_back({"bot", "top"});
  } else {
    for (const auto& l : labels) {
      covers.push_back({"bot", l});
      covers.push_back({l, "top"});
    }
  }
  return Poset::from_covers(std::move(ids), covers);
}

Poset product_poset(const Poset& A, const Poset& B) {
  std::vector<std::string> ids;
  auto pid = [&](Elem a, Elem b) { return "(" + A.id(a) + "," + B.id(b) + ")"; };
  for (Elem a = 0; a < A.size(); ++a)
    for (Elem b = 0; b < B.size(); ++b) ids.push_back(pid(a, b));
  std::vector<std::pair<std::string, std::string>> covers;
  for (Elem a = 0; a < A.size(); ++a)
    for (Elem b = 0; b < B.size(); ++b) {
      for (const Elem c : A.children(a)) covers.push_back({pid(a, b), pid(c, b)});
      for (const Elem c : B.children(b)) covers.push_back({pid(a, b), pid(a, c)});
    }
  return Poset::from_covers(std::move(ids), covers);
}

Poset adjoin_min(const Poset& P) {
  if (P.contains("-inf")) throw PreconditionFailed("poset already contains -inf");
  std::vector<std::string> ids{"-inf"};
  for (Elem x = 0; x < P.size(); ++x) ids.push_back(P.id(x));
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& [lo, hi] : P.cover_pairs()) covers.push_back({P.id(lo), P.id(hi)});
  for (const Elem m : P.minimal_elements()) covers.push_back({"-inf", P.id(m)});
  return Poset::from_covers(std::move(ids), covers);
}

MonotoneMap make_map(const Poset& src, const Poset& tgt,
                     const std::vector<std::pair<std::string, std::string>>& assignment) {
  MonotoneMap f;
  f.src = &src;
  f.tgt = &tgt;
  f.to.assign(src.size(), -1);
  for (const auto& [s, t] : assignment) {
    const Elem x = src.index(s);
    if (f.to[x] != -1) throw PreconditionFailed("element assigned twice: " + s);
    f.to[x] = tgt.index(t);
  }
  for (Elem x = 0; x < src.size(); ++x)
    if (f.to[x] == -1) throw PreconditionFailed("element not assigned: " + src.id(x));
  if (!is_monotone(f)) throw PreconditionFailed("assignment is not monotone");
  return f;
}

bool is_monotone(const MonotoneMap& f) {
  for (const auto& [lo, hi] : f.src->cover_pairs())
    if (!f.tgt->leq(f.to[lo], f.to[hi])) return false;
  return true;
}

bool is_homomorphism(const MonotoneMap& f, const SearchBudget& budget) {
  const Poset& I = *f.src;
  const Poset& J = *f.tgt;
  if (!is_upper_semilattice(I)) throw NotSemilattice("join preservation needs a semilattice source");
  if (!is_monotone(f)) return false;
  if (is_upper_semilattice(J)) {
    // With a semilattice target, preserving pairwise joins preserves all joins.
    for (Elem x = 0; x < I.size(); ++x)
      for (Elem y = x + 1; y < I.size(); ++y) {
        const Elem j = *coproduct(I, {x, y});
        if (!is_sup(J, {f.to[x], f.to[y]}, f.to[j])) return false;
      }
    return true;
  }
  if (I.size() > budget.subset_cap)
    throw SearchBudgetExceeded("source too large for the full join-preservation check");
  for (std::uint32_t mask = 1; mask < (1u << I.size()); ++mask) {
    std::vector<Elem> S, fS;
    for (Elem x = 0; x < I.size(); ++x)
      if ((mask >> x) & 1u) {
        S.push_back(x);
        fS.push_back(f.to[x]);
      }
    const auto j = coproduct(I, S);
    if (!is_sup(J, fS, f.to[*j])) return false;
  }
  return true;
}

bool is_injective(const MonotoneMap& f) {
  std::set<Elem> seen;
  for (const Elem t : f.to)
    if (!seen.insert(t).second) return false;
  return true;
}

bool is_surjective(const MonotoneMap& f) {
  std::set<Elem> seen(f.to.begin(), f.to.end());
  return static_cast<int>(seen.size()) == f.tgt->size();
}

}  // namespace rp
