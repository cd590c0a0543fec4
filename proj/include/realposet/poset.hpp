#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "realposet/bitrow.hpp"
#include "realposet/errors.hpp"

namespace rp {

using Elem = int;

// Caps for the exponential searches; exceeding one throws SearchBudgetExceeded.
struct SearchBudget {
  int down_set_cap = 24;  // |{y : y <= x}| in dim()
  int parents_cap = 24;   // number of lower covers in par_dim()
  int subset_cap = 20;    // ground-set size for full join-preservation checks
};

// Position of an element x relative to a base element a, following the
// three-way split used to order realisation points.
enum class PointClass { Dependent, Independent, Inconsistent };

// Finite poset with interned string ids. Stores the Hasse diagram (cover
// pairs), a linear extension, and bitset rows for the full order relation.
class Poset {
 public:
  Poset() = default;

  // Builds from element ids and cover pairs (lower, upper). Throws
  // UnknownElement / CycleDetected / NotHasse / PreconditionFailed on
  // malformed input.
  static Poset from_covers(std::vector<std::string> ids,
                           const std::vector<std::pair<std::string, std::string>>& covers);

  // Builds from the full relation; rows[x] must be the down-set of x.
  // The cover relation is recomputed, never trusted from the caller.
  static Poset from_relation(std::vector<std::string> ids, const std::vector<BitRow>& down_rows);

  int size() const { return static_cast<int>(ids_.size()); }
  const std::string& id(Elem x) const { return ids_[x]; }
  Elem index(const std::string& id) const;
  bool contains(const std::string& id) const { return by_id_.count(id) > 0; }

  bool leq(Elem x, Elem y) const { return down_[y].test(x); }
  bool less(Elem x, Elem y) const { return x != y && leq(x, y); }

  const std::vector<Elem>& parents(Elem x) const { return parents_[x]; }    // lower covers
  const std::vector<Elem>& children(Elem x) const { return children_[x]; }  // upper covers
  const std::vector<std::pair<Elem, Elem>>& cover_pairs() const { return covers_; }

  const BitRow& down(Elem x) const { return down_[x]; }  // {y : y <= x}
  const BitRow& up(Elem x) const { return up_[x]; }      // {y : x <= y}
  BitRow strict_down(Elem x) const;
  BitRow strict_up(Elem x) const;

  // A linear extension; every element appears after all its ancestors.
  const std::vector<Elem>& topo() const { return topo_; }

  std::vector<Elem> minimal_elements() const;
  std::vector<Elem> maximal_elements() const;
  bool connected() const;  // undirected cover-graph connectivity; false when empty

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, Elem> by_id_;
  std::vector<std::pair<Elem, Elem>> covers_;
  std::vector<std::vector<Elem>> parents_, children_;
  std::vector<BitRow> down_, up_;
  std::vector<Elem> topo_;

  void intern(std::vector<std::string> ids);
  void finish_from_covers();  // topo + closure rows; throws CycleDetected
};

// Minimal common descendents of S; S empty yields the minimal elements.
std::vector<Elem> sups(const Poset& P, const std::vector<Elem>& S);
// Maximal common ancestors of S; S empty yields the maximal elements.
std::vector<Elem> infs(const Poset& P, const std::vector<Elem>& S);
// Least common descendent if one exists.
std::optional<Elem> coproduct(const Poset& P, const std::vector<Elem>& S);
// Greatest common ancestor if one exists.
std::optional<Elem> product(const Poset& P, const std::vector<Elem>& S);

bool has_common_ancestor(const Poset& P, const std::vector<Elem>& S);
bool is_sup(const Poset& P, const std::vector<Elem>& S, Elem x);

// Size of the largest realising subset for x (see dim laws in the tests):
// the maximum cardinality of an antichain U below x that admits an ancestor,
// has x among its minimal common descendents, and has no proper subset with
// that property. Minimal elements get 0, every other element at least 1.
int dim(const Poset& P, Elem x, const SearchBudget& budget = {});

// Maximum size of a set of lower covers of x admitting a common ancestor.
int par_dim(const Poset& P, Elem x, const SearchBudget& budget = {});

// Classifies x relative to a: Dependent when a <= x; otherwise Independent
// when some lower cover of a lies below x; otherwise Inconsistent.
PointClass classify(const Poset& P, Elem a, Elem x);

// For all a <= b: every x independent over b that shares an ancestor with a
// must not be inconsistent over a.
bool is_consistent(const Poset& P);

// Every pair of elements with a common descendent has a coproduct; by
// induction this gives coproducts of all finite non-empty subsets.
bool is_upper_semilattice(const Poset& P);

// In an upper semilattice: whenever a&x and b&x exist, (a|b)&x exists and
// equals (a&x)|(b&x). Throws DistributivityRequiresSemilattice otherwise.
bool is_distributive(const Poset& P);

// No two incomparable elements share an ancestor.
bool is_forest(const Poset& P);
// Non-empty connected forest.
bool is_tree(const Poset& P);

// Closure of U under pairwise coproducts; requires an upper semilattice.
std::vector<Elem> sublattice_generated(const Poset& P, const std::vector<Elem>& U);

// Full subposet on the given members, keeping their ids.
Poset induced_subposet(const Poset& P, const std::vector<Elem>& members);

// Named constructions.
Poset chain(int n);                                    // n+1 elements "0".."n"
Poset cube(const std::vector<std::string>& labels);    // subsets under inclusion
Poset suspension(const std::vector<std::string>& labels);
Poset product_poset(const Poset& A, const Poset& B);   // ids "(a,b)"
Poset adjoin_min(const Poset& P);                      // adds "-inf" below all

struct MonotoneMap {
  const Poset* src = nullptr;
  const Poset* tgt = nullptr;
  std::vector<Elem> to;  // image of each source element

  Elem operator()(Elem x) const { return to[x]; }
};

// Builds a map from id pairs; every source id must be assigned exactly once.
// Throws PreconditionFailed when the assignment is not monotone.
MonotoneMap make_map(const Poset& src, const Poset& tgt,
                     const std::vector<std::pair<std::string, std::string>>& assignment);

bool is_monotone(const MonotoneMap& f);

// Checks that f maps the join of every finite non-empty subset to a minimal
// common descendent of the image. When the target is an upper semilattice the
// pairwise check is used; otherwise all subsets are enumerated (subject to
// budget.subset_cap). Requires the source to be an upper semilattice.
bool is_homomorphism(const MonotoneMap& f, const SearchBudget& budget = {});

bool is_injective(const MonotoneMap& f);
bool is_surjective(const MonotoneMap& f);

}  // namespace rp
