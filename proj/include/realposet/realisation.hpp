#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "realposet/poset.hpp"
#include "realposet/rational.hpp"

namespace rp {

// A point of the realisation of a poset: a base element together with a
// coordinate in (-1, 0] for each lower cover of the base (0 entries may be
// omitted). Coordinates strictly below 0 form the support.
struct RealPoint {
  Elem base = -1;
  std::map<Elem, Rat> coords;  // keyed by lower covers of base; 0 omitted

  Rat at(Elem p) const {
    const auto it = coords.find(p);
    return it == coords.end() ? Rat(0) : it->second;
  }
  std::vector<Elem> support() const {
    std::vector<Elem> s;
    for (const auto& [p, v] : coords)
      if (v < Rat(0)) s.push_back(p);
    return s;
  }
  bool operator==(const RealPoint& o) const = default;
};

// Checks base validity, coordinate keys, the open interval (-1, 0], and that
// a non-empty support has a common ancestor. Throws on violation.
void validate_point(const Poset& I, const RealPoint& p);

// Canonical text form: base id, then ";parent=value" for each non-zero
// coordinate in increasing parent-id order. Example: "(1,1);(0,1)=-1/2".
std::string point_id(const Poset& I, const RealPoint& p);
RealPoint parse_point(const Poset& I, const std::string& text);

// Pushes the coordinates of a point at base a forward to a larger base b.
// The result assigns to every lower cover x of b: -1 when a <= x, the
// minimum of f over the lower covers of a below x when such covers exist,
// and 0 otherwise. Throws NotRelated unless a <= b.
std::map<Elem, Rat> translate(const Poset& I, Elem a, const std::map<Elem, Rat>& f, Elem b);

// Order on realisation points, decided by base comparison plus coordinate
// conditions. Two independent formulations are kept and cross-checked in
// debug builds.
bool real_leq(const Poset& I, const RealPoint& p, const RealPoint& q);
bool real_leq_conditions(const Poset& I, const RealPoint& p, const RealPoint& q);
bool real_leq_translation(const Poset& I, const RealPoint& p, const RealPoint& q);

// Minimal upper bound of a non-empty set of points over a prescribed base b:
// the pointwise maximum of the translations to b. Requires b to be a minimal
// common descendent of the bases (NotASup otherwise). A combined coordinate
// of -1 cannot occur in that case (CoordinateHitMinusOne guards it).
RealPoint real_sup_over(const Poset& I, const std::vector<RealPoint>& points, Elem b);

// Dimension of a point of the realisation: the largest size of a set S of
// lower covers of the base that contains the support and has a common
// ancestor.
int real_dim(const Poset& I, const RealPoint& p, const SearchBudget& budget = {});

// Grid specification: base poset restricted to bases in D with non-zero
// coordinates drawn from the finite set V, V a subset of (-1, 0).
struct GridSpec {
  const Poset* I = nullptr;
  std::vector<Elem> D;
  std::vector<Rat> V;
};

void validate_grid_spec(const GridSpec& spec);

// The finite grid inside the realisation: all valid points with base in D
// and coordinates in V union {0}, ordered by real_leq.
struct Grid {
  const Poset* I = nullptr;
  GridSpec spec;
  Poset poset;                    // one element per grid point, id = point_id
  std::vector<RealPoint> points;  // indexed by grid element

  std::optional<Elem> find(const RealPoint& p) const;
};

Grid build_grid(const GridSpec& spec, int element_cap = 20000);

}  // namespace rp
