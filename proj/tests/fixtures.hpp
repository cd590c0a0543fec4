#pragma once

// Small named posets reused across test files. Ids of planar examples are
// their coordinates in the ambient grid.

#include <string>
#include <vector>

#include "realposet/poset.hpp"

namespace tf {

using rp::Poset;

// a and b below a common top.
inline Poset lambda() {
  return Poset::from_covers({"a", "b", "t"}, {{"a", "t"}, {"b", "t"}});
}

// Four corners a < b,c < d with the two middle elements incomparable.
inline Poset abcd_square() {
  return Poset::from_covers({"a", "b", "c", "d"},
                            {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
}

// b below both a and c.
inline Poset vee() {
  return Poset::from_covers({"b", "a", "c"}, {{"b", "a"}, {"b", "c"}});
}

// Three planar posets on the same corners that only differ by subdivision.
inline Poset fig_square() {
  return Poset::from_covers(
      {"(0,0)", "(3,0)", "(0,2)", "(3,2)"},
      {{"(0,0)", "(3,0)"}, {"(0,0)", "(0,2)"}, {"(3,0)", "(3,2)"}, {"(0,2)", "(3,2)"}});
}

inline Poset fig_square_sub1() {
  return Poset::from_covers({"(0,0)", "(2,0)", "(3,0)", "(0,2)", "(3,2)"},
                            {{"(0,0)", "(2,0)"},
                             {"(2,0)", "(3,0)"},
                             {"(0,0)", "(0,2)"},
                             {"(3,0)", "(3,2)"},
                             {"(0,2)", "(3,2)"}});
}

inline Poset fig_square_sub2() {
  return Poset::from_covers({"(0,0)", "(2,0)", "(3,0)", "(0,2)", "(1,2)", "(3,2)"},
                            {{"(0,0)", "(2,0)"},
                             {"(2,0)", "(3,0)"},
                             {"(0,0)", "(0,2)"},
                             {"(0,2)", "(1,2)"},
                             {"(3,0)", "(3,2)"},
                             {"(1,2)", "(3,2)"}});
}

// Two incomparable elements below two incomparable elements below a top:
// the pair of middle elements has common ancestors but no product.
inline Poset bowtie() {
  return Poset::from_covers(
      {"m1", "m2", "p", "q", "t"},
      {{"m1", "p"}, {"m1", "q"}, {"m2", "p"}, {"m2", "q"}, {"p", "t"}, {"q", "t"}});
}

// Nine points of a three-dimensional grid: an upper semilattice that is not
// consistent, whose grids can have incomparable minimal upper bounds.
inline Poset nine_point_semilattice() {
  return Poset::from_covers({"p1", "p2", "p3", "a", "b", "z", "x", "j", "c"},
                            {{"p1", "a"},
                             {"p1", "p3"},
                             {"p2", "b"},
                             {"p2", "p3"},
                             {"p3", "z"},
                             {"p3", "x"},
                             {"z", "j"},
                             {"a", "j"},
                             {"b", "j"},
                             {"j", "c"},
                             {"x", "c"}});
}

}  // namespace tf
