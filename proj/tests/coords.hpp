#pragma once

// Helpers for grids over products of chains, where element ids carry the
// coordinates ("3" in a chain, "(1,2)" in a square) and realisation points
// correspond to tuples of rationals in [0, n].

#include <string>
#include <vector>

#include "realposet/poset.hpp"
#include "realposet/realisation.hpp"

namespace tc {

using rp::Elem;
using rp::Poset;
using rp::Rat;
using rp::RealPoint;

inline Poset chain_power(int n, int r) {
  Poset P = rp::chain(n);
  for (int k = 1; k < r; ++k) P = rp::product_poset(P, rp::chain(n));
  return P;
}

inline std::string coord_id(const std::vector<int>& c) {
  if (c.size() == 1) return std::to_string(c[0]);
  std::string s = std::to_string(c[0]);
  for (std::size_t i = 1; i < c.size(); ++i) {
    s = "(" + s + "," + std::to_string(c[i]) + ")";
  }
  return s;
}

inline Elem coord_elem(const Poset& P, const std::vector<int>& c) { return P.index(coord_id(c)); }

// ceil for non-negative rationals
inline int rat_ceil(const Rat& x) {
  long long q = x.numerator() / x.denominator();
  if (Rat(q) < x) ++q;
  return static_cast<int>(q);
}

// Point of the realisation of [n]^r with the given non-negative coordinates:
// base entry ceil(t_i), coordinate t_i - ceil(t_i) at the lower cover that
// decrements entry i.
inline RealPoint real_of(const Poset& P, const std::vector<Rat>& t) {
  std::vector<int> base(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) base[i] = rat_ceil(t[i]);
  RealPoint p;
  p.base = coord_elem(P, base);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Rat frac = t[i] - Rat(base[i]);
    if (frac != Rat(0)) {
      std::vector<int> par = base;
      par[i] -= 1;
      p.coords[coord_elem(P, par)] = frac;
    }
  }
  return p;
}

// Inverse of real_of: the coordinate tuple of a realisation point.
inline std::vector<Rat> coords_of(const Poset& P, int r, const RealPoint& p) {
  // parse the base id back into integers
  std::vector<int> base;
  {
    const std::string& s = P.id(p.base);
    std::string digits;
    for (char ch : s) {
      if (ch >= '0' && ch <= '9') {
        digits.push_back(ch);
      } else if (!digits.empty()) {
        base.push_back(std::stoi(digits));
        digits.clear();
      }
    }
    if (!digits.empty()) base.push_back(std::stoi(digits));
  }
  std::vector<Rat> t(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) t[i] = Rat(base[i]);
  for (const auto& [par, v] : p.coords) {
    // find which entry the cover decrements
    std::vector<int> pc;
    const std::string& s = P.id(par);
    std::string digits;
    for (char ch : s) {
      if (ch >= '0' && ch <= '9') {
        digits.push_back(ch);
      } else if (!digits.empty()) {
        pc.push_back(std::stoi(digits));
        digits.clear();
      }
    }
    if (!digits.empty()) pc.push_back(std::stoi(digits));
    for (std::size_t i = 0; i < base.size(); ++i)
      if (pc[i] + 1 == base[i]) t[i] += v;
  }
  (void)r;
  return t;
}

inline bool coordwise_leq(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

}  // namespace tc
