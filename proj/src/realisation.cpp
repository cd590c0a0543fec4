#include "realposet/realisation.hpp"

#include <algorithm>
#include <cassert>

namespace rp {

void validate_point(const Poset& I, const RealPoint& p) {
  if (p.base < 0 || p.base >= I.size()) throw UnknownElement("point base out of range");
  const auto& pars = I.parents(p.base);
  for (const auto& [x, v] : p.coords) {
    if (std::find(pars.begin(), pars.end(), x) == pars.end())
      throw PreconditionFailed("coordinate key " + (x >= 0 && x < I.size() ? I.id(x) : "?") +
                               " is not a lower cover of " + I.id(p.base));
    if (v <= Rat(-1) || v > Rat(0))
      throw ValueOutOfRange("coordinate " + format_rat(v) + " outside (-1, 0]");
  }
  const auto supp = p.support();
  if (!supp.empty() && !has_common_ancestor(I, supp))
    throw SupportNoAncestor("support of point at " + I.id(p.base) + " has no common ancestor");
}

std::string point_id(const Poset& I, const RealPoint& p) {
  std::vector<std::pair<std::string, Rat>> entries;
  for (const auto& [x, v] : p.coords)
    if (v != Rat(0)) entries.push_back({I.id(x), v});
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string out = I.id(p.base);
  for (const auto& [id, v] : entries) out += ";" + id + "=" + format_rat(v);
  return out;
}

RealPoint parse_point(const Poset& I, const std::string& text) {
  RealPoint p;
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto semi = text.find(';', start);
    parts.push_back(text.substr(start, semi == std::string::npos ? semi : semi - start));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  p.base = I.index(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].rfind('=');
    if (eq == std::string::npos) throw PreconditionFailed("bad coordinate syntax: " + parts[i]);
    const Elem x = I.index(parts[i].substr(0, eq));
    const Rat v = parse_rat(parts[i].substr(eq + 1));
    if (v != Rat(0)) p.coords[x] = v;
  }
  validate_point(I, p);
  return p;
}

std::map<Elem, Rat> translate(const Poset& I, Elem a, const std::map<Elem, Rat>& f, Elem b) {
  if (!I.leq(a, b)) throw NotRelated("translation requires comparable bases");
  std::map<Elem, Rat> out;
  for (const Elem x : I.parents(b)) {
    switch (classify(I, a, x)) {
      case PointClass::Dependent:
        out[x] = Rat(-1);
        break;
      case PointClass::Independent: {
        bool have = false;
        Rat m(0);
        for (const Elem y : I.parents(a))
          if (I.leq(y, x)) {
            const auto it = f.find(y);
            const Rat v = it == f.end() ? Rat(0) : it->second;
            if (!have || v < m) m = v;
            have = true;
          }
        out[x] = m;
        break;
      }
      case PointClass::Inconsistent:
        out[x] = Rat(0);
        break;
    }
  }
  return out;
}

bool real_leq_conditions(const Poset& I, const RealPoint& p, const RealPoint& q) {
  if (!I.leq(p.base, q.base)) return false;
  for (const Elem x : q.support())
    if (classify(I, p.base, x) == PointClass::Inconsistent) return false;
  for (const Elem x : I.parents(q.base)) {
    if (classify(I, p.base, x) != PointClass::Independent) continue;
    bool have = false;
    Rat m(0);
    for (const Elem y : I.parents(p.base))
      if (I.leq(y, x)) {
        const Rat v = p.at(y);
        if (!have || v < m) m = v;
        have = true;
      }
    if (m > q.at(x)) return false;
  }
  return true;
}

bool real_leq_translation(const Poset& I, const RealPoint& p, const RealPoint& q) {
  if (!I.leq(p.base, q.base)) return false;
  const auto t = translate(I, p.base, p.coords, q.base);
  for (const auto& [x, v] : t)
    if (v > q.at(x)) return false;
  return true;
}

bool real_leq(const Poset& I, const RealPoint& p, const RealPoint& q) {
  const bool ans = real_leq_conditions(I, p, q);
  assert(ans == real_leq_translation(I, p, q));
  return ans;
}

RealPoint real_sup_over(const Poset& I, const std::vector<RealPoint>& points, Elem b) {
  if (points.empty()) throw PreconditionFailed("sup of an empty point set");
  std::vector<Elem> bases;
  for (const auto& p : points) bases.push_back(p.base);
  if (!is_sup(I, bases, b))
    throw NotASup(I.id(b) + " is not a minimal common descendent of the bases");
  std::vector<std::map<Elem, Rat>> translations;
  translations.reserve(points.size());
  for (const auto& p : points) translations.push_back(translate(I, p.base, p.coords, b));
  RealPoint out;
  out.base = b;
  for (const Elem x : I.parents(b)) {
    Rat m(-1);
    for (const auto& t : translations) m = std::max(m, t.at(x));
    if (m == Rat(-1))
      throw CoordinateHitMinusOne("combined coordinate at " + I.id(x) + " reached -1");
    if (m != Rat(0)) out.coords[x] = m;
  }
  validate_point(I, out);
  return out;
}

int real_dim(const Poset& I, const RealPoint& p, const SearchBudget& budget) {
  validate_point(I, p);
  const auto& pars = I.parents(p.base);
  if (static_cast<int>(pars.size()) > budget.parents_cap)
    throw SearchBudgetExceeded("lower covers of " + I.id(p.base) + " exceed the cap");
  const auto supp = p.support();
  BitRow supp_anc = BitRow::all(I.size());
  for (const Elem s : supp) supp_anc &= I.down(s);
  std::vector<Elem> rest;
  for (const Elem x : pars)
    if (p.at(x) == Rat(0)) rest.push_back(x);
  // Largest extension of the support by zero-coordinate covers that still
  // has a common ancestor; branch and bound over the optional covers.
  int best = -1;
  struct Rec {
    const Poset& I;
    const std::vector<Elem>& rest;
    int supp_size;
    int& best;
    void go(std::size_t i, const BitRow& mask, int extra) {
      if (mask.none()) return;
      best = std::max(best, supp_size + extra);
      if (i == rest.size()) return;
      if (supp_size + extra + static_cast<int>(rest.size() - i) <= best) return;
      go(i + 1, mask & I.down(rest[i]), extra + 1);
      go(i + 1, mask, extra);
    }
  } rec{I, rest, static_cast<int>(supp.size()), best};
  rec.go(0, supp_anc, 0);
  if (best < 0) throw SupportNoAncestor("support has no common ancestor");
  return best;
}

void validate_grid_spec(const GridSpec& spec) {
  if (spec.I == nullptr) throw PreconditionFailed("grid spec has no base poset");
  for (const Elem d : spec.D)
    if (d < 0 || d >= spec.I->size()) throw UnknownElement("grid base element out of range");
  for (const Rat& v : spec.V)
    if (v <= Rat(-1) || v >= Rat(0))
      throw ValueOutOfRange("grid value " + format_rat(v) + " outside (-1, 0)");
  for (std::size_t i = 0; i < spec.V.size(); ++i)
    for (std::size_t j = i + 1; j < spec.V.size(); ++j)
      if (spec.V[i] == spec.V[j]) throw PreconditionFailed("duplicate grid value");
  std::vector<Elem> d = spec.D;
  std::sort(d.begin(), d.end());
  if (std::adjacent_find(d.begin(), d.end()) != d.end())
    throw PreconditionFailed("duplicate grid base element");
}

std::optional<Elem> Grid::find(const RealPoint& p) const {
  const std::string key = point_id(*I, p);
  if (!poset.contains(key)) return std::nullopt;
  return poset.index(key);
}

Grid build_grid(const GridSpec& spec, int element_cap) {
  validate_grid_spec(spec);
  const Poset& I = *spec.I;
  Grid g;
  g.I = spec.I;
  g.spec = spec;
  std::vector<Rat> values{Rat(0)};
  values.insert(values.end(), spec.V.begin(), spec.V.end());
  std::sort(values.begin(), values.end());

  std::vector<Elem> bases = spec.D;
  std::sort(bases.begin(), bases.end());
  for (const Elem a : bases) {
    const auto& pars = I.parents(a);
    std::vector<std::size_t> odo(pars.size(), 0);
    while (true) {
      RealPoint p;
      p.base = a;
      for (std::size_t i = 0; i < pars.size(); ++i)
        if (values[odo[i]] != Rat(0)) p.coords[pars[i]] = values[odo[i]];
      const auto supp = p.support();
      if (supp.empty() || has_common_ancestor(I, supp)) {
        g.points.push_back(std::move(p));
        if (static_cast<int>(g.points.size()) > element_cap)
          throw GridTooLarge("grid exceeds " + std::to_string(element_cap) + " elements");
      }
      std::size_t i = 0;
      for (; i < pars.size(); ++i) {
        if (++odo[i] < values.size()) break;
        odo[i] = 0;
      }
      if (i == pars.size()) break;
    }
  }

  const int n = static_cast<int>(g.points.size());
  std::vector<std::string> ids;
  ids.reserve(n);
  for (const auto& p : g.points) ids.push_back(point_id(I, p));
  std::vector<BitRow> rows(n, BitRow(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (real_leq(I, g.points[j], g.points[i])) rows[i].set(j);
  g.poset = Poset::from_relation(std::move(ids), rows);
  return g;
}

}  // namespace rp
