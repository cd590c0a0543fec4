#include "realposet/io.hpp"

#include <fstream>
#include <sstream>

#include "realposet/errors.hpp"

namespace rp {

namespace {

std::string require_string(const json& j, const char* what) {
  if (!j.is_string()) throw PreconditionFailed(std::string(what) + " must be a string");
  return j.get<std::string>();
}

const json& require_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw PreconditionFailed(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw ValueOutOfRange("rational values must be integers or \"a/b\" strings");
}

json poset_to_json(const Poset& P) {
  json j;
  j["elements"] = json::array();
  for (Elem x = 0; x < P.size(); ++x) j["elements"].push_back(P.id(x));
  j["covers"] = json::array();
  for (const auto& [lo, hi] : P.cover_pairs()) {
    j["covers"].push_back(json::array({P.id(lo), P.id(hi)}));
  }
  return j;
}

Poset poset_from_json(const json& j) {
  std::vector<std::string> ids;
  for (const auto& e : require_field(j, "elements")) ids.push_back(require_string(e, "element id"));
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& c : require_field(j, "covers")) {
    if (!c.is_array() || c.size() != 2)
      throw PreconditionFailed("each cover must be a two-element array");
    covers.emplace_back(require_string(c[0], "cover endpoint"),
                        require_string(c[1], "cover endpoint"));
  }
  return Poset::from_covers(ids, covers);
}

json functor_to_json(const VectFunctor& F) {
  json j;
  j["poset"] = poset_to_json(*F.P);
  j["p"] = F.p;
  json dims = json::object();
  for (Elem x = 0; x < F.P->size(); ++x) dims[F.P->id(x)] = F.dims[x];
  j["dims"] = dims;
  json maps = json::object();
  for (const auto& [lo, hi] : F.P->cover_pairs()) {
    const FpMatrix& M = F.cover_map(lo, hi);
    json rows = json::array();
    for (int r = 0; r < M.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < M.cols(); ++c) row.push_back(M.at(r, c));
      rows.push_back(row);
    }
    maps[F.P->id(lo) + "->" + F.P->id(hi)] = rows;
  }
  j["maps"] = maps;
  return j;
}

LoadedFunctor functor_from_json(const json& j) {
  auto P = std::make_shared<Poset>(poset_from_json(require_field(j, "poset")));
  const json& jp = require_field(j, "p");
  if (!jp.is_number_integer()) throw PreconditionFailed("\"p\" must be an integer");
  long long p = jp.get<long long>();

  std::vector<int> dims(P->size(), 0);
  for (const auto& [key, val] : require_field(j, "dims").items()) {
    if (!val.is_number_integer()) throw PreconditionFailed("dims values must be integers");
    dims[P->index(key)] = val.get<int>();
  }

  std::map<std::pair<Elem, Elem>, FpMatrix> cover_maps;
  for (const auto& [key, val] : require_field(j, "maps").items()) {
    auto arrow = key.find("->");
    if (arrow == std::string::npos)
      throw PreconditionFailed("map keys must look like \"lo->hi\": " + key);
    Elem lo = P->index(key.substr(0, arrow));
    Elem hi = P->index(key.substr(arrow + 2));
    if (!val.is_array()) throw PreconditionFailed("map entries must be arrays of rows");
    int rows = dims[hi], cols = dims[lo];
    if (static_cast<int>(val.size()) != rows)
      throw ShapeMismatch("matrix for " + key + " has wrong row count");
    FpMatrix M = FpMatrix::zero(rows, cols, p);
    for (int r = 0; r < rows; ++r) {
      const json& row = val[r];
      if (!row.is_array() || static_cast<int>(row.size()) != cols)
        throw ShapeMismatch("matrix for " + key + " has wrong column count");
      for (int c = 0; c < cols; ++c) {
        if (!row[c].is_number_integer())
          throw PreconditionFailed("matrix entries must be integers");
        M.set(r, c, row[c].get<long long>());
      }
    }
    cover_maps[{lo, hi}] = std::move(M);
  }

  LoadedFunctor out;
  out.F = make_functor(*P, p, std::move(dims), std::move(cover_maps));
  out.poset = std::move(P);
  return out;
}

json grid_spec_to_json(const GridSpec& spec) {
  json j;
  j["base_poset"] = poset_to_json(*spec.I);
  j["D"] = json::array();
  for (Elem d : spec.D) j["D"].push_back(spec.I->id(d));
  j["V"] = json::array();
  for (const Rat& v : spec.V) j["V"].push_back(format_rat(v));
  return j;
}

LoadedGridSpec grid_spec_from_json(const json& j) {
  auto P = std::make_shared<Poset>(poset_from_json(require_field(j, "base_poset")));
  GridSpec spec;
  spec.I = P.get();
  for (const auto& d : require_field(j, "D")) spec.D.push_back(P->index(require_string(d, "D member")));
  for (const auto& v : require_field(j, "V")) spec.V.push_back(rat_from_json(v));
  validate_grid_spec(spec);
  return LoadedGridSpec{std::move(P), std::move(spec)};
}

json grid_to_json(const Grid& grid) {
  json j;
  j["elements"] = json::array();
  for (Elem g = 0; g < grid.poset.size(); ++g) j["elements"].push_back(grid.poset.id(g));
  j["covers"] = json::array();
  for (const auto& [lo, hi] : grid.poset.cover_pairs()) {
    j["covers"].push_back(json::array({grid.poset.id(lo), grid.poset.id(hi)}));
  }
  json pts = json::object();
  for (Elem g = 0; g < grid.poset.size(); ++g) {
    const RealPoint& pt = grid.points[g];
    json item;
    item["base"] = grid.I->id(pt.base);
    json coords = json::object();
    for (const auto& [x, v] : pt.coords) coords[grid.I->id(x)] = format_rat(v);
    item["coords"] = coords;
    pts[grid.poset.id(g)] = item;
  }
  j["points"] = pts;
  return j;
}

json betti_to_json(const Poset& P, const BettiDiagram& b) {
  if (static_cast<int>(b.size()) != P.size())
    throw DimensionMismatch("diagram length does not match the poset");
  json j = json::object();
  for (Elem x = 0; x < P.size(); ++x) j[P.id(x)] = b[x];
  return j;
}

BettiDiagram betti_from_json(const Poset& P, const json& j) {
  BettiDiagram b(P.size(), 0);
  for (const auto& [key, val] : j.items()) {
    if (!val.is_number_integer()) throw PreconditionFailed("diagram values must be integers");
    b[P.index(key)] = val.get<int>();
  }
  return b;
}

json dataset_to_json(const MetricDataset& data) {
  json j;
  j["points"] = data.point_ids;
  json rows = json::array();
  const int n = static_cast<int>(data.point_ids.size());
  for (int r = 0; r < n; ++r) {
    json row = json::array();
    for (int c = 0; c < n; ++c) row.push_back(format_rat(data.dist[r][c]));
    rows.push_back(row);
  }
  j["dist"] = rows;
  j["m"] = format_rat(data.m);
  return j;
}

MetricDataset dataset_from_json(const json& j) {
  MetricDataset data;
  for (const auto& p : require_field(j, "points"))
    data.point_ids.push_back(require_string(p, "point id"));
  const json& rows = require_field(j, "dist");
  for (const auto& row : rows) {
    std::vector<Rat> r;
    for (const auto& v : row) r.push_back(rat_from_json(v));
    data.dist.push_back(std::move(r));
  }
  data.m = rat_from_json(require_field(j, "m"));
  validate_dataset(data);
  return data;
}

namespace {

json members_to_json(const std::vector<int>& members, const MetricDataset& data) {
  json arr = json::array();
  for (int m : members) arr.push_back(data.point_ids[m]);
  return arr;
}

std::vector<int> members_from_json(const json& arr, const MetricDataset& data) {
  std::map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(data.point_ids.size()); ++i)
    index[data.point_ids[i]] = i;
  std::vector<int> out;
  for (const auto& m : arr) {
    std::string id = require_string(m, "cover member");
    auto it = index.find(id);
    if (it == index.end()) throw UnknownElement("unknown data point \"" + id + "\"");
    out.push_back(it->second);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

json cover_system_to_json(const Poset& P, const CoverSystem& U, const MetricDataset& data) {
  json j = json::object();
  for (Elem x = 0; x < P.size(); ++x) j[P.id(x)] = members_to_json(U.members[x], data);
  return j;
}

CoverSystem cover_system_from_json(const Poset& P, const MetricDataset& data, const json& j) {
  CoverSystem U;
  U.members.assign(P.size(), {});
  for (const auto& [key, val] : j.items()) U.members[P.index(key)] = members_from_json(val, data);
  validate_cover_system(P, U, static_cast<int>(data.point_ids.size()));
  return U;
}

json grid_cover_system_to_json(const Grid& grid, const GridCoverSystem& S,
                               const MetricDataset& data) {
  json j = json::object();
  for (Elem g = 0; g < grid.poset.size(); ++g)
    j[grid.poset.id(g)] = members_to_json(S.members[g], data);
  return j;
}

std::string poset_to_dot(const Poset& P) {
  auto esc = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\') out.push_back('\\');
      out.push_back(c);
    }
    return out;
  };
  std::ostringstream os;
  os << "digraph poset {\n  rankdir=BT;\n  node [shape=box];\n";
  for (Elem x = 0; x < P.size(); ++x) os << "  n" << x << " [label=\"" << esc(P.id(x)) << "\"];\n";
  for (const auto& [lo, hi] : P.cover_pairs()) os << "  n" << lo << " -> n" << hi << ";\n";
  os << "}\n";
  return os.str();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionFailed("cannot open \"" + path + "\"");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw PreconditionFailed("invalid JSON in \"" + path + "\": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionFailed("cannot write \"" + path + "\"");
  out << content;
  if (!out) throw PreconditionFailed("write failed for \"" + path + "\"");
}

}  // namespace rp
