#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "realposet/functor.hpp"
#include "realposet/pipeline.hpp"
#include "realposet/realisation.hpp"

namespace rp {

using nlohmann::json;

// {"elements": [...], "covers": [["lo","hi"], ...]}
json poset_to_json(const Poset& P);
Poset poset_from_json(const json& j);

// Functor files embed their poset, so loading returns the owner as well.
// {"poset": {...}, "p": 2, "dims": {"id": n, ...}, "maps": {"lo->hi": [[...]] }}
struct LoadedFunctor {
  std::shared_ptr<Poset> poset;
  VectFunctor F;
};
json functor_to_json(const VectFunctor& F);
LoadedFunctor functor_from_json(const json& j);

// {"base_poset": {...}, "D": ["id", ...], "V": ["-1/2", ...]}
struct LoadedGridSpec {
  std::shared_ptr<Poset> poset;
  GridSpec spec;
};
json grid_spec_to_json(const GridSpec& spec);
LoadedGridSpec grid_spec_from_json(const json& j);

// Grid dump: elements with their base and coordinates, plus cover pairs.
json grid_to_json(const Grid& grid);

// {"id": count, ...} over all elements of the poset.
json betti_to_json(const Poset& P, const BettiDiagram& b);
BettiDiagram betti_from_json(const Poset& P, const json& j);

// {"points": [...], "dist": [["0","1/2"], ...], "m": "2"}
json dataset_to_json(const MetricDataset& data);
MetricDataset dataset_from_json(const json& j);

// {"element id": ["point id", ...], ...}
json cover_system_to_json(const Poset& P, const CoverSystem& U, const MetricDataset& data);
CoverSystem cover_system_from_json(const Poset& P, const MetricDataset& data, const json& j);

json grid_cover_system_to_json(const Grid& grid, const GridCoverSystem& S,
                               const MetricDataset& data);

// Rational helpers shared by the formats: accepts "a/b", "a", or an integer.
Rat rat_from_json(const json& j);

std::string poset_to_dot(const Poset& P);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace rp
