#include <atomic>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "realposet/errors.hpp"
#include "realposet/io.hpp"
#include "realposet/pipeline.hpp"
#include "realposet/tame.hpp"
#include "realposet/transfer.hpp"

namespace {

using namespace rp;

// Raised when --method both sees certified diagrams disagree (exit 3).
struct CertMismatch {
  std::string msg;
};

std::vector<Rat> parse_value_list(const std::string& s) {
  std::vector<Rat> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_rat(item));
  return out;
}

struct SpecBundle {
  std::shared_ptr<Poset> poset;
  GridSpec spec;
};

// Accepts either a grid-spec file or a plain poset file plus --d/--V flags.
SpecBundle load_spec(const std::string& path, const std::string& v_flag,
                     const std::string& d_flag) {
  json j = read_json_file(path);
  SpecBundle out;
  if (j.contains("base_poset")) {
    LoadedGridSpec L = grid_spec_from_json(j);
    out.poset = L.poset;
    out.spec = L.spec;
  } else {
    out.poset = std::make_shared<Poset>(poset_from_json(j));
    out.spec.I = out.poset.get();
    if (d_flag.empty())
      throw PreconditionFailed("a plain poset file needs --d to fix the top of the grid");
  }
  if (!d_flag.empty()) {
    const Elem d = out.poset->index(d_flag);
    out.spec.D = out.poset->down(d).members();
  }
  if (!v_flag.empty()) out.spec.V = parse_value_list(v_flag);
  validate_grid_spec(out.spec);
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void emit(const json& j, const std::string& out_path, const std::string& summary) {
  if (out_path.empty()) {
    std::cout << dump(j);
  } else {
    write_text_file(out_path, dump(j));
    std::cout << summary << " -> " << out_path << "\n";
  }
}

// Koszul homology at every element, computed once per element; degrees above
// 2 are certified only where every ancestor-admitting subset of lower covers
// has a product.
struct KoszulCell {
  std::vector<int> h;
  bool products_ok = false;
};

std::vector<KoszulCell> koszul_cells(const VectFunctor& G, int jobs) {
  const Poset& P = *G.P;
  std::vector<KoszulCell> cells(P.size());
  std::atomic<int> next{0};
  std::mutex err_mutex;
  std::string err;
  auto work = [&] {
    try {
      for (int a; (a = next.fetch_add(1)) < P.size();) {
        const KoszulComplex K = koszul_complex(G, a);
        cells[a].h = koszul_homology_dims(K);
        cells[a].products_ok = parent_products_exist(P, a);
      }
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(err_mutex);
      if (err.empty()) err = e.what();
    }
  };
  if (jobs <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }
  if (!err.empty()) throw PreconditionFailed(err);
  return cells;
}

int koszul_value(const KoszulCell& c, int i) {
  return i < static_cast<int>(c.h.size()) ? c.h[i] : 0;
}

bool koszul_certified(const KoszulCell& c, int i) { return i <= 2 || c.products_ok; }

json betti_json_or_null(const Poset& P, int degree, const std::vector<KoszulCell>& cells) {
  json out = json::object();
  for (Elem a = 0; a < P.size(); ++a) {
    if (koszul_certified(cells[a], degree))
      out[P.id(a)] = koszul_value(cells[a], degree);
    else
      out[P.id(a)] = nullptr;
  }
  return out;
}

// Betti computation shared by `functor betti` and `pipeline run`.
json run_betti(const VectFunctor& G, const std::string& method, int max_degree, int jobs) {
  const Poset& P = *G.P;
  json out;
  out["method"] = method;
  const bool want_koszul = method == "koszul" || method == "both";
  const bool want_resolution = method == "resolution" || method == "both";

  std::vector<KoszulCell> cells;
  if (want_koszul) cells = koszul_cells(G, jobs);
  std::vector<BettiDiagram> res;
  if (want_resolution)
    for (int i = 0; i <= max_degree; ++i) res.push_back(betti_resolution(G, i));

  if (want_koszul) {
    json per_degree = json::object();
    for (int i = 0; i <= max_degree; ++i)
      per_degree[std::to_string(i)] = betti_json_or_null(P, i, cells);
    out["koszul"] = per_degree;
  }
  if (want_resolution) {
    json per_degree = json::object();
    for (int i = 0; i <= max_degree; ++i)
      per_degree[std::to_string(i)] = betti_to_json(P, res[i]);
    out["resolution"] = per_degree;
  }

  if (method == "both") {
    for (int i = 0; i <= max_degree; ++i)
      for (Elem a = 0; a < P.size(); ++a) {
        if (!koszul_certified(cells[a], i)) continue;
        if (koszul_value(cells[a], i) != res[i][a]) {
          std::ostringstream os;
          os << "degree " << i << " at " << P.id(a) << ": complex gives "
             << koszul_value(cells[a], i) << ", resolution gives " << res[i][a];
          throw CertMismatch{os.str()};
        }
      }
    out["agree"] = true;
  }
  return out;
}

void print_betti_table(const VectFunctor& G, const json& betti) {
  const Poset& P = *G.P;
  const json& table = betti.contains("resolution") ? betti["resolution"] : betti["koszul"];
  std::cout << "element";
  for (auto it = table.begin(); it != table.end(); ++it) std::cout << "\tb" << it.key();
  std::cout << "\n";
  for (Elem a = 0; a < P.size(); ++a) {
    std::cout << P.id(a);
    for (auto it = table.begin(); it != table.end(); ++it) {
      const json& v = it.value().at(P.id(a));
      if (v.is_null())
        std::cout << "\t?";
      else
        std::cout << "\t" << v.get<int>();
    }
    std::cout << "\n";
  }
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

int run(int argc, char** argv) {
  CLI::App app{"finite posets, their realisations, and functor homology"};
  app.require_subcommand(1);

  std::string in_path, out_path, point_text, point2_text, elt, v_flag, d_flag;
  std::string method = "both";
  std::string epsilon_flag, prime_flag;
  int max_degree = 2;
  int jobs = 1;
  int budget_dim = 0;
  bool use_cofinal = false;

  auto* poset_cmd = app.add_subcommand("poset", "inspect a poset");
  auto* poset_check = poset_cmd->add_subcommand("check", "order-theoretic summary");
  poset_check->add_option("input", in_path, "poset JSON")->required();
  poset_check->callback([&] {
    const Poset P = poset_from_json(read_json_file(in_path));
    std::cout << "elements: " << P.size() << "\n";
    std::cout << "covers: " << P.cover_pairs().size() << "\n";
    std::cout << "connected: " << yesno(P.connected()) << "\n";
    const bool semi = is_upper_semilattice(P);
    std::cout << "semilattice: " << yesno(semi) << "\n";
    std::cout << "distributive: " << (semi ? yesno(is_distributive(P)) : std::string("n/a"))
              << "\n";
    std::cout << "consistent: " << yesno(is_consistent(P)) << "\n";
    std::cout << "forest: " << yesno(is_forest(P)) << "\n";
    std::cout << "tree: " << yesno(is_tree(P)) << "\n";
  });

  auto* poset_dim = poset_cmd->add_subcommand("dim", "dimension of one element");
  poset_dim->add_option("element", elt, "element id")->required();
  poset_dim->add_option("input", in_path, "poset JSON")->required();
  poset_dim->add_option("--budget-dim", budget_dim, "search size cap");
  poset_dim->callback([&] {
    const Poset P = poset_from_json(read_json_file(in_path));
    SearchBudget budget;
    if (budget_dim > 0) {
      budget.down_set_cap = budget_dim;
      budget.parents_cap = budget_dim;
      budget.subset_cap = budget_dim;
    }
    const Elem x = P.index(elt);
    std::cout << "dim(" << elt << ") = " << dim(P, x, budget) << "\n";
    std::cout << "par_dim(" << elt << ") = " << par_dim(P, x, budget) << "\n";
  });

  auto* grid_cmd = app.add_subcommand("grid", "realisation grids");
  auto* grid_build_cmd = grid_cmd->add_subcommand("build", "materialize a grid");
  grid_build_cmd->add_option("input", in_path, "grid spec or poset JSON")->required();
  grid_build_cmd->add_option("--V", v_flag, "comma-separated coordinate values");
  grid_build_cmd->add_option("--d", d_flag, "base restricted to elements below this id");
  grid_build_cmd->add_option("-o,--out", out_path, "output file");
  grid_build_cmd->callback([&] {
    const SpecBundle b = load_spec(in_path, v_flag, d_flag);
    const Grid grid = build_grid(b.spec);
    std::ostringstream os;
    os << "grid with " << grid.poset.size() << " points";
    emit(grid_to_json(grid), out_path, os.str());
  });

  auto* grid_transfer_cmd = grid_cmd->add_subcommand("transfer", "largest grid point below");
  grid_transfer_cmd->add_option("point", point_text, "realisation point, e.g. \"(1,1);(0,1)=-1/2\"")
      ->required();
  grid_transfer_cmd->add_option("input", in_path, "grid spec or poset JSON")->required();
  grid_transfer_cmd->add_option("--V", v_flag, "comma-separated coordinate values");
  grid_transfer_cmd->add_option("--d", d_flag, "base restricted to elements below this id");
  grid_transfer_cmd->callback([&] {
    const SpecBundle b = load_spec(in_path, v_flag, d_flag);
    const Grid grid = build_grid(b.spec);
    const DownClosedGrid dcg = as_down_closed(grid);
    const RealPoint p = parse_point(*b.poset, point_text);
    const auto g = grid_transfer(dcg, p);
    std::cout << (g ? grid.poset.id(*g) : std::string("-inf")) << "\n";
  });

  auto* functor_cmd = app.add_subcommand("functor", "functors to vector spaces");
  auto* functor_validate = functor_cmd->add_subcommand("validate", "check functoriality");
  functor_validate->add_option("input", in_path, "functor JSON")->required();
  functor_validate->callback([&] {
    const LoadedFunctor L = functor_from_json(read_json_file(in_path));
    validate_functor(L.F);
    std::cout << "ok: functor on " << L.poset->size() << " elements over F_" << L.F.p << "\n";
  });

  auto* functor_betti = functor_cmd->add_subcommand("betti", "generator multiplicities");
  functor_betti->add_option("input", in_path, "functor JSON")->required();
  functor_betti->add_option("--method", method, "koszul, resolution, or both")
      ->check(CLI::IsMember({"koszul", "resolution", "both"}));
  functor_betti->add_option("--max-degree", max_degree, "largest homological degree");
  functor_betti->add_option("--jobs", jobs, "worker threads for per-element work");
  functor_betti->add_option("-o,--out", out_path, "output file");
  functor_betti->callback([&] {
    const LoadedFunctor L = functor_from_json(read_json_file(in_path));
    validate_functor(L.F);
    const json betti = run_betti(L.F, method, max_degree, jobs);
    print_betti_table(L.F, betti);
    if (!out_path.empty()) {
      write_text_file(out_path, dump(betti));
      std::cout << "written -> " << out_path << "\n";
    }
  });

  auto* functor_colim = functor_cmd->add_subcommand("colim", "colimit strictly below an element");
  functor_colim->add_option("element", elt, "element id")->required();
  functor_colim->add_option("input", in_path, "functor JSON")->required();
  functor_colim->add_flag("--use-cofinal-reduction", use_cofinal,
                          "restrict to products of lower-cover subsets");
  functor_colim->callback([&] {
    const LoadedFunctor L = functor_from_json(read_json_file(in_path));
    validate_functor(L.F);
    const Colimit c = colimit_below(L.F, L.poset->index(elt), use_cofinal);
    std::cout << "colim dim = " << c.dim << " over " << c.members.size() << " elements\n";
  });

  auto* tame_cmd = app.add_subcommand("tame", "functors presented on a grid");
  auto* tame_eval = tame_cmd->add_subcommand("eval", "evaluate at realisation points");
  tame_eval->add_option("input", in_path, "bundle JSON with \"grid\" and \"functor\"")->required();
  tame_eval->add_option("point", point_text, "realisation point")->required();
  tame_eval->add_option("point2", point2_text, "second point for the structure map");
  tame_eval->callback([&] {
    const json j = read_json_file(in_path);
    LoadedGridSpec L = grid_spec_from_json(j.at("grid"));
    auto grid = std::make_shared<Grid>(build_grid(L.spec));
    const LoadedFunctor LF = functor_from_json(j.at("functor"));
    const TameFunctor T = make_tame(grid, rebind_functor(LF.F, grid->poset));
    const RealPoint p = parse_point(*L.poset, point_text);
    std::cout << "dim = " << tame_eval_dim(T, p) << "\n";
    if (!point2_text.empty()) {
      const RealPoint q = parse_point(*L.poset, point2_text);
      const FpMatrix M = tame_eval_map(T, p, q);
      std::cout << "map " << M.rows() << "x" << M.cols() << ":\n";
      for (int r = 0; r < M.rows(); ++r) {
        std::cout << "[";
        for (int c = 0; c < M.cols(); ++c) std::cout << (c ? " " : "") << M.at(r, c);
        std::cout << "]\n";
      }
    }
  });

  auto* pipeline_cmd = app.add_subcommand("pipeline", "dataset to Betti diagrams");
  auto* pipeline_run = pipeline_cmd->add_subcommand("run", "run a config end to end");
  pipeline_run->add_option("config", in_path, "pipeline config JSON")->required();
  pipeline_run->add_option("-o,--out", out_path, "output directory");
  pipeline_run->add_option("--epsilon", epsilon_flag, "component scale override");
  pipeline_run->add_option("--prime", prime_flag, "field characteristic override");
  pipeline_run->add_option("--max-degree", max_degree, "largest homological degree");
  pipeline_run->add_option("--method", method, "koszul, resolution, or both")
      ->check(CLI::IsMember({"koszul", "resolution", "both"}));
  pipeline_run->add_option("--jobs", jobs, "worker threads for per-element work");
  pipeline_run->callback([&] {
    const json cfg = read_json_file(in_path);
    const auto base = std::filesystem::path(in_path).parent_path();
    auto resolve = [&](const std::string& rel) { return (base / rel).string(); };

    const MetricDataset data =
        dataset_from_json(read_json_file(resolve(cfg.at("dataset").get<std::string>())));
    const SpecBundle b = load_spec(resolve(cfg.at("grid").get<std::string>()), "", "");
    const CoverSystem U = cover_system_from_json(
        *b.poset, data, read_json_file(resolve(cfg.at("cover_system").get<std::string>())));
    const Rat eps =
        epsilon_flag.empty() ? rat_from_json(cfg.at("epsilon")) : parse_rat(epsilon_flag);
    const std::int64_t p = prime_flag.empty() ? cfg.at("prime").get<std::int64_t>()
                                              : std::stoll(prime_flag);
    if (cfg.contains("max_degree") && !pipeline_run->count("--max-degree"))
      max_degree = cfg.at("max_degree").get<int>();
    if (cfg.contains("method") && !pipeline_run->count("--method"))
      method = cfg.at("method").get<std::string>();

    const Grid grid = build_grid(b.spec);
    const GridCoverSystem S = extend_cover_system(grid, U, data);
    const VectFunctor H0 = h0_functor(grid, S, data, eps, p);
    const json betti = run_betti(H0, method, max_degree, jobs);

    const std::filesystem::path dir = out_path.empty() ? "pipeline_out" : out_path;
    std::filesystem::create_directories(dir);
    write_text_file((dir / "grid.json").string(), dump(grid_to_json(grid)));
    write_text_file((dir / "covers.json").string(),
                    dump(grid_cover_system_to_json(grid, S, data)));
    write_text_file((dir / "h0.json").string(), dump(functor_to_json(H0)));
    write_text_file((dir / "betti.json").string(), dump(betti));

    std::cout << "grid points: " << grid.poset.size() << "\n";
    print_betti_table(H0, betti);
    std::cout << "artifacts -> " << dir.string() << "\n";
  });

  auto* export_cmd = app.add_subcommand("export", "graph output");
  auto* export_dot = export_cmd->add_subcommand("dot", "Hasse diagram in DOT form");
  export_dot->add_option("input", in_path, "poset JSON")->required();
  export_dot->add_option("-o,--out", out_path, "output file");
  export_dot->callback([&] {
    const json j = read_json_file(in_path);
    const Poset P =
        j.contains("base_poset") ? poset_from_json(j.at("base_poset")) : poset_from_json(j);
    const std::string dot = poset_to_dot(P);
    if (out_path.empty()) {
      std::cout << dot;
    } else {
      write_text_file(out_path, dot);
      std::cout << "written -> " << out_path << "\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const CertMismatch& e) {
    std::cerr << "certified diagrams disagree: " << e.msg << "\n";
    return 3;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
