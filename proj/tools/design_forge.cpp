// design-forge: construct and verify GDDs, PBDs and transversal designs.
//
// Exit codes: 0 success / verified, 1 verification failed, 2 precondition or
// argument error, 3 ingredient missing or invalid.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "forge/difference_family.hpp"
#include "forge/disjoint.hpp"
#include "forge/json_io.hpp"
#include "forge/pipelines.hpp"
#include "forge/wfc.hpp"

using namespace forge;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIngredient = 3;

// thrown when a self-verification or verify subcommand fails
struct VerificationFailed : std::runtime_error {
  explicit VerificationFailed(const std::string& what)
      : std::runtime_error(what) {}
};

bool g_json = false;

BlockSizeSet parse_sizes(const std::string& csv) {
  std::vector<int> sizes;
  std::stringstream in(csv);
  std::string tok;
  while (std::getline(in, tok, ','))
    if (!tok.empty()) sizes.push_back(std::stoi(tok));
  require(!sizes.empty(), Errc::InvalidInput, "empty block size set");
  return BlockSizeSet(sizes);
}

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  std::stringstream in(csv);
  std::string tok;
  while (std::getline(in, tok, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

std::string file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), Errc::ParseError, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_path(const std::string& out_path) {
  const std::string suffix = ".json";
  std::string stem = out_path;
  if (stem.size() > suffix.size() &&
      stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0)
    stem.resize(stem.size() - suffix.size());
  return stem + ".manifest.json";
}

// ingredient resolution: explicit flag > DESIGN_FORGE_INGREDIENTS/<role>.json
std::optional<Design> load_role(const std::string& role,
                                const std::string& flag_path,
                                Json& provenance) {
  std::string path = flag_path;
  if (path.empty()) {
    if (const char* dir = std::getenv("DESIGN_FORGE_INGREDIENTS")) {
      const std::string candidate = std::string(dir) + "/" + role + ".json";
      if (std::ifstream(candidate).good()) path = candidate;
    }
  }
  if (path.empty()) return std::nullopt;
  Design d;
  try {
    d = load_design(path);
  } catch (const Error& e) {
    raise(Errc::IngredientInvalid, role + ": " + e.what());
  }
  provenance.push_back(Json{{"role", role},
                            {"source", "file:" + path},
                            {"hash", fnv1a64_hex(file_bytes(path))}});
  return d;
}

void emit_report(const VerificationReport& report) {
  if (g_json)
    std::cout << report_to_json(report).dump() << "\n";
  else
    std::cout << (report.pass ? "PASS" : report.summary()) << "\n";
}

// Writes the design plus its manifest; every construction goes through here
// after self-verification.
void write_output(const Design& d, const std::string& out_path,
                  const std::string& command, const Json& parameters,
                  const Json& ingredients, const Json& verification) {
  save_design(d, out_path);
  const std::string bytes = canonical_bytes(design_to_json(d));

  Json manifest;
  manifest["command"] = command;
  manifest["parameters"] = parameters;
  manifest["ingredients"] = ingredients;
  manifest["type"] = compute_type(d).to_string();
  manifest["verification"] = verification;
  manifest["output"] = out_path;
  manifest["output_hash"] = fnv1a64_hex(bytes);
  manifest["timestamp"] = timestamp_utc();  // excluded from hashing
  std::ofstream mf(manifest_path(out_path), std::ios::binary);
  require(mf.good(), Errc::ParseError,
          "cannot write " + manifest_path(out_path));
  mf << manifest.dump(2) << "\n";

  if (g_json) {
    Json summary;
    summary["output"] = out_path;
    summary["type"] = compute_type(d).to_string();
    summary["n"] = d.n;
    summary["blocks"] = d.blocks.size();
    std::cout << summary.dump() << "\n";
  } else {
    std::printf("wrote %s (type %s, %d points, %zu blocks)\n",
                out_path.c_str(), compute_type(d).to_string().c_str(), d.n,
                d.blocks.size());
    std::printf("manifest: %s\n", manifest_path(out_path).c_str());
  }
}

void self_verify(const VerificationReport& report, const std::string& what) {
  if (!report.pass)
    throw VerificationFailed(what + " failed self-verification: " +
                             report.summary());
}

Json params_json(std::initializer_list<std::pair<std::string, Json>> kv) {
  Json j = Json::object();
  for (const auto& [k, v] : kv) j[k] = v;
  return j;
}

// file/builtin supplier for `construct wfc` per the rule config
class ConfiguredSupplier : public IngredientSupplier {
 public:
  ConfiguredSupplier(BlockSizeSet K, const std::string& config_path)
      : td_(K), K_(std::move(K)) {
    if (config_path.empty()) return;
    Json rules;
    std::ifstream in(config_path);
    require(in.good(), Errc::ParseError, "cannot open " + config_path);
    try {
      in >> rules;
    } catch (const Json::exception& e) {
      raise(Errc::ParseError, config_path + ": " + e.what());
    }
    require(rules.is_array(), Errc::SchemaError,
            "supplier config must be an array of rules");
    for (const auto& rule : rules) {
      require(rule.is_object() && rule.contains("type") &&
                  rule.contains("source"),
              Errc::SchemaError, "each rule needs {type, source}");
      rules_.emplace_back(GddType::parse(rule["type"].get<std::string>()),
                          rule["source"].get<std::string>());
    }
  }

  Design resolve(const IngredientRequest& request) const override {
    GddType requested = GddType::from_sizes(request.weights);
    for (const auto& [pattern, source] : rules_) {
      if (!(pattern == requested)) continue;
      if (source == "builtin") break;
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = loaded_.find(source);
      if (it == loaded_.end())
        it = loaded_.emplace(source, load_design(source)).first;
      return fit_ingredient_to_request(it->second, request);
    }
    return td_.resolve(request);
  }

  const BlockSizeSet& block_sizes() const override { return K_; }

 private:
  std::vector<std::pair<GddType, std::string>> rules_;
  TdSupplier td_;
  BlockSizeSet K_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, Design> loaded_;
};

// shared flags for the theorem pipelines
struct PipelineFlags {
  std::string td_master, td_small, gdd_uv, pbd_fill;
  std::string output, pbd_output;

  void attach(CLI::App* cmd) {
    cmd->add_option("--td-master", td_master, "TD(ell+1,m) ingredient file");
    cmd->add_option("--td-small", td_small, "TD(ell,u) ingredient file");
    cmd->add_option("--gdd-uv", gdd_uv, "u^ell v^1 GDD ingredient file");
    cmd->add_option("--pbd-fill", pbd_fill, "(m*u+1,K)-PBD ingredient file");
    cmd->add_option("-o,--output", output, "output design file")->required();
    cmd->add_option("--pbd-out", pbd_output,
                    "also write the intermediate PBD (with parallel class)");
  }

  IngredientSources sources(Json& provenance) const {
    IngredientSources s;
    s.td_master = load_role("td_master", td_master, provenance);
    s.td_small = load_role("td_small", td_small, provenance);
    s.gdd_uv = load_role("gdd_uv", gdd_uv, provenance);
    s.pbd_fill = load_role("pbd_fill", pbd_fill, provenance);
    s.provenance = provenance;
    return s;
  }
};

void finish_pipeline(const PipelineResult& result, const PipelineFlags& flags,
                     const std::string& command, const Json& parameters) {
  Json verification;
  verification["pbd"] = result.pbd_report.pass ? "pass" : "fail";
  verification["parallel_class"] = result.class_report.pass ? "pass" : "fail";
  verification["gdd"] = result.gdd_report.pass ? "pass" : "fail";
  if (!result.all_pass())
    throw VerificationFailed(command + " failed self-verification");

  if (!flags.pbd_output.empty()) save_design(result.pbd, flags.pbd_output);
  const Json ingredients = result.gdd.meta.contains("ingredients")
                               ? result.gdd.meta["ingredients"]
                               : Json::array();
  write_output(result.gdd, flags.output, command, parameters, ingredients,
               verification);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "design-forge: group-divisible, pairwise balanced and transversal "
      "design construction and verification"};
  app.require_subcommand(1);
  app.add_flag("--json", g_json, "machine-readable JSON output");

  // ----- construct ---------------------------------------------------------
  auto* construct = app.add_subcommand("construct", "build a design");
  construct->require_subcommand(1);

  struct {
    int k = 0, q = 0;
    std::string output;
  } td;
  auto* c_td = construct->add_subcommand("td", "TD(k,q) from MOLS over GF(q)");
  c_td->add_option("--k", td.k)->required();
  c_td->add_option("--q", td.q)->required();
  c_td->add_option("-o,--output", td.output)->required();
  c_td->callback([&] {
    const Design d = build_td(td.k, td.q);
    self_verify(verify_gdd(d, BlockSizeSet{td.k}), "td");
    write_output(d, td.output, "construct td",
                 params_json({{"k", td.k}, {"q", td.q}}), Json::array(),
                 Json{{"gdd", "pass"}});
  });

  struct {
    int q = 0;
    std::string output;
  } affine, projective;
  auto* c_affine =
      construct->add_subcommand("affine", "affine plane of order q");
  c_affine->add_option("--q", affine.q)->required();
  c_affine->add_option("-o,--output", affine.output)->required();
  c_affine->callback([&] {
    const Design d = build_affine_plane(affine.q);
    self_verify(verify_pbd(d, BlockSizeSet{affine.q}), "affine plane");
    write_output(d, affine.output, "construct affine",
                 params_json({{"q", affine.q}}), Json::array(),
                 Json{{"pbd", "pass"}});
  });
  auto* c_proj =
      construct->add_subcommand("projective", "projective plane of order q");
  c_proj->add_option("--q", projective.q)->required();
  c_proj->add_option("-o,--output", projective.output)->required();
  c_proj->callback([&] {
    const Design d = build_projective_plane(projective.q);
    self_verify(verify_pbd(d, BlockSizeSet{projective.q + 1}),
                "projective plane");
    write_output(d, projective.output, "construct projective",
                 params_json({{"q", projective.q}}), Json::array(),
                 Json{{"pbd", "pass"}});
  });

  struct {
    std::string input, output;
    int point = -1;
  } delpt;
  auto* c_del = construct->add_subcommand(
      "delete-point", "turn a (v,k,1)-BIBD into a k-GDD by deleting a point");
  c_del->add_option("--in", delpt.input)->required();
  c_del->add_option("--point", delpt.point,
                    "point to delete (default: last point)");
  c_del->add_option("-o,--output", delpt.output)->required();
  c_del->callback([&] {
    const Design pbd = load_design(delpt.input);
    const int p = delpt.point >= 0 ? delpt.point : pbd.n - 1;
    const Design d = delete_point(pbd, p);
    const int k = d.meta["block_size"].get<int>();
    self_verify(verify_gdd(d, BlockSizeSet{k}), "delete-point");
    Json ing = Json::array();
    ing.push_back(Json{{"role", "pbd"},
                       {"source", "file:" + delpt.input},
                       {"hash", fnv1a64_hex(file_bytes(delpt.input))}});
    write_output(d, delpt.output, "construct delete-point",
                 params_json({{"in", delpt.input}, {"point", p}}), ing,
                 Json{{"gdd", "pass"}});
  });

  struct {
    std::string input, output;
    int t = 0;
  } trunc;
  auto* c_trunc = construct->add_subcommand(
      "truncate", "delete m-t points from the last group of a TD");
  c_trunc->add_option("--in", trunc.input)->required();
  c_trunc->add_option("--t", trunc.t)->required();
  c_trunc->add_option("-o,--output", trunc.output)->required();
  c_trunc->callback([&] {
    const Design td_in = load_design(trunc.input);
    const TruncatedTd out = truncate_td(td_in, trunc.t);
    std::vector<int> sizes;
    for (const auto& b : out.design.blocks)
      sizes.push_back(static_cast<int>(b.size()));
    self_verify(verify_gdd(out.design, BlockSizeSet(sizes)), "truncate");
    save_truncated_td(out, trunc.output);
    Json ing = Json::array();
    ing.push_back(Json{{"role", "td"},
                       {"source", "file:" + trunc.input},
                       {"hash", fnv1a64_hex(file_bytes(trunc.input))}});
    Json manifest;
    manifest["command"] = "construct truncate";
    manifest["parameters"] =
        params_json({{"in", trunc.input}, {"t", trunc.t}});
    manifest["ingredients"] = ing;
    manifest["verification"] = Json{{"gdd", "pass"}};
    manifest["output"] = trunc.output;
    manifest["output_hash"] =
        fnv1a64_hex(canonical_bytes(truncated_td_to_json(out)));
    manifest["timestamp"] = timestamp_utc();
    std::ofstream mf(manifest_path(trunc.output), std::ios::binary);
    mf << manifest.dump(2) << "\n";
    if (g_json)
      std::cout << Json{{"output", trunc.output},
                        {"type", compute_type(out.design).to_string()},
                        {"deleted_classes", out.deleted_point_classes.size()}}
                       .dump()
                << "\n";
    else
      std::printf("wrote %s (type %s, %zu deleted-point classes)\n",
                  trunc.output.c_str(),
                  compute_type(out.design).to_string().c_str(),
                  out.deleted_point_classes.size());
  });

  struct {
    std::string master, output, weights_csv, supplier_config, k_csv;
    int weight = 0;
  } wfc;
  auto* c_wfc = construct->add_subcommand(
      "wfc", "Wilson's Fundamental Construction over a master GDD");
  c_wfc->add_option("--master", wfc.master)->required();
  c_wfc->add_option("--weight", wfc.weight, "uniform weight");
  c_wfc->add_option("--weights", wfc.weights_csv,
                    "comma-separated weight per point");
  c_wfc->add_option("--K", wfc.k_csv, "ingredient block sizes")->required();
  c_wfc->add_option("--supplier-config", wfc.supplier_config,
                    "JSON rules mapping type patterns to builtin|file");
  c_wfc->add_option("-o,--output", wfc.output)->required();
  c_wfc->callback([&] {
    const Design master = load_design(wfc.master);
    Weighting w;
    if (!wfc.weights_csv.empty()) {
      w.weights = parse_ints(wfc.weights_csv);
    } else {
      require(wfc.weight >= 1, Errc::InvalidInput,
              "give --weight or --weights");
      w = Weighting::uniform(master.n, wfc.weight);
    }
    const BlockSizeSet K = parse_sizes(wfc.k_csv);
    const ConfiguredSupplier supplier(K, wfc.supplier_config);
    const WfcResult out = apply_wfc(master, w, supplier);
    self_verify(verify_gdd(out.design, K), "wfc");
    Json ing = Json::array();
    ing.push_back(Json{{"role", "master"},
                       {"source", "file:" + wfc.master},
                       {"hash", fnv1a64_hex(file_bytes(wfc.master))}});
    write_output(out.design, wfc.output, "construct wfc",
                 params_json({{"master", wfc.master},
                              {"K", K.to_string()},
                              {"uniform_weight", wfc.weight},
                              {"weights", wfc.weights_csv}}),
                 ing, Json{{"gdd", "pass"}});
  });

  struct PipelineCli {
    int ell = 0, m = 0, u = 0, v = 0, t = 0, alpha = 1;
    std::string k_csv;
    PipelineFlags flags;
  };
  PipelineCli th1, th3;
  auto* c_th1 = construct->add_subcommand(
      "theorem1", "PBD with a parallel class, re-grouped as a GDD");
  c_th1->add_option("--ell", th1.ell)->required();
  c_th1->add_option("--m", th1.m)->required();
  c_th1->add_option("--u", th1.u)->required();
  c_th1->add_option("--v", th1.v)->required();
  c_th1->add_option("--t", th1.t)->required();
  c_th1->add_option("--K", th1.k_csv)->required();
  th1.flags.attach(c_th1);
  c_th1->callback([&] {
    Theorem1Params p{th1.ell, th1.m, th1.u, th1.v, th1.t,
                     parse_sizes(th1.k_csv)};
    Json provenance = Json::array();
    const Ingredients ing =
        resolve_theorem1_ingredients(p, th1.flags.sources(provenance));
    PipelineResult result = theorem1(p, ing);
    finish_pipeline(result, th1.flags, "construct theorem1",
                    params_json({{"ell", th1.ell},
                                 {"m", th1.m},
                                 {"u", th1.u},
                                 {"v", th1.v},
                                 {"t", th1.t},
                                 {"K", th1.k_csv}}));
  });

  auto* c_th3 = construct->add_subcommand(
      "theorem3", "theorem1 with alpha disjoint blocks per ingredient TD");
  c_th3->add_option("--ell", th3.ell)->required();
  c_th3->add_option("--m", th3.m)->required();
  c_th3->add_option("--u", th3.u)->required();
  c_th3->add_option("--v", th3.v)->required();
  c_th3->add_option("--t", th3.t)->required();
  c_th3->add_option("--alpha", th3.alpha)->required();
  c_th3->add_option("--K", th3.k_csv)->required();
  th3.flags.attach(c_th3);
  c_th3->callback([&] {
    Theorem3Params p{{th3.ell, th3.m, th3.u, th3.v, th3.t,
                      parse_sizes(th3.k_csv)},
                     th3.alpha};
    Json provenance = Json::array();
    const Ingredients ing =
        resolve_theorem3_ingredients(p, th3.flags.sources(provenance));
    PipelineResult result = theorem3(p, ing);
    finish_pipeline(result, th3.flags, "construct theorem3",
                    params_json({{"ell", th3.ell},
                                 {"m", th3.m},
                                 {"u", th3.u},
                                 {"v", th3.v},
                                 {"t", th3.t},
                                 {"alpha", th3.alpha},
                                 {"K", th3.k_csv}}));
  });

  struct {
    int m = 0, t = 0;
    PipelineFlags flags;
  } cor2;
  auto* c_cor2 = construct->add_subcommand(
      "corollary2", "5-GDD of type 5^(4m) (4t+1)^1, m = 0,1 mod 5, m > 10");
  c_cor2->add_option("--m", cor2.m)->required();
  c_cor2->add_option("--t", cor2.t)->required();
  cor2.flags.attach(c_cor2);
  c_cor2->callback([&] {
    Json provenance = Json::array();
    const IngredientSources sources = cor2.flags.sources(provenance);
    PipelineResult result = corollary2(cor2.m, cor2.t, sources);
    finish_pipeline(result, cor2.flags, "construct corollary2",
                    params_json({{"m", cor2.m}, {"t", cor2.t}}));
  });

  struct {
    int m = 0, t = 0;
    std::string bibd;
    PipelineFlags flags;
  } cor5;
  auto* c_cor5 = construct->add_subcommand(
      "corollary5",
      "{7,8}-GDD of type 7^(7m) (7t+1)^1 from a (7m+1,7,1)-BIBD");
  c_cor5->add_option("--m", cor5.m)->required();
  c_cor5->add_option("--t", cor5.t)->required();
  c_cor5->add_option("--bibd", cor5.bibd, "(7m+1,7,1)-BIBD file");
  cor5.flags.attach(c_cor5);
  c_cor5->callback([&] {
    Json provenance = Json::array();
    std::optional<Design> bibd = load_role("bibd", cor5.bibd, provenance);
    const IngredientSources sources = cor5.flags.sources(provenance);
    PipelineResult result = corollary5(cor5.m, cor5.t, bibd, sources);
    finish_pipeline(result, cor5.flags, "construct corollary5",
                    params_json({{"m", cor5.m}, {"t", cor5.t}}));
  });

  // ----- verify ------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "check design axioms");
  verify->require_subcommand(1);
  struct {
    std::string k_csv, file;
  } vgdd, vpbd;
  auto* v_gdd = verify->add_subcommand("gdd", "GDD axioms against K");
  v_gdd->add_option("--K", vgdd.k_csv)->required();
  v_gdd->add_option("file", vgdd.file)->required();
  v_gdd->callback([&] {
    auto report = verify_gdd(load_design(vgdd.file), parse_sizes(vgdd.k_csv));
    emit_report(report);
    if (!report.pass) throw VerificationFailed("");
  });
  auto* v_pbd = verify->add_subcommand("pbd", "PBD axioms against K");
  v_pbd->add_option("--K", vpbd.k_csv)->required();
  v_pbd->add_option("file", vpbd.file)->required();
  v_pbd->callback([&] {
    auto report = verify_pbd(load_design(vpbd.file), parse_sizes(vpbd.k_csv));
    emit_report(report);
    if (!report.pass) throw VerificationFailed("");
  });
  struct {
    std::string file;
  } vtd;
  auto* v_td = verify->add_subcommand("td", "uniform groups plus GDD axioms");
  v_td->add_option("file", vtd.file)->required();
  v_td->callback([&] {
    const Design d = load_design(vtd.file);
    auto params = td_parameters(d);
    if (!params) {
      VerificationReport report;
      report.pass = false;
      report.violations.push_back(
          {"not-a-td", std::nullopt, std::nullopt,
           "expected k uniform groups and a verified k-GDD"});
      emit_report(report);
      throw VerificationFailed("");
    }
    if (g_json)
      std::cout << Json{{"verdict", "pass"},
                        {"k", params->first},
                        {"m", params->second}}
                       .dump()
                << "\n";
    else
      std::printf("PASS TD(%d,%d)\n", params->first, params->second);
  });
  struct {
    std::string file, class_csv;
  } vpc;
  auto* v_pc = verify->add_subcommand("parallel-class",
                                      "selected blocks partition the points");
  v_pc->add_option("file", vpc.file)->required();
  v_pc->add_option("--class", vpc.class_csv,
                   "block indices (default: meta parallel_class)");
  v_pc->callback([&] {
    const Design d = load_design(vpc.file);
    std::vector<int> indices;
    if (!vpc.class_csv.empty()) {
      indices = parse_ints(vpc.class_csv);
    } else {
      require(d.meta.contains("parallel_class"), Errc::InvalidInput,
              "no --class given and no parallel_class in meta");
      indices = d.meta["parallel_class"].get<std::vector<int>>();
    }
    auto report = verify_parallel_class(d, indices);
    emit_report(report);
    if (!report.pass) throw VerificationFailed("");
  });

  // ----- disjoint-blocks ---------------------------------------------------
  struct {
    std::string file;
    bool exact = false, greedy = false;
    int limit = 250;
  } dis;
  auto* disjoint =
      app.add_subcommand("disjoint-blocks", "pairwise disjoint block sets");
  disjoint->add_option("file", dis.file)->required();
  auto* flag_exact =
      disjoint->add_flag("--exact", dis.exact, "exact maximum by branch and bound");
  disjoint->add_flag("--greedy", dis.greedy, "greedy maximal set")
      ->excludes(flag_exact);
  disjoint->add_option("--limit", dis.limit,
                       "block-count cap for the exact search");
  disjoint->callback([&] {
    require(dis.exact || dis.greedy, Errc::InvalidInput,
            "choose --exact or --greedy");
    const Design d = load_design(dis.file);
    const DisjointBlockSet set = dis.exact
                                     ? find_disjoint_blocks_exact(d, dis.limit)
                                     : find_disjoint_blocks_greedy(d);
    if (g_json) {
      std::cout << Json{{"count", set.blocks.size()},
                        {"blocks", set.blocks},
                        {"exact", set.exact}}
                       .dump()
                << "\n";
    } else {
      std::printf("%zu disjoint blocks (%s):", set.blocks.size(),
                  set.exact ? "exact maximum" : "greedy maximal");
      for (int idx : set.blocks) std::printf(" %d", idx);
      std::printf("\n");
    }
  });

  // ----- bound -------------------------------------------------------------
  struct {
    int ell = 0, u = 0;
  } bnd;
  auto* bound = app.add_subcommand(
      "bound", "counting lower bound on disjoint blocks in a TD(ell,u)");
  bound->add_option("--ell", bnd.ell)->required();
  bound->add_option("--u", bnd.u)->required();
  bound->callback([&] { std::printf("%d\n", lemma4_bound(bnd.ell, bnd.u)); });

  // ----- df ----------------------------------------------------------------
  auto* df = app.add_subcommand("df", "difference families");
  df->require_subcommand(1);
  struct {
    int v = 0, k = 0;
    std::string factors_csv, output;
  } dfs;
  auto* df_search = df->add_subcommand("search", "deterministic backtracking");
  df_search->add_option("--v", dfs.v)->required();
  df_search->add_option("--k", dfs.k)->required();
  df_search->add_option("--factors", dfs.factors_csv,
                        "abelian group invariant factors (default: cyclic)");
  df_search->add_option("-o,--output", dfs.output)->required();
  df_search->callback([&] {
    DifferenceFamily family;
    if (dfs.factors_csv.empty()) {
      family = search_difference_family(dfs.v, dfs.k);
    } else {
      family =
          search_difference_family_group(parse_ints(dfs.factors_csv), dfs.k);
      require(family.v == dfs.v, Errc::InvalidInput,
              "factors do not multiply to v");
    }
    save_difference_family(family, dfs.output);
    if (g_json)
      std::cout << Json{{"output", dfs.output},
                        {"base_blocks", family.base_blocks.size()}}
                       .dump()
                << "\n";
    else
      std::printf("wrote %s (%zu base blocks)\n", dfs.output.c_str(),
                  family.base_blocks.size());
  });
  struct {
    std::string input, output;
  } dfd;
  auto* df_dev = df->add_subcommand("develop", "develop into a PBD");
  df_dev->add_option("--in", dfd.input)->required();
  df_dev->add_option("-o,--output", dfd.output)->required();
  df_dev->callback([&] {
    const DifferenceFamily family = load_difference_family(dfd.input);
    const Design d = develop_difference_family(family);
    std::vector<int> sizes;
    for (const auto& b : family.base_blocks)
      sizes.push_back(static_cast<int>(b.size()));
    self_verify(verify_pbd(d, BlockSizeSet(sizes)), "development");
    Json ing = Json::array();
    ing.push_back(Json{{"role", "difference_family"},
                       {"source", "file:" + dfd.input},
                       {"hash", fnv1a64_hex(file_bytes(dfd.input))}});
    write_output(d, dfd.output, "df develop", params_json({{"in", dfd.input}}),
                 ing, Json{{"pbd", "pass"}});
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int cli_code = app.exit(e);
    return cli_code == 0 ? 0 : kExitUsage;
  } catch (const VerificationFailed& e) {
    if (e.what()[0] != '\0') std::fprintf(stderr, "%s\n", e.what());
    return kExitVerifyFailed;
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    switch (e.code()) {
      case Errc::IngredientMissing:
      case Errc::IngredientInvalid:
      case Errc::SupplierFailure:
        return kExitIngredient;
      default:
        return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return 0;
}
