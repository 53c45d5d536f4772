// dpcnnn: benchmark harness and one-off clustering front end.

#include <CLI11.hpp>
#include <curl/curl.h>
#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "dpc/baselines.hpp"
#include "dpc/bench.hpp"
#include "dpc/plot.hpp"
#include "dpc/propagation.hpp"
#include "dpc/registry.hpp"
#include "dpc/synth.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace dpc;

namespace {

enum Exit { kOk = 0, kConfig = 1, kData = 2, kInternal = 3 };

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << text;
  if (!out) throw DatasetError("cannot write " + p.string());
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

size_t curl_sink(char* ptr, size_t size, size_t nmemb, void* user) {
  static_cast<std::string*>(user)->append(ptr, size * nmemb);
  return size * nmemb;
}

// Returns an error message, empty on success.
std::string http_get(const std::string& url, std::string& body) {
  CURL* h = curl_easy_init();
  if (!h) return "curl init failed";
  curl_easy_setopt(h, CURLOPT_URL, url.c_str());
  curl_easy_setopt(h, CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(h, CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(h, CURLOPT_CONNECTTIMEOUT, 20L);
  curl_easy_setopt(h, CURLOPT_TIMEOUT, 120L);
  curl_easy_setopt(h, CURLOPT_WRITEFUNCTION, curl_sink);
  curl_easy_setopt(h, CURLOPT_WRITEDATA, &body);
  const CURLcode rc = curl_easy_perform(h);
  curl_easy_cleanup(h);
  return rc == CURLE_OK ? std::string() : curl_easy_strerror(rc);
}

struct Common {
  std::string manifest;
  std::string data_dir = "data";
  std::string normalize = "auto";
  bool no_surrogate = false;

  Registry registry() const {
    return manifest.empty() ? Registry::builtin() : Registry::load(manifest);
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--manifest", c.manifest, "dataset manifest JSON (default: built-in)");
  cmd->add_option("--data-dir", c.data_dir, "directory holding dataset files");
  cmd->add_option("--normalize", c.normalize, "auto|on|off")->capture_default_str();
  cmd->add_flag("--no-surrogate", c.no_surrogate, "fail instead of generating stand-in data");
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  Common common;
  std::string config;
  std::vector<std::string> datasets;
  std::vector<std::string> algos;
  std::uint64_t seed = 0;
  std::optional<std::size_t> runs;
  std::vector<double> c;
  std::string spread_mode, nnn_mode;
  std::optional<std::size_t> jobs;
  std::string out;
};

int run_bench(const BenchArgs& a) {
  RunSpec spec = a.config.empty() ? RunSpec{} : runspec_from_json(read_file(a.config));
  if (!a.datasets.empty()) spec.datasets = a.datasets;
  if (!a.algos.empty()) {
    spec.algorithms.clear();
    for (const auto& s : a.algos) spec.algorithms.push_back(parse_algorithm(s));
  }
  if (a.runs) {
    spec.seeds.clear();
    for (std::size_t r = 0; r < *a.runs; ++r) spec.seeds.push_back(a.seed + r);
  } else if (a.seed != 0) {
    for (auto& s : spec.seeds) s += a.seed;
  }
  if (!a.c.empty()) spec.grid.c = a.c;
  if (!a.spread_mode.empty()) spec.spread_mode = parse_spread_mode(a.spread_mode);
  if (!a.nnn_mode.empty()) spec.nnn_mode = parse_nnn_mode(a.nnn_mode);
  if (a.common.normalize != "auto" || a.config.empty())
    spec.normalize = parse_normalize_mode(a.common.normalize);
  if (a.common.data_dir != "data" || a.config.empty()) spec.data_dir = a.common.data_dir;
  if (a.common.no_surrogate) spec.allow_surrogate = false;
  if (a.jobs) spec.jobs = *a.jobs;
  if (!a.out.empty()) spec.out_dir = a.out;
  if (spec.out_dir.empty()) throw ConfigError("bench needs --out (or out_dir in the config)");
  const Registry reg = a.common.registry();
  if (spec.datasets.size() == 1 && spec.datasets[0] == "all") {
    spec.datasets.clear();
    for (const auto& e : reg.entries()) spec.datasets.push_back(e.name);
  }

  const EvalReport report = run_benchmark(spec, reg);
  write_report(report, spec, spec.out_dir);
  std::cout << report_table(report);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  return kOk;
}

// ---- cluster --------------------------------------------------------------

struct ClusterArgs {
  Common common;
  std::string dataset;
  std::string algo = "dpc-ppnnn";
  std::uint64_t seed = 0;
  std::size_t runs = 1;
  double c = 0.6;
  double boost = 1.5;
  std::optional<std::size_t> boost_checks;
  std::string spread_mode = "std", nnn_mode = "exact";
  double dc_percentile = 2.0;
  std::string kernel = "gaussian";
  std::optional<std::size_t> k;
  std::optional<double> eps;
  double eps_percentile = 1.0;
  std::size_t min_pts = 4;
  std::string out;
};

int run_cluster(const ClusterArgs& a) {
  const Registry reg = a.common.registry();
  const ResolvedDataset rd = resolve_name(reg, a.dataset, a.common.data_dir,
                                          parse_normalize_mode(a.common.normalize),
                                          !a.common.no_surrogate);
  const Dataset& ds = rd.data;
  const Algorithm algo = parse_algorithm(a.algo);
  const std::size_t k = a.k.value_or(reg.contains(a.dataset) ? reg.find(a.dataset).clusters
                                                             : std::max<std::size_t>(ds.class_count(), 2));
  const std::vector<int>* gold = ds.gold_labels ? &*ds.gold_labels : nullptr;

  json summary{{"dataset", ds.name}, {"source", rd.source}, {"algorithm", to_string(algo)},
               {"n", ds.size()}, {"dim", ds.dim}};
  ClusterAssignment asg;
  if (algo == Algorithm::kmeans) {
    if (a.runs == 0) throw ConfigError("--runs must be >= 1");
    std::optional<KmeansResult> best;
    for (std::size_t r = 0; r < a.runs; ++r) {
      KmeansResult res = kmeans_cluster(ds, {k, 300, a.seed + r});
      if (!best || res.inertia < best->inertia) best = std::move(res);
    }
    summary["inertia"] = best->inertia;
    summary["params"] = {{"k", k}, {"restarts", a.runs}, {"seed", a.seed}};
    asg = std::move(best->assignment);
  } else {
    const DistanceMatrix dm = pairwise_distances(ds);
    if (algo == Algorithm::ppnnn) {
      PpnnnOptions opt;
      opt.nnn_mode = parse_nnn_mode(a.nnn_mode);
      opt.spread_mode = parse_spread_mode(a.spread_mode);
      const PpnnnModel m = prepare_ppnnn(dm, opt);
      PropagationConfig cfg;
      cfg.c = a.c;
      cfg.boost_factor = a.boost;
      cfg.boost_checks = a.boost_checks;
      cfg.seed = a.seed;
      cfg.runs = a.runs;
      EnsembleResult ens = run_ensemble(m.index, m.profile, m.selection, cfg, gold);
      summary["lambda"] = m.index.lambda;
      summary["outliers"] = m.index.empty_set_members.size();
      summary["candidates"] = m.selection.candidates;
      summary["centers"] = m.selection.centers;
      summary["center_fallback"] = m.selection.fallback;
      summary["best_run"] = ens.best_run;
      summary["best_seed"] = a.seed + ens.best_run;
      summary["criterion"] = ens.criterion;
      summary["params"] = {{"c", a.c}, {"boost_factor", a.boost}, {"runs", a.runs}};
      asg = std::move(ens.best);
    } else if (algo == Algorithm::dpc) {
      DpcParams p;
      p.d_c_percentile = a.dc_percentile;
      p.k = k;
      if (a.kernel == "cutoff") p.kernel = DpcKernel::cutoff;
      else if (a.kernel != "gaussian") throw ConfigError("--kernel must be gaussian or cutoff");
      asg = dpc_cluster(dm, p);
      summary["params"] = {{"dc_percentile", a.dc_percentile}, {"k", k}, {"kernel", a.kernel}};
    } else {
      const double eps = a.eps ? *a.eps : distance_percentile(dm, a.eps_percentile);
      asg = dbscan_cluster(dm, {eps, a.min_pts});
      summary["params"] = {{"eps", eps}, {"min_pts", a.min_pts}};
    }
  }
  summary["clusters"] = asg.cluster_count();
  summary["noise"] = asg.noise_count();
  if (gold) {
    const MetricTriple t = score_all(*gold, asg.labels);
    summary["ari"] = t.ari;
    summary["ami"] = t.ami;
    summary["fmi"] = t.fmi;
  }
  if (!a.out.empty()) {
    const fs::path dir = a.out;
    fs::create_directories(dir);
    write_file(dir / "labels.csv", assignment_csv(asg));
    write_file(dir / "summary.json", summary.dump(2) + "\n");
    PlotOptions po;
    po.title = ds.name + " / " + to_string(algo);
    emit_scatter(ds, asg, dir / "plot.svg", po);
  }
  std::cout << summary.dump(2) << '\n';
  return kOk;
}

// ---- plot -----------------------------------------------------------------

struct PlotArgs {
  Common common;
  std::string dataset;
  std::string labels;
  std::string out;
  std::string title;
};

int run_plot(const PlotArgs& a) {
  const ResolvedDataset rd =
      resolve_name(a.common.registry(), a.dataset, a.common.data_dir,
                   parse_normalize_mode(a.common.normalize), !a.common.no_surrogate);
  CsvOptions opt;
  opt.has_header = true;
  const Dataset lab = load_csv(a.labels, opt);
  if (lab.dim != 2 || lab.size() != rd.data.size())
    throw DatasetError(a.labels + ": expected index,label rows for " +
                       std::to_string(rd.data.size()) + " points");
  ClusterAssignment asg;
  asg.labels.assign(rd.data.size(), kNoise);
  for (std::size_t r = 0; r < lab.size(); ++r) {
    const double idx = lab.at(r, 0);
    if (idx < 0 || idx >= static_cast<double>(rd.data.size()))
      throw DatasetError(a.labels + ": index out of range at row " + std::to_string(r + 1));
    asg.labels[static_cast<std::size_t>(idx)] = static_cast<int>(lab.at(r, 1));
  }
  PlotOptions po;
  po.title = a.title.empty() ? rd.data.name : a.title;
  emit_scatter(rd.data, asg, a.out, po);
  return kOk;
}

// ---- synth ----------------------------------------------------------------

struct SynthArgs {
  std::string kind;
  std::vector<std::string> params;
  std::uint64_t seed = 0;
  std::string out;
};

int run_synth(const SynthArgs& a) {
  SynthParams p;
  try {
    for (const auto& kv : a.params) p.parse_assignment(kv);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const Dataset ds = synth_generate(a.kind, p, a.seed);
  const fs::path out(a.out);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_csv(ds, out);
  std::cout << ds.name << ": " << ds.size() << " points, " << ds.class_count() << " classes -> "
            << a.out << '\n';
  return kOk;
}

// ---- fetch-datasets -------------------------------------------------------

struct FetchArgs {
  Common common;
  std::vector<std::string> only;
  bool force = false;
  bool write_manifest = false;
};

int run_fetch(const FetchArgs& a) {
  const Registry reg = a.common.registry();
  const fs::path dir = a.common.data_dir;
  fs::create_directories(dir);
  if (a.write_manifest) {
    write_file(dir / "manifest.json", reg.to_json() + "\n");
    std::cout << "wrote " << (dir / "manifest.json").string() << '\n';
  }

  curl_global_init(CURL_GLOBAL_DEFAULT);
  int failures = 0;
  for (const auto& e : reg.entries()) {
    if (!a.only.empty() && std::find(a.only.begin(), a.only.end(), e.name) == a.only.end())
      continue;
    const fs::path target = dir / e.file;
    if (fs::exists(target) && !a.force) {
      const std::string have = sha256_hex(read_file(target));
      const bool ok = e.sha256.empty() || e.sha256 == have;
      std::cout << e.name << ": present" << (ok ? "" : " (checksum mismatch)") << " sha256=" << have
                << '\n';
      failures += ok ? 0 : 1;
      continue;
    }
    if (e.url.empty()) {
      std::cout << e.name << ": no url in manifest, skipped\n";
      continue;
    }
    std::string body;
    const std::string err = http_get(e.url, body);
    if (!err.empty()) {
      std::cerr << e.name << ": download failed: " << err << '\n';
      ++failures;
      continue;
    }
    const std::string got = sha256_hex(body);
    if (!e.sha256.empty() && got != e.sha256) {
      std::cerr << e.name << ": checksum mismatch (expected " << e.sha256 << ", got " << got
                << ")\n";
      ++failures;
      continue;
    }
    write_file(target, body);
    std::cout << e.name << ": saved " << target.string() << " sha256=" << got
              << (e.sha256.empty() ? " (unpinned)" : "") << '\n';
  }
  curl_global_cleanup();
  return failures == 0 ? kOk : kData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Density-peak clustering with natural-neighbor propagation"};
  app.require_subcommand(1);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "grid x seeds benchmark over registry datasets");
  add_common(b, bench.common);
  b->add_option("--config", bench.config, "JSON run spec");
  b->add_option("--dataset", bench.datasets, "dataset name (repeatable, or 'all')");
  b->add_option("--algo", bench.algos, "dpc-ppnnn|dpc|kmeans|dbscan (repeatable)");
  b->add_option("--seed", bench.seed, "first seed");
  b->add_option("--runs", bench.runs, "number of seeds");
  b->add_option("--c", bench.c, "propagation constant grid (repeatable)");
  b->add_option("--spread-mode", bench.spread_mode, "std|var");
  b->add_option("--nnn-mode", bench.nnn_mode, "exact|log");
  b->add_option("--jobs", bench.jobs, "worker threads");
  b->add_option("--out", bench.out, "output directory");

  ClusterArgs cl;
  auto* c = app.add_subcommand("cluster", "cluster one dataset with one parameter setting");
  add_common(c, cl.common);
  c->add_option("--dataset", cl.dataset, "registry name or synth:<kind>")->required();
  c->add_option("--algo", cl.algo)->capture_default_str();
  c->add_option("--seed", cl.seed)->capture_default_str();
  c->add_option("--runs", cl.runs, "ensemble size (kmeans: restarts)")->capture_default_str();
  c->add_option("--c", cl.c)->capture_default_str();
  c->add_option("--boost", cl.boost, "boost factor")->capture_default_str();
  c->add_option("--boost-checks", cl.boost_checks, "boosted checks per round (default lambda)");
  c->add_option("--spread-mode", cl.spread_mode, "std|var")->capture_default_str();
  c->add_option("--nnn-mode", cl.nnn_mode, "exact|log")->capture_default_str();
  c->add_option("--dc-percentile", cl.dc_percentile)->capture_default_str();
  c->add_option("--kernel", cl.kernel, "gaussian|cutoff")->capture_default_str();
  c->add_option("--k", cl.k, "cluster count for dpc/kmeans");
  c->add_option("--eps", cl.eps, "dbscan radius");
  c->add_option("--eps-percentile", cl.eps_percentile)->capture_default_str();
  c->add_option("--min-pts", cl.min_pts)->capture_default_str();
  c->add_option("--out", cl.out, "directory for labels.csv, summary.json, plot.svg");

  PlotArgs pl;
  auto* p = app.add_subcommand("plot", "render a labels CSV as an SVG scatter");
  add_common(p, pl.common);
  p->add_option("--dataset", pl.dataset)->required();
  p->add_option("--labels", pl.labels, "index,label CSV with header")->required();
  p->add_option("--out", pl.out)->required();
  p->add_option("--title", pl.title);

  SynthArgs sy;
  auto* s = app.add_subcommand("synth", "write a generated dataset as CSV");
  s->add_option("--kind", sy.kind)->required();
  s->add_option("--param", sy.params, "key=value (repeatable)");
  s->add_option("--seed", sy.seed)->capture_default_str();
  s->add_option("--out", sy.out)->required();

  FetchArgs fe;
  auto* f = app.add_subcommand("fetch-datasets", "download manifest datasets into --data-dir");
  add_common(f, fe.common);
  f->add_option("--dataset", fe.only, "restrict to these names");
  f->add_flag("--force", fe.force, "re-download existing files");
  f->add_flag("--write-manifest", fe.write_manifest, "also write manifest.json into --data-dir");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*b) return run_bench(bench);
    if (*c) return run_cluster(cl);
    if (*p) return run_plot(pl);
    if (*s) return run_synth(sy);
    if (*f) return run_fetch(fe);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const DatasetError& e) {
    std::cerr << "dataset error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
