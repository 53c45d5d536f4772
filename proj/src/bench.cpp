#include "dpc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dpc/baselines.hpp"
#include "dpc/plot.hpp"
#include "dpc/propagation.hpp"

namespace dpc {

namespace {

using nlohmann::json;

struct DatasetContext {
  std::string name;
  ResolvedDataset resolved;
  DistanceMatrix dm;
  std::vector<double> sorted_distances;
  std::size_t k = 0;
  std::optional<PpnnnModel> model;
};

struct Task {
  std::size_t context = 0;
  Algorithm algorithm = Algorithm::ppnnn;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
};

struct TaskResult {
  std::vector<int> labels;
  std::vector<std::size_t> centers;
  double seconds = 0.0;
};

double percentile_of_sorted(const std::vector<double>& v, double percent) {
  const double pos = percent / 100.0 * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::vector<Task> expand(const RunSpec& spec, std::size_t ctx, Algorithm algo) {
  std::vector<Task> tasks;
  const auto& g = spec.grid;
  switch (algo) {
    case Algorithm::ppnnn:
      for (double c : g.c)
        for (double boost : g.boost_factor)
          for (auto seed : spec.seeds)
            tasks.push_back({ctx, algo, {{"c", c}, {"boost_factor", boost}}, seed});
      break;
    case Algorithm::dpc:
      for (double pct : g.dc_percentile)
        tasks.push_back({ctx, algo, {{"dc_percentile", pct}}, 0});
      break;
    case Algorithm::kmeans:
      for (auto seed : spec.seeds)
        for (std::size_t r = 0; r < g.kmeans_restarts; ++r)
          tasks.push_back({ctx, algo, {}, seed * g.kmeans_restarts + r});
      break;
    case Algorithm::dbscan:
      for (double pct : g.eps_percentile)
        for (auto mp : g.min_pts)
          tasks.push_back(
              {ctx, algo, {{"eps_percentile", pct}, {"min_pts", static_cast<double>(mp)}}, 0});
      break;
  }
  return tasks;
}

TaskResult execute(const Task& t, const DatasetContext& ctx) {
  const auto start = std::chrono::steady_clock::now();
  TaskResult out;
  ClusterAssignment asg;
  switch (t.algorithm) {
    case Algorithm::ppnnn: {
      PropagationConfig cfg;
      cfg.c = t.params.at("c");
      cfg.boost_factor = t.params.at("boost_factor");
      cfg.seed = t.seed;
      asg = propagate(ctx.model->index, ctx.model->profile, ctx.model->selection, cfg);
      break;
    }
    case Algorithm::dpc: {
      DpcParams p;
      p.d_c_percentile = t.params.at("dc_percentile");
      p.k = ctx.k;
      p.kernel = DpcKernel::gaussian;
      asg = dpc_cluster(ctx.dm, p);
      break;
    }
    case Algorithm::kmeans: {
      KmeansParams p;
      p.k = ctx.k;
      p.seed = t.seed;
      asg = kmeans_cluster(ctx.resolved.data, p).assignment;
      break;
    }
    case Algorithm::dbscan: {
      DbscanParams p;
      p.eps = t.params.at("eps");
      p.min_pts = static_cast<std::size_t>(t.params.at("min_pts"));
      asg = dbscan_cluster(ctx.dm, p);
      break;
    }
  }
  out.labels = std::move(asg.labels);
  out.centers = std::move(asg.centers_used);
  out.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

bool better(const MetricTriple& a, const MetricTriple& b) {
  return a.ari > b.ari || (a.ari == b.ari && a.ami > b.ami);
}

std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

json params_json(const std::map<std::string, double>& params) {
  json j = json::object();
  for (const auto& [k, v] : params) j[k] = v;
  return j;
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::ppnnn: return "dpc-ppnnn";
    case Algorithm::dpc: return "dpc";
    case Algorithm::kmeans: return "kmeans";
    case Algorithm::dbscan: return "dbscan";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "dpc-ppnnn" || s == "ppnnn") return Algorithm::ppnnn;
  if (s == "dpc") return Algorithm::dpc;
  if (s == "kmeans" || s == "k-means") return Algorithm::kmeans;
  if (s == "dbscan") return Algorithm::dbscan;
  throw ConfigError("unknown algorithm '" + s + "' (expected dpc-ppnnn|dpc|kmeans|dbscan)");
}

std::vector<double> ParamGrid::default_eps_percentiles() {
  std::vector<double> out;
  for (int i = 0; i < 20; ++i) out.push_back(0.1 * std::pow(100.0, i / 19.0));
  return out;
}

void RunSpec::validate() const {
  if (datasets.empty()) throw ConfigError("no datasets given");
  if (algorithms.empty()) throw ConfigError("no algorithms given");
  if (seeds.empty()) throw ConfigError("seed list is empty");
  if (jobs == 0) throw ConfigError("jobs must be >= 1");
  for (auto a : algorithms) {
    const bool empty = (a == Algorithm::ppnnn && (grid.c.empty() || grid.boost_factor.empty())) ||
                       (a == Algorithm::dpc && grid.dc_percentile.empty()) ||
                       (a == Algorithm::kmeans && grid.kmeans_restarts == 0) ||
                       (a == Algorithm::dbscan && (grid.eps_percentile.empty() || grid.min_pts.empty()));
    if (empty) throw ConfigError("empty parameter grid for " + to_string(a));
  }
  for (double c : grid.c)
    if (!(c > 0.0)) throw ConfigError("grid C values must be positive");
  for (double b : grid.boost_factor)
    if (!(b >= 1.0)) throw ConfigError("grid boost factors must be >= 1");
  for (double p : grid.dc_percentile)
    if (!(p > 0.0 && p < 100.0)) throw ConfigError("d_c percentiles must lie in (0, 100)");
  for (double p : grid.eps_percentile)
    if (!(p > 0.0 && p <= 100.0)) throw ConfigError("eps percentiles must lie in (0, 100]");
  for (auto m : grid.min_pts)
    if (m == 0) throw ConfigError("min_pts must be >= 1");
}

RunSpec runspec_from_json(const std::string& text) {
  RunSpec s;
  try {
    const json j = json::parse(text);
    s.datasets = j.at("datasets").get<std::vector<std::string>>();
    if (j.contains("algorithms")) {
      s.algorithms.clear();
      for (const auto& a : j.at("algorithms")) s.algorithms.push_back(parse_algorithm(a));
    }
    if (j.contains("seeds")) s.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("normalize")) s.normalize = parse_normalize_mode(j.at("normalize"));
    if (j.contains("nnn_mode")) s.nnn_mode = parse_nnn_mode(j.at("nnn_mode"));
    if (j.contains("spread_mode")) s.spread_mode = parse_spread_mode(j.at("spread_mode"));
    if (j.contains("data_dir")) s.data_dir = j.at("data_dir").get<std::string>();
    if (j.contains("out_dir")) s.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("jobs")) s.jobs = j.at("jobs");
    if (j.contains("allow_surrogate")) s.allow_surrogate = j.at("allow_surrogate");
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      if (g.contains("c")) s.grid.c = g.at("c").get<std::vector<double>>();
      if (g.contains("boost_factor")) s.grid.boost_factor = g.at("boost_factor").get<std::vector<double>>();
      if (g.contains("dc_percentile")) s.grid.dc_percentile = g.at("dc_percentile").get<std::vector<double>>();
      if (g.contains("eps_percentile")) s.grid.eps_percentile = g.at("eps_percentile").get<std::vector<double>>();
      if (g.contains("min_pts")) s.grid.min_pts = g.at("min_pts").get<std::vector<std::size_t>>();
      if (g.contains("kmeans_restarts")) s.grid.kmeans_restarts = g.at("kmeans_restarts");
      if (g.contains("k")) s.grid.k = g.at("k").get<std::size_t>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("run spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("run spec: ") + e.what());
  }
  s.validate();
  return s;
}

std::string runspec_to_json(const RunSpec& s) {
  json j;
  j["datasets"] = s.datasets;
  j["algorithms"] = json::array();
  for (auto a : s.algorithms) j["algorithms"].push_back(to_string(a));
  j["seeds"] = s.seeds;
  j["normalize"] = to_string(s.normalize);
  j["nnn_mode"] = to_string(s.nnn_mode);
  j["spread_mode"] = to_string(s.spread_mode);
  j["data_dir"] = s.data_dir.string();
  j["allow_surrogate"] = s.allow_surrogate;
  json g;
  g["c"] = s.grid.c;
  g["boost_factor"] = s.grid.boost_factor;
  g["dc_percentile"] = s.grid.dc_percentile;
  g["eps_percentile"] = s.grid.eps_percentile;
  g["min_pts"] = s.grid.min_pts;
  g["kmeans_restarts"] = s.grid.kmeans_restarts;
  if (s.grid.k) g["k"] = *s.grid.k;
  j["grid"] = g;
  return j.dump(2);
}

const RunRecord* EvalReport::best_record(const std::string& dataset, Algorithm algorithm) const {
  for (const auto& b : best)
    if (b.dataset == dataset && b.algorithm == algorithm && b.best_run) return &runs[*b.best_run];
  return nullptr;
}

EvalReport run_benchmark(const RunSpec& spec, const Registry& registry) {
  spec.validate();
  EvalReport report;

  std::vector<DatasetContext> contexts;
  contexts.reserve(spec.datasets.size());
  for (const auto& name : spec.datasets) {
    DatasetContext ctx;
    ctx.name = name;
    ctx.resolved = resolve_name(registry, name, spec.data_dir, spec.normalize, spec.allow_surrogate);
    ctx.dm = pairwise_distances(ctx.resolved.data);
    if (spec.grid.k) ctx.k = *spec.grid.k;
    else if (registry.contains(name) && registry.find(name).clusters > 0)
      ctx.k = registry.find(name).clusters;
    else ctx.k = std::max<std::size_t>(1, ctx.resolved.data.class_count());
    if (!ctx.resolved.data.gold_labels)
      report.warnings.push_back(name + ": no gold labels; runs are not scored");
    if (ctx.resolved.source.rfind("surrogate:", 0) == 0)
      report.warnings.push_back(name + ": file not found, using generated stand-in (" +
                                ctx.resolved.source + ")");
    for (const auto& w : ctx.resolved.data.warnings) report.warnings.push_back(name + ": " + w);
    report.datasets[name] = ctx.resolved.data;
    contexts.push_back(std::move(ctx));
  }

  // Shared, seed-independent preparation.
  for (auto& ctx : contexts) {
    const bool needs_model = std::find(spec.algorithms.begin(), spec.algorithms.end(),
                                       Algorithm::ppnnn) != spec.algorithms.end();
    if (needs_model) {
      PpnnnOptions opts;
      opts.nnn_mode = spec.nnn_mode;
      opts.spread_mode = spec.spread_mode;
      ctx.model = prepare_ppnnn(ctx.dm, opts);
      for (const auto& w : ctx.model->profile.warnings) report.warnings.push_back(ctx.name + ": " + w);
    }
    if (std::find(spec.algorithms.begin(), spec.algorithms.end(), Algorithm::dbscan) !=
        spec.algorithms.end()) {
      ctx.sorted_distances = ctx.dm.upper_triangle();
      std::sort(ctx.sorted_distances.begin(), ctx.sorted_distances.end());
    }
  }

  std::vector<Task> tasks;
  std::vector<std::pair<std::size_t, std::size_t>> blocks;  // task ranges per (dataset, algorithm)
  for (std::size_t d = 0; d < contexts.size(); ++d) {
    for (auto algo : spec.algorithms) {
      auto block = expand(spec, d, algo);
      if (algo == Algorithm::dbscan)
        for (auto& t : block)
          t.params["eps"] = percentile_of_sorted(contexts[d].sorted_distances, t.params["eps_percentile"]);
      blocks.emplace_back(tasks.size(), tasks.size() + block.size());
      tasks.insert(tasks.end(), block.begin(), block.end());
    }
  }

  std::vector<TaskResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++)
      results[i] = execute(tasks[i], contexts[tasks[i].context]);
  };
  const std::size_t threads = std::min(spec.jobs, std::max<std::size_t>(1, tasks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (const auto& [begin, end] : blocks) {
    const Task& first = tasks[begin];
    const DatasetContext& ctx = contexts[first.context];
    BestResult best;
    best.dataset = ctx.name;
    best.source = ctx.resolved.source;
    best.algorithm = first.algorithm;
    best.run_count = end - begin;
    const auto* gold = ctx.resolved.data.gold_labels ? &*ctx.resolved.data.gold_labels : nullptr;
    for (std::size_t i = begin; i < end; ++i) {
      RunRecord rec;
      char id[160];
      std::string stem = ctx.name;
      for (char& ch : stem)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_' && ch != '.')
          ch = '-';
      std::snprintf(id, sizeof id, "%s__%s__%04zu", stem.c_str(),
                    to_string(first.algorithm).c_str(), i - begin);
      rec.run_id = id;
      rec.dataset = ctx.name;
      rec.algorithm = first.algorithm;
      rec.params = tasks[i].params;
      rec.seed = tasks[i].seed;
      rec.labels = std::move(results[i].labels);
      rec.centers = std::move(results[i].centers);
      rec.noise = static_cast<std::size_t>(std::count(rec.labels.begin(), rec.labels.end(), kNoise));
      {
        std::vector<int> ids;
        for (int l : rec.labels)
          if (l >= 0) ids.push_back(l);
        std::sort(ids.begin(), ids.end());
        rec.clusters = static_cast<std::size_t>(std::unique(ids.begin(), ids.end()) - ids.begin());
      }
      if (gold) rec.scores = score_all(*gold, rec.labels);
      best.wall_seconds += results[i].seconds;
      if (!spec.keep_labels) {
        rec.labels.clear();
        rec.labels.shrink_to_fit();
      }
      report.runs.push_back(std::move(rec));
      const std::size_t idx = report.runs.size() - 1;
      if (gold && (!best.best_run || better(*report.runs[idx].scores, *report.runs[*best.best_run].scores)))
        best.best_run = idx;
    }
    report.best.push_back(best);
  }
  return report;
}

std::string report_json(const EvalReport& r) {
  json j;
  j["criterion"] = r.criterion;
  j["warnings"] = r.warnings;
  j["best"] = json::array();
  for (const auto& b : r.best) {
    json e{{"dataset", b.dataset},
           {"source", b.source},
           {"algorithm", to_string(b.algorithm)},
           {"runs", b.run_count}};
    if (b.best_run) {
      const auto& rec = r.runs[*b.best_run];
      e["run_id"] = rec.run_id;
      e["params"] = params_json(rec.params);
      e["seed"] = rec.seed;
      e["ari"] = rec.scores->ari;
      e["ami"] = rec.scores->ami;
      e["fmi"] = rec.scores->fmi;
      e["clusters"] = rec.clusters;
      e["noise"] = rec.noise;
    }
    j["best"].push_back(std::move(e));
  }
  j["runs"] = json::array();
  for (const auto& rec : r.runs) {
    json e{{"run_id", rec.run_id},
           {"dataset", rec.dataset},
           {"algorithm", to_string(rec.algorithm)},
           {"params", params_json(rec.params)},
           {"seed", rec.seed},
           {"clusters", rec.clusters},
           {"noise", rec.noise}};
    if (rec.scores) {
      e["ari"] = rec.scores->ari;
      e["ami"] = rec.scores->ami;
      e["fmi"] = rec.scores->fmi;
    }
    j["runs"].push_back(std::move(e));
  }
  return j.dump(2);
}

std::string report_table(const EvalReport& r) {
  std::ostringstream out;
  std::vector<std::string> order;
  for (const auto& b : r.best)
    if (std::find(order.begin(), order.end(), b.dataset) == order.end()) order.push_back(b.dataset);
  char line[160];
  for (const auto& ds : order) {
    out << ds << '\n';
    std::snprintf(line, sizeof line, "  %-12s %8s %8s %8s   %s\n", "Algorithm", "ARI", "AMI", "FMI",
                  "best params");
    out << line;
    for (const auto& b : r.best) {
      if (b.dataset != ds) continue;
      if (!b.best_run) {
        std::snprintf(line, sizeof line, "  %-12s %8s %8s %8s\n", to_string(b.algorithm).c_str(),
                      "-", "-", "-");
        out << line;
        continue;
      }
      const auto& rec = r.runs[*b.best_run];
      std::string params;
      for (const auto& [k, v] : rec.params) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s=%g ", k.c_str(), v);
        params += buf;
      }
      params += "seed=" + std::to_string(rec.seed);
      std::snprintf(line, sizeof line, "  %-12s %8s %8s %8s   %s\n", to_string(b.algorithm).c_str(),
                    fmt4(rec.scores->ari).c_str(), fmt4(rec.scores->ami).c_str(),
                    fmt4(rec.scores->fmi).c_str(), params.c_str());
      out << line;
    }
    out << '\n';
  }
  return out.str();
}

void write_report(const EvalReport& report, const RunSpec& spec,
                  const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir / "labels");
  fs::create_directories(out_dir / "runs");
  fs::create_directories(out_dir / "plots");
  auto write = [](const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw DatasetError("cannot write " + p.string());
    f << text;
  };
  write(out_dir / "report.json", report_json(report));
  write(out_dir / "table.txt", report_table(report));
  write(out_dir / "spec.json", runspec_to_json(spec));

  json timings = json::array();
  for (const auto& b : report.best)
    timings.push_back({{"dataset", b.dataset}, {"algorithm", to_string(b.algorithm)},
                       {"seconds", b.wall_seconds}});
  write(out_dir / "timings.json", timings.dump(2));

  for (const auto& rec : report.runs) {
    json replay{{"run_id", rec.run_id},
                {"dataset", rec.dataset},
                {"algorithm", to_string(rec.algorithm)},
                {"params", params_json(rec.params)},
                {"seed", rec.seed},
                {"normalize", to_string(spec.normalize)},
                {"nnn_mode", to_string(spec.nnn_mode)},
                {"spread_mode", to_string(spec.spread_mode)},
                {"data_dir", spec.data_dir.string()},
                {"centers", rec.centers}};
    write(out_dir / "runs" / (rec.run_id + ".json"), replay.dump(2));
    if (!rec.labels.empty()) {
      std::ostringstream csv;
      csv << "index,label\n";
      for (std::size_t i = 0; i < rec.labels.size(); ++i) csv << i << ',' << rec.labels[i] << '\n';
      write(out_dir / "labels" / (rec.run_id + ".csv"), csv.str());
    }
  }

  for (const auto& b : report.best) {
    if (!b.best_run) continue;
    const auto& rec = report.runs[*b.best_run];
    auto ds = report.datasets.find(rec.dataset);
    if (ds == report.datasets.end() || rec.labels.empty()) continue;
    ClusterAssignment asg;
    asg.labels = rec.labels;
    asg.centers_used = rec.centers;
    PlotOptions opts;
    opts.title = rec.dataset + " / " + to_string(rec.algorithm);
    emit_scatter(ds->second, asg, out_dir / "plots" / (rec.run_id + ".svg"), opts);
  }
}

}  // namespace dpc
