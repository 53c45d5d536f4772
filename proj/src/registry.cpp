#include "dpc/registry.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dpc/synth.hpp"

namespace dpc {

namespace {

using nlohmann::json;

constexpr const char* kArtificial =
    "https://raw.githubusercontent.com/deric/clustering-benchmark/master/src/main/resources/"
    "datasets/artificial/";
constexpr const char* kRealWorld =
    "https://raw.githubusercontent.com/deric/clustering-benchmark/master/src/main/resources/"
    "datasets/real-world/";

DatasetEntry entry_from_json(const json& j) {
  DatasetEntry e;
  e.name = j.at("name").get<std::string>();
  e.file = j.value("file", e.name + ".csv");
  e.url = j.value("url", "");
  e.sha256 = j.value("sha256", "");
  if (j.contains("label_column")) {
    const auto& lc = j.at("label_column");
    if (lc.is_string() && lc.get<std::string>() == "last") e.label_column = -1;
    else e.label_column = lc.get<int>();
  }
  e.has_header = j.value("has_header", false);
  e.clusters = j.value("clusters", std::size_t{0});
  const auto kind = j.value("kind", std::string("synthetic"));
  if (kind == "synthetic") e.kind = DatasetKind::synthetic;
  else if (kind == "real") e.kind = DatasetKind::real;
  else throw DatasetError("manifest: unknown kind '" + kind + "' for " + e.name);
  e.surrogate = j.value("surrogate", "");
  return e;
}

json entry_to_json(const DatasetEntry& e) {
  json j{{"name", e.name},
         {"file", e.file},
         {"url", e.url},
         {"sha256", e.sha256},
         {"has_header", e.has_header},
         {"clusters", e.clusters},
         {"kind", e.kind == DatasetKind::real ? "real" : "synthetic"}};
  if (e.label_column == -1) j["label_column"] = "last";
  else j["label_column"] = e.label_column;
  if (!e.surrogate.empty()) j["surrogate"] = e.surrogate;
  return j;
}

DatasetEntry artificial(const std::string& name, std::size_t k, const std::string& surrogate = "") {
  DatasetEntry e;
  e.name = name;
  e.file = name + ".arff";
  e.url = std::string(kArtificial) + name + ".arff";
  e.clusters = k;
  e.kind = DatasetKind::synthetic;
  e.surrogate = surrogate;
  return e;
}

DatasetEntry real_world(const std::string& name, std::size_t k) {
  DatasetEntry e;
  e.name = name;
  e.file = name + ".arff";
  e.url = std::string(kRealWorld) + name + ".arff";
  e.clusters = k;
  e.kind = DatasetKind::real;
  return e;
}

}  // namespace

NormalizeMode parse_normalize_mode(const std::string& s) {
  if (s == "auto") return NormalizeMode::auto_;
  if (s == "on" || s == "true" || s == "1") return NormalizeMode::on;
  if (s == "off" || s == "false" || s == "0") return NormalizeMode::off;
  throw std::invalid_argument("unknown normalize mode '" + s + "' (expected auto|on|off)");
}

std::string to_string(NormalizeMode mode) {
  switch (mode) {
    case NormalizeMode::on: return "on";
    case NormalizeMode::off: return "off";
    default: return "auto";
  }
}

Registry Registry::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DatasetError(std::string("manifest: ") + e.what());
  }
  std::vector<DatasetEntry> entries;
  try {
    for (const auto& item : j.at("datasets")) entries.push_back(entry_from_json(item));
  } catch (const json::exception& e) {
    throw DatasetError(std::string("manifest: ") + e.what());
  }
  return Registry(std::move(entries));
}

Registry Registry::load(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw DatasetError("cannot open manifest " + manifest.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

Registry Registry::builtin() {
  return Registry({
      artificial("2d-4c-no9", 4),
      artificial("3-spiral", 3, "3-spiral"),
      artificial("aggregation", 7),
      artificial("cassini", 3, "cassini"),
      artificial("complex9", 9),
      artificial("compound", 6),
      artificial("dartboard1", 4, "dartboard1"),
      artificial("jain", 2, "jain"),
      artificial("R15", 15, "r15"),
      artificial("shapes", 4, "shapes"),
      real_world("ecoli", 8),
      real_world("glass", 7),
      real_world("heart-statlog", 2),
      real_world("iono", 2),
      real_world("iris", 3),
      real_world("thy", 3),
      real_world("wdbc", 2),
      real_world("wine", 3),
  });
}

const DatasetEntry& Registry::find(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return e;
  throw DatasetError("dataset '" + name + "' is not in the registry");
}

bool Registry::contains(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return true;
  return false;
}

std::string Registry::to_json() const {
  json j{{"version", 1}, {"datasets", json::array()}};
  for (const auto& e : entries_) j["datasets"].push_back(entry_to_json(e));
  return j.dump(2);
}

ResolvedDataset resolve(const DatasetEntry& entry, const std::filesystem::path& data_dir,
                        NormalizeMode normalize, bool allow_surrogate) {
  ResolvedDataset out;
  const auto path = data_dir / entry.file;
  if (std::filesystem::exists(path)) {
    CsvOptions opts;
    opts.has_header = entry.has_header;
    opts.label_column = static_cast<long>(entry.label_column);
    out.data = load_csv(path, opts);
    out.data.name = entry.name;
    out.source = "file:" + path.string();
  } else if (allow_surrogate && !entry.surrogate.empty()) {
    out.data = synth_generate(entry.surrogate, {}, 0);
    out.data.name = entry.name;
    out.source = "surrogate:" + entry.surrogate;
  } else {
    throw DatasetError("dataset '" + entry.name + "' not found at " + path.string() +
                       " (run fetch-datasets or place the file there)");
  }

  const bool apply = normalize == NormalizeMode::on ||
                     (normalize == NormalizeMode::auto_ && entry.kind == DatasetKind::real);
  if (apply) {
    out.data = min_max_normalize(out.data);
    out.normalized = true;
  }
  return out;
}

ResolvedDataset resolve_name(const Registry& registry, const std::string& name,
                             const std::filesystem::path& data_dir, NormalizeMode normalize,
                             bool allow_surrogate) {
  if (name.rfind("synth:", 0) == 0) {
    const std::string kind = name.substr(6);
    ResolvedDataset out;
    out.data = synth_generate(kind, {}, 0);
    out.source = "synth:" + kind;
    if (normalize == NormalizeMode::on) {
      out.data = min_max_normalize(out.data);
      out.normalized = true;
    }
    return out;
  }
  return resolve(registry.find(name), data_dir, normalize, allow_surrogate);
}

}  // namespace dpc
