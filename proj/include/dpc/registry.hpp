#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dpc/dataset.hpp"

namespace dpc {

enum class DatasetKind { synthetic, real };
enum class NormalizeMode { auto_, on, off };

NormalizeMode parse_normalize_mode(const std::string& s);
std::string to_string(NormalizeMode mode);

struct DatasetEntry {
  std::string name;
  std::string file;  // relative to the data directory
  std::string url;
  std::string sha256;
  /// Column index; negative counts from the end (-1 = last column).
  int label_column = -1;
  bool has_header = false;
  std::size_t clusters = 0;
  DatasetKind kind = DatasetKind::synthetic;
  /// Generator used when the file is missing; empty means no stand-in.
  std::string surrogate;
};

class Registry {
 public:
  Registry() = default;
  explicit Registry(std::vector<DatasetEntry> entries) : entries_(std::move(entries)) {}

  /// Reads {"version": 1, "datasets": [...]}.
  static Registry load(const std::filesystem::path& manifest);
  static Registry from_json(const std::string& text);
  /// The shipped manifest for the benchmark sets.
  static Registry builtin();

  const DatasetEntry& find(const std::string& name) const;
  bool contains(const std::string& name) const;
  const std::vector<DatasetEntry>& entries() const { return entries_; }

  std::string to_json() const;

 private:
  std::vector<DatasetEntry> entries_;
};

struct ResolvedDataset {
  Dataset data;
  /// "file:<path>", "surrogate:<generator>" or "synth:<generator>".
  std::string source;
  bool normalized = false;
};

/// Loads the entry's file from `data_dir`, or builds its surrogate when the
/// file is absent. auto_ normalization applies to real-world sets only.
/// Throws DatasetError when neither is possible.
ResolvedDataset resolve(const DatasetEntry& entry, const std::filesystem::path& data_dir,
                        NormalizeMode normalize, bool allow_surrogate = true);

/// Registry lookup, or "synth:<kind>" for an ad-hoc generator with seed 0.
ResolvedDataset resolve_name(const Registry& registry, const std::string& name,
                             const std::filesystem::path& data_dir, NormalizeMode normalize,
                             bool allow_surrogate = true);

}  // namespace dpc
