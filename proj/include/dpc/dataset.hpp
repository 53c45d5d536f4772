#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dpc {

inline constexpr int kNoise = -1;

/// Raised for anything wrong with input data: unreadable files, bad cells,
/// shape violations.
class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// n points of d finite features, stored row-major, with optional gold labels.
struct Dataset {
  std::string name;
  std::size_t dim = 0;
  std::vector<double> values;
  std::optional<std::vector<int>> gold_labels;
  std::vector<std::string> warnings;

  std::size_t size() const { return dim == 0 ? 0 : values.size() / dim; }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * dim, dim};
  }
  double at(std::size_t i, std::size_t j) const { return values[i * dim + j]; }

  /// Number of distinct gold labels, or 0 when unlabeled.
  std::size_t class_count() const;
};

/// Builds a dataset from rows and checks every invariant.
Dataset make_dataset(std::string name, const std::vector<std::vector<double>>& rows,
                     std::optional<std::vector<int>> labels = std::nullopt);

/// Throws DatasetError unless n >= 2, all values finite and labels sized n.
void validate(const Dataset& ds);

struct CsvOptions {
  bool has_header = false;
  /// Column index (negative counts from the end, -1 = last), or header name
  /// (requires has_header).
  std::optional<std::variant<long, std::string>> label_column;
};

/// Reads comma- or whitespace-separated numeric rows. Lines starting with
/// '%' or '@' (ARFF headers) and blank lines are skipped. String labels are
/// interned to 0..c-1 in order of first appearance.
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Same parser over in-memory text; `source` is used for the dataset name.
Dataset parse_csv(const std::string& text, const CsvOptions& options,
                  const std::string& source = "inline");

/// Writes features (and gold labels as the last column, if any) using
/// shortest round-trip formatting so a reload is bit-exact.
void write_csv(const Dataset& ds, const std::filesystem::path& path);

/// Maps each column to [0, 1]. Constant columns become zero and add a warning.
Dataset min_max_normalize(const Dataset& ds);

/// Dense symmetric Euclidean distance matrix.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {d_.data() + i * n_, n_}; }

  /// Off-diagonal entries (i < j) in no particular order.
  std::vector<double> upper_triangle() const;
  double max_distance() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

DistanceMatrix pairwise_distances(const Dataset& ds);

double euclidean(std::span<const double> a, std::span<const double> b);

/// Linear-interpolated percentile (0..100) of the off-diagonal distances.
double distance_percentile(const DistanceMatrix& dm, double percent);

}  // namespace dpc
