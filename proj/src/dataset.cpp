#include "dpc/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace dpc {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  if (line.find(',') != std::string::npos) {
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
  } else {
    std::istringstream in(line);
    std::string cell;
    while (in >> cell) out.push_back(cell);
  }
  return out;
}

bool parse_double(const std::string& cell, double& out) {
  if (cell.empty()) return false;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

std::size_t Dataset::class_count() const {
  if (!gold_labels) return 0;
  return std::set<int>(gold_labels->begin(), gold_labels->end()).size();
}

void validate(const Dataset& ds) {
  if (ds.dim == 0) throw DatasetError(ds.name + ": zero feature columns");
  if (ds.values.size() % ds.dim != 0)
    throw DatasetError(ds.name + ": ragged feature storage");
  if (ds.size() < 2) throw DatasetError(ds.name + ": need at least 2 rows");
  for (std::size_t k = 0; k < ds.values.size(); ++k) {
    if (!std::isfinite(ds.values[k]))
      throw DatasetError(ds.name + ": non-finite value at row " +
                         std::to_string(k / ds.dim + 1));
  }
  if (ds.gold_labels && ds.gold_labels->size() != ds.size())
    throw DatasetError(ds.name + ": label count does not match row count");
}

Dataset make_dataset(std::string name, const std::vector<std::vector<double>>& rows,
                     std::optional<std::vector<int>> labels) {
  Dataset ds;
  ds.name = std::move(name);
  ds.dim = rows.empty() ? 0 : rows.front().size();
  ds.values.reserve(rows.size() * ds.dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != ds.dim)
      throw DatasetError(ds.name + ": row " + std::to_string(i + 1) +
                         " has " + std::to_string(rows[i].size()) +
                         " features, expected " + std::to_string(ds.dim));
    ds.values.insert(ds.values.end(), rows[i].begin(), rows[i].end());
  }
  ds.gold_labels = std::move(labels);
  validate(ds);
  return ds;
}

Dataset parse_csv(const std::string& text, const CsvOptions& options,
                  const std::string& source) {
  Dataset ds;
  ds.name = std::filesystem::path(source).stem().string();

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> label_col;
  std::optional<long> from_end;
  bool header_pending = options.has_header;
  std::size_t expected_fields = 0;
  std::map<std::string, int> interned;
  std::vector<int> labels;

  if (options.label_column) {
    if (auto* idx = std::get_if<long>(&*options.label_column)) {
      if (*idx >= 0) label_col = static_cast<std::size_t>(*idx);
      else from_end = *idx;
    } else if (!options.has_header)
      throw DatasetError(source + ": label column given by name but file has no header");
  }

  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '%' || stripped[0] == '@' || stripped[0] == '#')
      continue;
    auto fields = split_fields(stripped);

    if (header_pending) {
      header_pending = false;
      expected_fields = fields.size();
      if (options.label_column && !label_col && !from_end) {
        const auto& name = std::get<std::string>(*options.label_column);
        auto it = std::find(fields.begin(), fields.end(), name);
        if (it == fields.end())
          throw DatasetError(source + ": no header column named '" + name + "'");
        label_col = static_cast<std::size_t>(it - fields.begin());
      }
      continue;
    }

    if (expected_fields == 0) expected_fields = fields.size();
    if (from_end && !label_col) {
      const long resolved = static_cast<long>(fields.size()) + *from_end;
      if (resolved < 0)
        throw DatasetError(source + ": label column " + std::to_string(*from_end) +
                           " out of range at row " + std::to_string(line_no));
      label_col = static_cast<std::size_t>(resolved);
    }
    if (fields.size() != expected_fields)
      throw DatasetError(source + ": malformed row at row " + std::to_string(line_no) +
                         " (" + std::to_string(fields.size()) + " fields, expected " +
                         std::to_string(expected_fields) + ")");
    if (label_col && *label_col >= fields.size())
      throw DatasetError(source + ": label column " + std::to_string(*label_col) +
                         " out of range at row " + std::to_string(line_no));

    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (label_col && c == *label_col) {
        auto [it, inserted] =
            interned.emplace(fields[c], static_cast<int>(interned.size()));
        labels.push_back(it->second);
        continue;
      }
      double v = 0.0;
      if (!parse_double(fields[c], v))
        throw DatasetError(source + ": non-numeric cell at row " + std::to_string(line_no) +
                           ", column " + std::to_string(c));
      ds.values.push_back(v);
    }
    ds.dim = fields.size() - (label_col ? 1 : 0);
  }

  if (ds.dim == 0 || ds.values.size() / ds.dim < 2)
    throw DatasetError(source + ": fewer than 2 rows");
  if (label_col) ds.gold_labels = std::move(labels);
  validate(ds);
  return ds;
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), options, path.string());
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DatasetError("cannot write " + path.string());
  char buf[64];
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = 0; j < ds.dim; ++j) {
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, ds.at(i, j));
      if (j) out << ',';
      out.write(buf, end - buf);
    }
    if (ds.gold_labels) out << ',' << (*ds.gold_labels)[i];
    out << '\n';
  }
  if (!out) throw DatasetError("write failed: " + path.string());
}

Dataset min_max_normalize(const Dataset& ds) {
  Dataset out = ds;
  const std::size_t n = ds.size();
  for (std::size_t j = 0; j < ds.dim; ++j) {
    double lo = ds.at(0, j), hi = ds.at(0, j);
    for (std::size_t i = 1; i < n; ++i) {
      lo = std::min(lo, ds.at(i, j));
      hi = std::max(hi, ds.at(i, j));
    }
    const double span = hi - lo;
    if (span > 0.0) {
      for (std::size_t i = 0; i < n; ++i)
        out.values[i * ds.dim + j] = (ds.at(i, j) - lo) / span;
    } else {
      for (std::size_t i = 0; i < n; ++i) out.values[i * ds.dim + j] = 0.0;
      out.warnings.push_back("constant column " + std::to_string(j) + " mapped to 0");
    }
  }
  return out;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double t = a[k] - b[k];
    s += t * t;
  }
  return std::sqrt(s);
}

DistanceMatrix pairwise_distances(const Dataset& ds) {
  const std::size_t n = ds.size();
  DistanceMatrix dm(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclidean(ds.row(i), ds.row(j));
      dm(i, j) = d;
      dm(j, i) = d;
    }
  }
  return dm;
}

std::vector<double> DistanceMatrix::upper_triangle() const {
  std::vector<double> out;
  out.reserve(n_ * (n_ - 1) / 2);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) out.push_back((*this)(i, j));
  return out;
}

double DistanceMatrix::max_distance() const {
  return d_.empty() ? 0.0 : *std::max_element(d_.begin(), d_.end());
}

double distance_percentile(const DistanceMatrix& dm, double percent) {
  if (!(percent >= 0.0 && percent <= 100.0))
    throw std::invalid_argument("percentile must lie in [0, 100]");
  auto v = dm.upper_triangle();
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const double pos = percent / 100.0 * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

}  // namespace dpc
