#include "dpc/synth.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "dpc/rng.hpp"

namespace dpc {

namespace {

using std::numbers::pi;

struct Builder {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  void add(double x, double y, int label) {
    rows.push_back({x, y});
    labels.push_back(label);
  }
};

std::size_t count(const SynthParams& p, const std::string& key, double fallback,
                  std::size_t minimum = 1) {
  const double v = p.get(key, fallback);
  if (!(v >= static_cast<double>(minimum)) || v != std::floor(v))
    throw std::invalid_argument("synth: '" + key + "' must be an integer >= " +
                                std::to_string(minimum));
  return static_cast<std::size_t>(v);
}

double positive(const SynthParams& p, const std::string& key, double fallback) {
  const double v = p.get(key, fallback);
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument("synth: '" + key + "' must be positive");
  return v;
}

double non_negative(const SynthParams& p, const std::string& key, double fallback) {
  const double v = p.get(key, fallback);
  if (!(v >= 0.0) || !std::isfinite(v))
    throw std::invalid_argument("synth: '" + key + "' must be non-negative");
  return v;
}

// Uniform point in the annulus sector r in [r0, r1], angle in [a0, a1].
void annulus_point(Rng& rng, double cx, double cy, double r0, double r1, double a0, double a1,
                   double& x, double& y) {
  const double r = std::sqrt(rng.uniform(r0 * r0, r1 * r1));
  const double a = rng.uniform(a0, a1);
  x = cx + r * std::cos(a);
  y = cy + r * std::sin(a);
}

Dataset two_moons(const SynthParams& p, Rng& rng) {
  const std::size_t n = count(p, "n", 300, 2);
  const double noise = non_negative(p, "noise", 0.06);
  Builder b;
  const std::size_t outer = n - n / 2;
  for (std::size_t i = 0; i < outer; ++i) {
    const double t = rng.uniform(0.0, pi);
    b.add(std::cos(t) + rng.normal(0, noise), std::sin(t) + rng.normal(0, noise), 0);
  }
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double t = rng.uniform(0.0, pi);
    b.add(1.0 - std::cos(t) + rng.normal(0, noise), 0.5 - std::sin(t) + rng.normal(0, noise), 1);
  }
  return make_dataset("two_moons", b.rows, b.labels);
}

Dataset donut3(const SynthParams& p, Rng& rng) {
  const std::size_t n = count(p, "n", 200);
  const double inner = non_negative(p, "inner", 0.5);
  const double outer = positive(p, "outer", 1.0);
  if (inner >= outer) throw std::invalid_argument("synth: donut inner radius must be < outer");
  const double gap = 2.0 * outer + 0.4 * outer;
  const double cx[3] = {0.0, gap, 0.5 * gap};
  const double cy[3] = {0.0, 0.0, gap * std::sqrt(3.0) / 2.0};
  Builder b;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < n; ++i) {
      double x, y;
      annulus_point(rng, cx[c], cy[c], inner, outer, 0.0, 2 * pi, x, y);
      b.add(x, y, c);
    }
  return make_dataset("donut3", b.rows, b.labels);
}

Dataset gauss2_unbalanced(const SynthParams& p, Rng& rng) {
  const std::size_t n1 = count(p, "n1", 500);
  const std::size_t n2 = count(p, "n2", 50);
  const double ratio = positive(p, "ratio", 10.0);
  const double s1 = positive(p, "spread", 1.0);
  const double sep = positive(p, "separation", 6.0);
  // Peak density scales as n / s^2.
  const double s2 = s1 * std::sqrt(ratio * static_cast<double>(n2) / static_cast<double>(n1));
  Builder b;
  for (std::size_t i = 0; i < n1; ++i) b.add(rng.normal(0, s1), rng.normal(0, s1), 0);
  for (std::size_t i = 0; i < n2; ++i) b.add(sep + rng.normal(0, s2), rng.normal(0, s2), 1);
  return make_dataset("gauss2_unbalanced", b.rows, b.labels);
}

Dataset blobs(const SynthParams& p, Rng& rng) {
  const std::size_t k = count(p, "k", 3);
  const std::size_t n = count(p, "n", 100);
  const double spread = positive(p, "spread", 0.5);
  const double radius = non_negative(p, "radius", 5.0);
  Builder b;
  for (std::size_t c = 0; c < k; ++c) {
    const double a = 2 * pi * static_cast<double>(c) / static_cast<double>(k);
    const double cx = k == 1 ? 0.0 : radius * std::cos(a);
    const double cy = k == 1 ? 0.0 : radius * std::sin(a);
    for (std::size_t i = 0; i < n; ++i)
      b.add(rng.normal(cx, spread), rng.normal(cy, spread), static_cast<int>(c));
  }
  if (b.rows.size() < 2) throw std::invalid_argument("synth: blobs needs at least 2 points");
  return make_dataset("blobs", b.rows, b.labels);
}

// Two interleaved crescents of different density (373 points, 276 + 97).
Dataset jain(const SynthParams&, Rng& rng) {
  Builder b;
  for (int i = 0; i < 276; ++i) {
    double x, y;
    annulus_point(rng, 0.0, 0.0, 0.875, 1.125, 0.0, pi, x, y);
    b.add(10 * x, 10 * y, 0);
  }
  for (int i = 0; i < 97; ++i) {
    double x, y;
    annulus_point(rng, 1.0, 0.5, 0.825, 1.175, pi, 2 * pi, x, y);
    b.add(10 * x, 10 * y, 1);
  }
  return make_dataset("jain", b.rows, b.labels);
}

// Three interleaved Archimedean spiral arms (312 points: 106, 101, 105).
Dataset spiral3(const SynthParams&, Rng& rng) {
  Builder b;
  const int sizes[3] = {106, 101, 105};
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < sizes[c]; ++i) {
      const double t = pi / 2 + (3 * pi - pi / 2) * i / (sizes[c] - 1);
      const double a = t + 2 * pi * c / 3;
      b.add(t * std::cos(a) + rng.normal(0, 0.05), t * std::sin(a) + rng.normal(0, 0.05), c);
    }
  }
  return make_dataset("3-spiral", b.rows, b.labels);
}

// Two opposing bananas around a central disk (1000 points: 400, 400, 200).
Dataset cassini(const SynthParams&, Rng& rng) {
  Builder b;
  const double a0 = 55 * pi / 180, a1 = 125 * pi / 180;
  for (int i = 0; i < 400; ++i) {
    double x, y;
    annulus_point(rng, 0.0, -1.5, 2.3, 2.9, a0, a1, x, y);
    b.add(x, y, 0);
  }
  for (int i = 0; i < 400; ++i) {
    double x, y;
    annulus_point(rng, 0.0, 1.5, 2.3, 2.9, a0 + pi, a1 + pi, x, y);
    b.add(x, y, 1);
  }
  for (int i = 0; i < 200; ++i) {
    double x, y;
    annulus_point(rng, 0.0, 0.0, 0.0, 0.5, 0.0, 2 * pi, x, y);
    b.add(x, y, 2);
  }
  return make_dataset("cassini", b.rows, b.labels);
}

// Four thin concentric rings of 250 points.
Dataset dartboard1(const SynthParams&, Rng& rng) {
  Builder b;
  for (int c = 0; c < 4; ++c) {
    const double r = 0.2 * (c + 1);
    for (int i = 0; i < 250; ++i) {
      const double a = rng.uniform(0.0, 2 * pi);
      const double rr = r + rng.normal(0, 0.005);
      b.add(rr * std::cos(a), rr * std::sin(a), c);
    }
  }
  return make_dataset("dartboard1", b.rows, b.labels);
}

// Gaussian, square, triangle and sine wave, 250 points each.
Dataset shapes(const SynthParams&, Rng& rng) {
  Builder b;
  for (int i = 0; i < 250; ++i) b.add(rng.normal(-1, 0.25), rng.normal(2, 0.25), 0);
  for (int i = 0; i < 250; ++i) b.add(rng.uniform(0.5, 1.5), rng.uniform(1.5, 2.5), 1);
  for (int i = 0; i < 250; ++i) {
    double u = rng.uniform(), v = rng.uniform();
    if (u + v > 1) {
      u = 1 - u;
      v = 1 - v;
    }
    b.add(-1.5 + u * 1.0 + v * 0.5, -1.5 + v * 1.0, 2);
  }
  for (int i = 0; i < 250; ++i) {
    const double x = rng.uniform(0.0, 2.0);
    b.add(x, -1 + 0.5 * std::sin(pi * x) + rng.normal(0, 0.05), 3);
  }
  return make_dataset("shapes", b.rows, b.labels);
}

// Fifteen Gaussians of 40 points: one central, two rings of seven.
Dataset r15(const SynthParams&, Rng& rng) {
  Builder b;
  std::vector<std::pair<double, double>> centers{{10.0, 10.0}};
  for (int k = 0; k < 7; ++k) {
    centers.emplace_back(10 + 2.0 * std::cos(2 * pi * k / 7), 10 + 2.0 * std::sin(2 * pi * k / 7));
    centers.emplace_back(10 + 6.5 * std::cos(2 * pi * k / 7 + pi / 7),
                         10 + 6.5 * std::sin(2 * pi * k / 7 + pi / 7));
  }
  for (std::size_t c = 0; c < centers.size(); ++c)
    for (int i = 0; i < 40; ++i)
      b.add(rng.normal(centers[c].first, 0.3), rng.normal(centers[c].second, 0.3),
            static_cast<int>(c));
  return make_dataset("r15", b.rows, b.labels);
}

const std::map<std::string, std::function<Dataset(const SynthParams&, Rng&)>>& generators() {
  static const std::map<std::string, std::function<Dataset(const SynthParams&, Rng&)>> table{
      {"two_moons", two_moons},   {"donut3", donut3}, {"gauss2_unbalanced", gauss2_unbalanced},
      {"blobs", blobs},           {"jain", jain},     {"3-spiral", spiral3},
      {"cassini", cassini},       {"dartboard1", dartboard1},
      {"shapes", shapes},         {"r15", r15},
  };
  return table;
}

}  // namespace

double SynthParams::get(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

void SynthParams::parse_assignment(const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0)
    throw std::invalid_argument("synth parameter must look like key=value: '" + kv + "'");
  std::size_t used = 0;
  const std::string value = kv.substr(eq + 1);
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size())
    throw std::invalid_argument("synth parameter value is not a number: '" + kv + "'");
  values_[kv.substr(0, eq)] = v;
}

Dataset synth_generate(const std::string& kind, const SynthParams& params, std::uint64_t seed) {
  auto it = generators().find(kind);
  if (it == generators().end()) throw std::invalid_argument("unknown generator '" + kind + "'");
  Rng rng(seed);
  return it->second(params, rng);
}

std::vector<std::string> synth_kinds() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : generators()) out.push_back(name);
  return out;
}

}  // namespace dpc
