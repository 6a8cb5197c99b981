#include "catlas/constellation.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "catlas/rng.hpp"

namespace catlas {

namespace {

std::string to_bits(unsigned long long value, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int b = 0; b < width; ++b)
    if ((value >> (width - 1 - b)) & 1ull) s[static_cast<std::size_t>(b)] = '1';
  return s;
}

int ceil_log2(int m) {
  int bits = 0;
  while ((1ll << bits) < m) ++bits;
  return bits < 1 ? 1 : bits;
}

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

std::vector<std::string> index_labels(int m) {
  const int bits = ceil_log2(m);
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) labels.push_back(to_bits(static_cast<unsigned long long>(k), bits));
  return labels;
}

}  // namespace

void Constellation::validate() const {
  const int m = size();
  if (dim < 1) throw std::invalid_argument("constellation dim must be >= 1");
  if (m < 2) throw std::invalid_argument("constellation needs at least 2 points");
  for (const auto& row : points)
    if (static_cast<int>(row.size()) != dim)
      throw std::invalid_argument("constellation has a point of wrong dimension");
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      double d2 = 0.0;
      for (int d = 0; d < dim; ++d) {
        const double t = points[i][d] - points[j][d];
        d2 += t * t;
      }
      if (d2 < 1e-24)
        throw std::invalid_argument("constellation has duplicate points at indices " +
                                    std::to_string(i) + " and " + std::to_string(j));
    }
  }
  if (static_cast<int>(priors.size()) != m)
    throw std::invalid_argument("priors length must match point count");
  double sum = 0.0;
  for (double p : priors) {
    if (!(p >= 0.0)) throw std::invalid_argument("priors must be nonnegative");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-12) throw std::invalid_argument("priors must sum to 1");
  if (!labels.empty()) {
    if (static_cast<int>(labels.size()) != m)
      throw std::invalid_argument("labels length must match point count");
    const std::size_t len = labels[0].size();
    if (len == 0) throw std::invalid_argument("labels must be nonempty bit strings");
    std::set<std::string> seen;
    for (const auto& s : labels) {
      if (s.size() != len) throw std::invalid_argument("labels must share one bit-length");
      for (char ch : s)
        if (ch != '0' && ch != '1') throw std::invalid_argument("labels must be bit strings");
      if (!seen.insert(s).second) throw std::invalid_argument("labels must be distinct");
    }
    if (len < 63 && (1ll << len) < m)
      throw std::invalid_argument("label bit-length too short for point count");
  }
}

double Constellation::average_energy() const {
  double total = 0.0;
  for (const auto& row : points)
    for (double v : row) total += v * v;
  return total / static_cast<double>(size());
}

ChannelParams ChannelParams::from_snr(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("snr must be positive and finite");
  return {1.0 / gamma, gamma};
}

ChannelParams ChannelParams::from_noise_power(double pn) {
  if (!(pn > 0.0) || !std::isfinite(pn))
    throw std::invalid_argument("noise power must be positive and finite");
  return {pn, 1.0 / pn};
}

Constellation normalize(std::vector<std::vector<double>> points, std::string name) {
  Constellation c;
  c.name = std::move(name);
  c.dim = points.empty() ? 0 : static_cast<int>(points[0].size());
  c.points = std::move(points);
  const int m = c.size();
  c.priors.assign(static_cast<std::size_t>(m), m > 0 ? 1.0 / m : 0.0);
  double energy = c.average_energy();
  if (!(energy > 0.0)) throw std::invalid_argument("cannot normalize an all-zero point set");
  if (std::fabs(energy - 1.0) > 1e-12) {
    const double scale = 1.0 / std::sqrt(energy);
    for (auto& row : c.points)
      for (double& v : row) v *= scale;
  }
  c.validate();
  return c;
}

Constellation make_bpsk() {
  Constellation c = normalize({{1.0}, {-1.0}}, "bpsk");
  c.labels = {"0", "1"};
  return c;
}

Constellation make_mpsk(int m) {
  if (m < 2 || !is_power_of_two(m))
    throw std::invalid_argument("mpsk needs a power-of-two point count >= 2");
  std::vector<std::vector<double>> pts;
  pts.reserve(static_cast<std::size_t>(m));
  const double step = 2.0 * M_PI / m;
  for (int k = 0; k < m; ++k) pts.push_back({std::cos(step * k), std::sin(step * k)});
  Constellation c = normalize(std::move(pts), "mpsk" + std::to_string(m));
  const int bits = ceil_log2(m);
  c.labels.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const unsigned long long gray =
        static_cast<unsigned long long>(k) ^ (static_cast<unsigned long long>(k) >> 1);
    c.labels.push_back(to_bits(gray, bits));
  }
  c.validate();
  return c;
}

Constellation make_qam(int m) {
  int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
  if (side * side != m || side < 2 || !is_power_of_two(side))
    throw std::invalid_argument("qam needs a point count in {4, 16, 64, 256, ...}");
  std::vector<std::vector<double>> pts;
  pts.reserve(static_cast<std::size_t>(m));
  for (int ix = 0; ix < side; ++ix)
    for (int iy = 0; iy < side; ++iy)
      pts.push_back({static_cast<double>(2 * ix - side + 1), static_cast<double>(2 * iy - side + 1)});
  Constellation c = normalize(std::move(pts), "qam" + std::to_string(m));
  const int half_bits = ceil_log2(side);
  c.labels.reserve(static_cast<std::size_t>(m));
  for (int ix = 0; ix < side; ++ix) {
    const unsigned long long gx =
        static_cast<unsigned long long>(ix) ^ (static_cast<unsigned long long>(ix) >> 1);
    for (int iy = 0; iy < side; ++iy) {
      const unsigned long long gy =
          static_cast<unsigned long long>(iy) ^ (static_cast<unsigned long long>(iy) >> 1);
      c.labels.push_back(to_bits(gx, half_bits) + to_bits(gy, half_bits));
    }
  }
  c.validate();
  return c;
}

Constellation make_grid(int side, int n) {
  if (side < 2 || n < 1) throw std::invalid_argument("grid needs side >= 2 and dim >= 1");
  double count = 1.0;
  for (int d = 0; d < n; ++d) count *= side;
  if (count > 4096.0) throw std::invalid_argument("grid constellation too large (max 4096 points)");
  const int m = static_cast<int>(count);
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(m),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int k = 0; k < m; ++k) {
    int rem = k;
    for (int d = n - 1; d >= 0; --d) {
      const int level = rem % side;
      rem /= side;
      pts[static_cast<std::size_t>(k)][static_cast<std::size_t>(d)] =
          static_cast<double>(2 * level - side + 1);
    }
  }
  Constellation c =
      normalize(std::move(pts), "grid" + std::to_string(side) + "x" + std::to_string(n));
  c.labels = index_labels(m);
  c.validate();
  return c;
}

Constellation make_hypercube(int n) {
  if (n < 1 || n > 12) throw std::invalid_argument("hypercube needs dim in [1, 12]");
  const int m = 1 << n;
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(m),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int k = 0; k < m; ++k)
    for (int d = 0; d < n; ++d)
      pts[static_cast<std::size_t>(k)][static_cast<std::size_t>(d)] =
          ((k >> (n - 1 - d)) & 1) ? -a : a;
  Constellation c = normalize(std::move(pts), "hypercube" + std::to_string(n));
  c.labels = index_labels(m);
  c.validate();
  return c;
}

Constellation make_random_spherical(int m, int n, std::uint64_t seed) {
  if (m < 2 || n < 1) throw std::invalid_argument("random spherical needs M >= 2 and dim >= 1");
  CounterRng rng(seed, kStreamBuilder);
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(m),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int k = 0; k < m; ++k) {
    double norm2 = 0.0;
    for (int d = 0; d < n; ++d) {
      const double z = rng.normal(static_cast<std::uint64_t>(k), n, d);
      pts[static_cast<std::size_t>(k)][static_cast<std::size_t>(d)] = z;
      norm2 += z * z;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (int d = 0; d < n; ++d) pts[static_cast<std::size_t>(k)][static_cast<std::size_t>(d)] *= inv;
  }
  std::string name = "sphere" + std::to_string(m) + "x" + std::to_string(n);
  if (seed != 1) name += "s" + std::to_string(seed);
  Constellation c = normalize(std::move(pts), std::move(name));
  c.labels = index_labels(m);
  c.validate();
  return c;
}

namespace {

// Parses a decimal integer at text[pos..], advancing pos. Returns -1 if no
// digits are present.
int parse_int(const std::string& text, std::size_t& pos) {
  std::size_t start = pos;
  long long v = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    v = v * 10 + (text[pos] - '0');
    if (v > 1000000) return -1;
    ++pos;
  }
  if (pos == start) return -1;
  return static_cast<int>(v);
}

}  // namespace

Constellation build_standard(const std::string& name) {
  if (name == "bpsk") return make_bpsk();
  if (name == "qpsk") {
    Constellation c = make_mpsk(4);
    c.name = "qpsk";
    return c;
  }
  auto starts_with = [&](const char* prefix) {
    return name.rfind(prefix, 0) == 0;
  };
  if (starts_with("mpsk")) {
    std::size_t pos = 4;
    const int m = parse_int(name, pos);
    if (m > 0 && pos == name.size()) return make_mpsk(m);
  } else if (starts_with("qam")) {
    std::size_t pos = 3;
    const int m = parse_int(name, pos);
    if (m > 0 && pos == name.size()) return make_qam(m);
  } else if (starts_with("grid")) {
    std::size_t pos = 4;
    const int side = parse_int(name, pos);
    if (side > 0 && pos < name.size() && name[pos] == 'x') {
      ++pos;
      const int n = parse_int(name, pos);
      if (n > 0 && pos == name.size()) return make_grid(side, n);
    }
  } else if (starts_with("hypercube")) {
    std::size_t pos = 9;
    const int n = parse_int(name, pos);
    if (n > 0 && pos == name.size()) return make_hypercube(n);
  } else if (starts_with("sphere")) {
    std::size_t pos = 6;
    const int m = parse_int(name, pos);
    if (m > 0 && pos < name.size() && name[pos] == 'x') {
      ++pos;
      const int n = parse_int(name, pos);
      if (n > 0) {
        if (pos == name.size()) return make_random_spherical(m, n, 1);
        if (name[pos] == 's') {
          ++pos;
          const int seed = parse_int(name, pos);
          if (seed >= 0 && pos == name.size())
            return make_random_spherical(m, n, static_cast<std::uint64_t>(seed));
        }
      }
    }
  }
  throw std::invalid_argument(
      "unknown builtin '" + name +
      "'; expected bpsk, qpsk, mpsk<M>, qam<M>, grid<side>x<n>, hypercube<n>, "
      "or sphere<M>x<n>[s<seed>]");
}

BitMapping hamming_matrix(const Constellation& c) {
  if (!c.has_labels()) throw std::invalid_argument("bit labels required");
  const int m = c.size();
  BitMapping map;
  map.bits_per_symbol = static_cast<int>(c.labels[0].size());
  map.hamming.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), 0));
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      int h = 0;
      for (std::size_t b = 0; b < c.labels[static_cast<std::size_t>(i)].size(); ++b)
        h += c.labels[static_cast<std::size_t>(i)][b] != c.labels[static_cast<std::size_t>(j)][b];
      map.hamming[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = h;
      map.hamming[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = h;
    }
  }
  return map;
}

}  // namespace catlas
