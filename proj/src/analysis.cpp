#include "meshc/analysis.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <random>
#include <unordered_map>

#include "meshc/coupled.hpp"

namespace meshc {

using boost::multiprecision::cpp_int;

namespace {

cpp_int binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  cpp_int r = 1;
  for (long long i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

}  // namespace

long long TkArray::total() const {
  long long s = 0;
  for (long long c : counts) s += c;
  return s;
}

bool TkArray::is_equilibrium() const {
  for (int i = 0; i < n(); ++i)
    if (counts[i] != 1) return false;
  return true;
}

TkArray TkArray::initial(long long m, int n) {
  TkArray t;
  t.counts.assign(n + 1, 0);
  t.counts[0] = m;
  return t;
}

TkArray tk_step(const TkArray& t) {
  const int n = t.n();
  TkArray out;
  out.counts.assign(n + 1, 0);
  out.counts[0] = (t.counts[0] + 1) / 2;
  for (int i = 1; i < n; ++i)
    out.counts[i] = (t.counts[i] + 1) / 2 + t.counts[i - 1] / 2;
  out.counts[n] = t.counts[n] + (n >= 1 ? t.counts[n - 1] / 2 : 0);
  return out;
}

TkSimulation tk_simulate(long long m, int n) {
  if (n < 1 || m < n) throw DimensionError("tk_simulate: need m >= n >= 1");
  TkSimulation sim;
  TkArray t = TkArray::initial(m, n);
  sim.trace.push_back(t);
  while (!t.is_equilibrium()) {
    t = tk_step(t);
    sim.trace.push_back(t);
    ++sim.k_exact;
    if (sim.k_exact > 100000)
      throw NumericError("tk_simulate: equilibrium not reached");
  }
  return sim;
}

int depth_bound_inequality(long long m, int n) {
  if (n < 1 || m < n)
    throw DimensionError("depth_bound_inequality: need m >= n >= 1");
  const int cap =
      64 * n + 64 * static_cast<int>(std::ceil(std::log2((double)m))) + 64;
  for (int k = 1; k <= cap; ++k) {
    cpp_int lhs = 0;
    for (int i = 0; i < n; ++i) lhs += binom(k, i);
    lhs *= m;
    if (lhs < (cpp_int(1) << k)) return k;
  }
  throw NumericError("depth_bound_inequality: scan cap exceeded");
}

AnalyticBound depth_bound_analytic(long long m, int n) {
  if (m < 3) throw DimensionError("depth_bound_analytic: need m >= 3");
  const double l = std::log(static_cast<double>(m) / 2.0);
  const double x = 2.0 * n + 2.0 * l + 2.0 * std::sqrt(n * l + l * l);
  AnalyticBound b;
  b.k = static_cast<int>(std::ceil(x));
  b.regime_ok = b.k > 2 * n;
  return b;
}

bool lemma_identities_check(long long m, int n, int k_max) {
  // Exact integer form: both identities multiplied through by 2^k, with
  // S_k[i] the parity of T_k[i].
  std::vector<TkArray> t;
  t.push_back(TkArray::initial(m, n));
  for (int k = 1; k <= k_max; ++k) t.push_back(tk_step(t.back()));
  auto s = [&](int k, int i) -> cpp_int { return t[k].counts[i] % 2; };

  for (int k = 0; k <= k_max; ++k) {
    // Lemma 1: per-entry formula for T_k[i], i < n.
    for (int i = 0; i < n; ++i) {
      cpp_int rhs = binom(k, i) * m;
      for (int l = 1; l <= k; ++l) {
        cpp_int inner = 0;
        for (int j = 0; j <= std::min(l, i); ++j)
          inner += (binom(l - 1, j) - binom(l - 1, j - 1)) * s(k - l, i - j);
        rhs += (cpp_int(1) << (k - l)) * inner;
      }
      if ((cpp_int(1) << k) * t[k].counts[i] != rhs) return false;
    }
    // Lemma 2: the sum over i < n.
    cpp_int lhs = 0;
    for (int i = 0; i < n; ++i) lhs += t[k].counts[i];
    lhs *= cpp_int(1) << k;
    cpp_int rhs = 0;
    for (int i = 0; i < n; ++i) rhs += binom(k, i) * m;
    for (int i = 0; i < n; ++i)
      for (int l = i + 1; l <= k; ++l)
        rhs += (cpp_int(1) << (k - l)) * binom(l - 1, i) * s(k - l, n - i - 1);
    if (lhs != rhs) return false;
  }
  return true;
}

Transmission transmission(const TransmissionParams& p, int d) {
  Transmission t;
  t.eta = std::pow(p.eta_mzi, static_cast<double>(d) * p.k) *
          std::pow(p.eta_c, d + 1);
  t.eta_n = std::pow(t.eta, static_cast<double>(p.n));
  return t;
}

Transmission single_chip_transmission(const TransmissionParams& p) {
  Transmission t;
  t.eta = std::pow(p.eta_mzi, static_cast<double>(p.m)) * p.eta_c * p.eta_c;
  t.eta_n = std::pow(t.eta, static_cast<double>(p.n));
  return t;
}

namespace {

constexpr std::uint64_t kDcacheSeed = 20240917;

// Dense generic instance for depth measurement: Gaussian matrix,
// orthonormalized. Sampling only the needed columns keeps the scan cheap at
// large m (a full Haar unitary would cost O(m^3) per measurement).
Isometry dense_generic_instance(int m, int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  Mat a(m, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) a(i, j) = Complex(g(gen), g(gen));
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ() * Mat::Identity(m, n);
  Mat r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return Isometry(std::move(q));
}

std::mutex g_dcache_mutex;
std::unordered_map<std::string, int> g_dcache;
bool g_dcache_loaded = false;

std::string dcache_key(long long m, int n, int k) {
  return std::to_string(m) + "," + std::to_string(n) + "," +
         std::to_string(k);
}

void load_dcache_locked() {
  if (g_dcache_loaded) return;
  g_dcache_loaded = true;
  std::ifstream in(dcache_path());
  if (!in) return;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    return;  // corrupt cache: ignore, it will be rewritten
  }
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.value().is_number_integer())
      g_dcache[it.key()] = it.value().get<int>();
}

void store_dcache_locked() {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, d] : g_dcache) j[key] = d;
  std::ofstream out(dcache_path());
  out << j.dump(1) << "\n";
}

}  // namespace

std::string dcache_path() {
  if (const char* env = std::getenv("MESHC_CACHE")) return env;
  return "meshc_dcache.json";
}

int coupled_depth(long long m, int n, int k) {
  const std::string key = dcache_key(m, n, k);
  {
    std::lock_guard<std::mutex> lock(g_dcache_mutex);
    load_dcache_locked();
    auto it = g_dcache.find(key);
    if (it != g_dcache.end()) return it->second;
  }
  Isometry v = dense_generic_instance(static_cast<int>(m), n, kDcacheSeed);
  CoupledCircuit cc = greedy_coupled(v, k, /*synthesize_blocks=*/false);
  const int d = cc.stage_count();
  {
    std::lock_guard<std::mutex> lock(g_dcache_mutex);
    g_dcache[key] = d;
    store_dcache_locked();
  }
  return d;
}

ChipChoice optimal_chip_size(long long m, int n, double eta_mzi, double eta_c,
                             int k_cap) {
  if (k_cap <= 0) k_cap = static_cast<int>(std::min<long long>(m, 64));
  k_cap = static_cast<int>(std::min<long long>(k_cap, m));
  TransmissionParams p;
  p.eta_mzi = eta_mzi;
  p.eta_c = eta_c;
  p.m = m;
  p.n = n;

  ChipChoice best;
  best.single_chip = true;
  best.eta = single_chip_transmission(p).eta;
  for (int k = k_cap; k >= 2; --k) {
    p.k = k;
    const int d = coupled_depth(m, n, k);
    const double eta = transmission(p, d).eta;
    // Strict improvement only: ties keep the larger design (the single chip
    // counts as the largest, and the scan moves downward in size).
    if (eta > best.eta) {
      best.single_chip = false;
      best.k = k;
      best.eta = eta;
    }
  }
  return best;
}

namespace {

double best_eta(long long m, int n, double eta_mzi, double eta_c, int k_cap) {
  return optimal_chip_size(m, n, eta_mzi, eta_c, k_cap).eta;
}

}  // namespace

IsoCurve iso_transmission_curve(long long m, int n, double eta_target,
                                const std::vector<double>& eta_mzi_grid,
                                int k_cap) {
  if (eta_target <= 0.0 || eta_target >= 1.0)
    throw DimensionError("iso_transmission_curve: eta_target in (0,1)");
  IsoCurve curve;
  for (double eta_mzi : eta_mzi_grid) {
    IsoPoint pt;
    pt.eta_mzi = eta_mzi;
    if (best_eta(m, n, eta_mzi, 1.0, k_cap) >= eta_target) {
      pt.attainable = true;
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (best_eta(m, n, eta_mzi, mid, k_cap) >= eta_target)
          hi = mid;
        else
          lo = mid;
      }
      pt.eta_c_required = hi;
      ChipChoice c = optimal_chip_size(m, n, eta_mzi, hi, k_cap);
      pt.k_star = c.single_chip ? 0 : c.k;
    } else if (!curve.has_cutoff || eta_mzi > curve.cutoff_eta_mzi) {
      curve.has_cutoff = true;
      curve.cutoff_eta_mzi = eta_mzi;
    }
    const double single_full =
        std::pow(eta_mzi, static_cast<double>(m));
    if (single_full >= eta_target) {
      pt.single_attainable = true;
      pt.single_eta_c = std::sqrt(eta_target / single_full);
    }
    curve.points.push_back(pt);
  }
  return curve;
}

std::vector<HeatmapCell> heatmap(long long m, int n,
                                 const std::vector<double>& eta_mzi_grid,
                                 const std::vector<double>& eta_c_grid,
                                 int k_cap) {
  std::vector<HeatmapCell> cells;
  cells.reserve(eta_mzi_grid.size() * eta_c_grid.size());
  for (double em : eta_mzi_grid)
    for (double ec : eta_c_grid) {
      HeatmapCell cell;
      cell.eta_mzi = em;
      cell.eta_c = ec;
      cell.best = optimal_chip_size(m, n, em, ec, k_cap);
      cells.push_back(cell);
    }
  return cells;
}

}  // namespace meshc
