#pragma once

#include <string>
#include <vector>

#include "meshc/core.hpp"

namespace meshc {

/// counts[i] = number of rows currently carrying label i; counts.size() =
/// n + 1 and the total is conserved (= m).
struct TkArray {
  std::vector<long long> counts;

  int n() const { return static_cast<int>(counts.size()) - 1; }
  long long total() const;
  bool is_equilibrium() const;  // [1, ..., 1, m - n]
  static TkArray initial(long long m, int n);
};

/// One step of the label-count recurrence:
/// T'[0] = ceil(T[0]/2); T'[i] = ceil(T[i]/2) + floor(T[i-1]/2) for 0<i<n;
/// T'[n] = T[n] + floor(T[n-1]/2).
TkArray tk_step(const TkArray& t);

struct TkSimulation {
  int k_exact = 0;
  std::vector<TkArray> trace;  // trace[k] = T_k, trace.back() = equilibrium
};
/// Iterates tk_step from T_0 = [m, 0, ..., 0] until equilibrium.
TkSimulation tk_simulate(long long m, int n);

/// Smallest K with sum_{i<n} C(K,i) * m < 2^K (exact big integers).
int depth_bound_inequality(long long m, int n);

struct AnalyticBound {
  int k = 0;
  bool regime_ok = false;  // the derivation assumes K > 2n
};
/// K = ceil(2n + 2 ln(m/2) + 2 sqrt(n ln(m/2) + ln(m/2)^2)), m >= 3.
AnalyticBound depth_bound_analytic(long long m, int n);

/// Exact verification of the two parity-array identities behind the bound,
/// for all k <= k_max and i < n.
bool lemma_identities_check(long long m, int n, int k_max);

struct TransmissionParams {
  double eta_mzi = 1.0;
  double eta_c = 1.0;
  long long m = 0;
  long long n = 0;
  int k = 0;
};

struct Transmission {
  double eta = 1.0;    // per photon
  double eta_n = 1.0;  // n photons
};

/// Coupled design with d stages: eta = eta_mzi^(d k) * eta_c^(d+1).
Transmission transmission(const TransmissionParams& p, int d);

/// Monolithic chip baseline: MZI depth m, input + output coupling only.
Transmission single_chip_transmission(const TransmissionParams& p);

/// Measured stage count of the greedy coupled design on a fixed dense
/// generic instance; memoized in a JSON cache file (path overridable via the
/// MESHC_CACHE environment variable).
int coupled_depth(long long m, int n, int k);

std::string dcache_path();

struct ChipChoice {
  int k = 0;               // meaningful when !single_chip
  bool single_chip = false;
  double eta = 0.0;        // per-photon transmission of the winner
};

/// Best chip size over k in {2, ..., k_cap} plus the single-chip design;
/// ties break toward the larger design. k_cap = 0 selects min(m, 64).
ChipChoice optimal_chip_size(long long m, int n, double eta_mzi, double eta_c,
                             int k_cap = 0);

struct IsoPoint {
  double eta_mzi = 0.0;
  bool attainable = false;
  double eta_c_required = 0.0;  // valid when attainable
  int k_star = 0;               // 0 = single chip
  bool single_attainable = false;
  double single_eta_c = 0.0;  // single-chip reference requirement
};

struct IsoCurve {
  std::vector<IsoPoint> points;
  bool has_cutoff = false;
  double cutoff_eta_mzi = 0.0;  // largest grid eta_mzi that is unattainable
};

/// For each grid eta_mzi, the eta_c making the best design hit eta_target.
IsoCurve iso_transmission_curve(long long m, int n, double eta_target,
                                const std::vector<double>& eta_mzi_grid,
                                int k_cap = 0);

struct HeatmapCell {
  double eta_mzi = 0.0;
  double eta_c = 0.0;
  ChipChoice best;
};

std::vector<HeatmapCell> heatmap(long long m, int n,
                                 const std::vector<double>& eta_mzi_grid,
                                 const std::vector<double>& eta_c_grid,
                                 int k_cap = 0);

}  // namespace meshc
