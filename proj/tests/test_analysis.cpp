#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "meshc/analysis.hpp"

using namespace meshc;

TEST_CASE("tk_step worked examples") {
  TkArray t{{10, 0, 0, 0, 0}};
  t = tk_step(t);
  CHECK(t.counts == std::vector<long long>{5, 5, 0, 0, 0});
  t = tk_step(t);
  CHECK(t.counts == std::vector<long long>{3, 5, 2, 0, 0});
  TkArray eq{{1, 1, 1, 1, 6}};
  CHECK(tk_step(eq).counts == eq.counts);
  CHECK(eq.is_equilibrium());
}

TEST_CASE("tk_step conserves the total") {
  for (int n : {1, 3, 7}) {
    for (long long m : {n, 2 * n, 100, 4097}) {
      TkArray t = TkArray::initial(m, n);
      for (int k = 0; k < 50; ++k) {
        t = tk_step(t);
        CHECK(t.total() == m);
      }
    }
  }
}

TEST_CASE("tk_simulate reaches the equilibrium") {
  CHECK(tk_simulate(2, 1).k_exact == 1);
  TkSimulation sim = tk_simulate(10, 4);
  CHECK(sim.trace.front().counts == std::vector<long long>{10, 0, 0, 0, 0});
  CHECK(sim.trace.back().counts == std::vector<long long>{1, 1, 1, 1, 6});
  CHECK((int)sim.trace.size() == sim.k_exact + 1);
  CHECK(tk_simulate(5, 5).trace.back().counts ==
        std::vector<long long>{1, 1, 1, 1, 1, 0});
}

TEST_CASE("inequality bound: base case and monotonicity") {
  CHECK(depth_bound_inequality(2, 1) == 2);
  for (int n : {1, 4}) {
    int prev = 0;
    for (long long m = std::max(2, n); m <= 4000; m *= 2) {
      int k = depth_bound_inequality(m, n);
      CHECK(k >= prev);
      prev = k;
    }
  }
}

TEST_CASE("analytic bound: closed form and the published datum") {
  AnalyticBound b = depth_bound_analytic(2304, 48);
  CHECK(b.k == 150);
  CHECK(b.regime_ok);
  const double l = std::log(2.0);  // m = 4
  AnalyticBound s = depth_bound_analytic(4, 1);
  CHECK(s.k == (int)std::ceil(2 + 2 * l + 2 * std::sqrt(l + l * l)));
}

TEST_CASE("bound ordering K_exact <= K_ineq <= K_analytic") {
  for (int n : {4, 40}) {
    for (long long m : std::vector<long long>{2 * n, 100, 500, 2048, 4096}) {
      if (m < n) continue;
      int ke = tk_simulate(m, n).k_exact;
      int ki = depth_bound_inequality(m, n);
      AnalyticBound ka = depth_bound_analytic(m, n);
      CHECK(ke <= ki);
      if (ka.regime_ok) CHECK(ki <= ka.k);
    }
  }
}

TEST_CASE("lemma identities hold exactly") {
  CHECK(lemma_identities_check(10, 4, 8));
  CHECK(lemma_identities_check(64, 8, 24));
  CHECK(lemma_identities_check(7, 1, 12));
}

TEST_CASE("transmission formulas") {
  TransmissionParams p{1.0, 1.0, 10, 4, 3};
  CHECK(transmission(p, 6).eta == doctest::Approx(1.0));
  p = {0.99, 0.9, 10, 4, 3};
  Transmission t = transmission(p, 6);
  CHECK(t.eta == doctest::Approx(std::pow(0.99, 18) * std::pow(0.9, 7))
                     .epsilon(1e-12));
  CHECK(t.eta_n == doctest::Approx(std::pow(t.eta, 4)).epsilon(1e-12));
  TransmissionParams sp{0.99, 0.9, 96, 4, 0};
  CHECK(single_chip_transmission(sp).eta ==
        doctest::Approx(std::pow(0.99, 96) * 0.81).epsilon(1e-12));
}

TEST_CASE("transmission is monotone in both efficiencies") {
  TransmissionParams lo{0.95, 0.85, 10, 4, 3};
  TransmissionParams hi{0.96, 0.86, 10, 4, 3};
  CHECK(transmission(lo, 6).eta < transmission(hi, 6).eta);
}

TEST_CASE("coupled_depth is memoized and cached on disk") {
  std::remove(dcache_path().c_str());
  int d = coupled_depth(10, 4, 3);
  CHECK(d == 6);
  CHECK(coupled_depth(10, 4, 3) == 6);  // from memory
  FILE* f = std::fopen(dcache_path().c_str(), "r");
  REQUIRE(f != nullptr);
  std::fclose(f);
}

TEST_CASE("optimal_chip_size degenerate regimes") {
  // vanishing coupling transmission: any extra coupling loses; the single
  // chip (2 couplings) wins
  ChipChoice c = optimal_chip_size(60, 6, 0.999, 1e-6);
  CHECK(c.single_chip);
  // perfect everything: full tie, tie-break keeps the largest design
  c = optimal_chip_size(20, 4, 1.0, 1.0);
  CHECK(c.single_chip);
  CHECK(c.eta == doctest::Approx(1.0));
  // lossy MZIs with perfect couplings favor splitting into small chips
  c = optimal_chip_size(60, 6, 0.5, 1.0);
  CHECK_FALSE(c.single_chip);
}

TEST_CASE("optimal_chip_size winner dominates every scanned design") {
  const long long m = 40;
  const int n = 5;
  ChipChoice best = optimal_chip_size(m, n, 0.98, 0.9);
  TransmissionParams p{0.98, 0.9, m, n, 0};
  CHECK(best.eta >= single_chip_transmission(p).eta - 1e-15);
  for (int k = 2; k <= 40; ++k) {
    p.k = k;
    CHECK(best.eta >= transmission(p, coupled_depth(m, n, k)).eta - 1e-15);
  }
}

TEST_CASE("iso curve: closed form at eta_mzi = 1 and monotonicity") {
  IsoCurve curve = iso_transmission_curve(30, 4, 0.85, {0.995, 0.998, 1.0});
  REQUIRE(curve.points.size() == 3);
  const IsoPoint& perfect = curve.points.back();
  REQUIRE(perfect.single_attainable);
  CHECK(perfect.single_eta_c ==
        doctest::Approx(std::sqrt(0.85)).epsilon(1e-9));
  double prev = 2.0;
  for (const auto& pt : curve.points) {
    if (!pt.attainable) continue;
    CHECK(pt.eta_c_required <= prev + 1e-9);
    prev = pt.eta_c_required;
    // the required eta_c indeed hits the target
    CHECK(optimal_chip_size(30, 4, pt.eta_mzi, pt.eta_c_required).eta ==
          doctest::Approx(0.85).epsilon(1e-5));
  }
}

TEST_CASE("iso curve reports a cutoff when the target is unreachable") {
  IsoCurve curve = iso_transmission_curve(30, 4, 0.85, {0.5, 0.9999});
  CHECK(curve.has_cutoff);
  CHECK(curve.cutoff_eta_mzi == doctest::Approx(0.5));
}

TEST_CASE("heatmap emits one deterministic cell per grid point") {
  auto cells = heatmap(20, 4, {0.97, 0.99}, {0.9, 0.95});
  REQUIRE(cells.size() == 4);
  auto again = heatmap(20, 4, {0.97, 0.99}, {0.9, 0.95});
  for (size_t i = 0; i < cells.size(); ++i) {
    CHECK(cells[i].best.eta == again[i].best.eta);
    CHECK(cells[i].best.k == again[i].best.k);
    CHECK(cells[i].best.single_chip == again[i].best.single_chip);
  }
}
