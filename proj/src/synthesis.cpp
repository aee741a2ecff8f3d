#include "meshc/synthesis.hpp"

#include <algorithm>

namespace meshc {

namespace {

Circuit compile_on(const UnitaryMatrix& u, const ComparatorNetwork& net) {
  ChipLayout layout = net.to_layout(true);
  CompileResult r = compile(u, layout);
  if (!r.ok())
    throw NumericError("synthesis: sorting network failed to sort labels");
  return r.assignment->to_circuit(layout);
}

}  // namespace

Circuit synth_clements(const UnitaryMatrix& u) {
  return compile_on(u, full_sorting_network(u.modes()));
}

Circuit synth_reck(const UnitaryMatrix& u) {
  return compile_on(u, reck_network(u.modes()));
}

Mat complete_isometry(const Isometry& v) {
  const int m = v.modes();
  const int n = v.cols();
  Eigen::HouseholderQR<Mat> qr(v.mat());
  Mat q = qr.householderQ();
  Mat u(m, m);
  u.leftCols(n) = v.mat();
  u.rightCols(m - n) = q.rightCols(m - n);
  if ((u.adjoint() * u - Mat::Identity(m, m)).norm() > kUnitarityTol)
    throw NumericError("complete_isometry: completion is not unitary");
  return u;
}

Circuit synth_boson_sampling(const Isometry& v) {
  const int m = v.modes();
  const int n = v.cols();
  ChipLayout layout = partial_sorting_network(m, n).to_layout(true);

  // Forward slot order of the layout.
  std::vector<std::pair<int, int>> slots;
  for (int l = 0; l < static_cast<int>(layout.layers.size()); ++l)
    for (int i : layout.layers[l]) slots.emplace_back(l, i);

  BruhatState st = bruhat_decompose(complete_isometry(v));
  std::vector<std::optional<MZIParams>> emitted(slots.size());
  for (int idx = static_cast<int>(slots.size()) - 1; idx >= 0; --idx) {
    int i = slots[idx].second;
    if (st.p.images[i] > st.p.images[i + 1]) {
      SwapResult s = swap_rows_mzi(st, i);
      st = std::move(s.state);
      emitted[idx] = s.params;
    }
  }
  for (int i = 0; i < n; ++i)
    if (st.p.images[i] != i)
      throw NumericError(
          "synth_boson_sampling: partial network left labels unsorted");

  // The residual's first n columns are (D; 0); absorb D into the input
  // diagonal and push it forward through the emitted slots.
  Mat r = st.reconstruct();
  if (r.bottomLeftCorner(m - n, n).norm() > 1e-8)
    throw NumericError("synth_boson_sampling: residual is not block-diagonal");
  Vec d = Vec::Ones(m);
  for (int i = 0; i < n; ++i) d(i) = r(i, i) / std::abs(r(i, i));

  Circuit c(m);
  for (size_t idx = 0; idx < slots.size(); ++idx) {
    int i = slots[idx].second;
    Eigen::Matrix2cd w;
    if (emitted[idx]) {
      w = mzi_matrix(*emitted[idx]).adjoint();
    } else {
      w.setIdentity();
    }
    w.col(0) *= d(i);
    w.col(1) *= d(i + 1);
    MZIWithPhases mp = mzi_with_output_phases(w);
    d(i) = mp.d1;
    d(i + 1) = mp.d2;
    c.append(CircuitElement::mzi(i, i + 1, mp.params,
                                 emitted[idx].has_value()));
  }
  for (int i = 0; i < m; ++i)
    c.append(CircuitElement::phase(i, std::arg(d(i))));
  return c;
}

long parameter_count(long m, long n) {
  if (n < 1 || m < n) throw DimensionError("parameter_count: need m >= n >= 1");
  return 2 * n * m - n * (n + 1);
}

}  // namespace meshc
