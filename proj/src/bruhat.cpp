#include "meshc/bruhat.hpp"

#include <algorithm>

namespace meshc {

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (images[i] != i) return false;
  return true;
}

Permutation Permutation::identity(int m) {
  Permutation p;
  p.images.resize(m);
  for (int i = 0; i < m; ++i) p.images[i] = i;
  return p;
}

Mat Permutation::matrix() const {
  int m = size();
  Mat p = Mat::Zero(m, m);
  for (int i = 0; i < m; ++i) p(i, images[i]) = 1.0;
  return p;
}

Mat BruhatState::reconstruct() const {
  int m = p.size();
  // rows of (P u2): row i = u2.row(images[i])
  Mat pu2(m, m);
  for (int i = 0; i < m; ++i) pu2.row(i) = u2.row(p.images[i]);
  return u1 * pu2;
}

BruhatState bruhat_decompose(const Mat& a) {
  if (a.rows() != a.cols()) throw DimensionError("bruhat: square matrix only");
  const int m = static_cast<int>(a.rows());
  Mat r = a;
  Mat u1 = Mat::Identity(m, m);
  const double tol = zero_tolerance(a);
  std::vector<int> piv(m, -1);
  std::vector<bool> col_used(m, false);
  for (int i = m - 1; i >= 0; --i) {
    int j = -1;
    for (int jj = 0; jj < m; ++jj) {
      if (std::abs(r(i, jj)) > tol) {
        j = jj;
        break;
      }
    }
    if (j < 0 || col_used[j])
      throw NumericError("bruhat: numerically singular input");
    piv[i] = j;
    col_used[j] = true;
    for (int ip = 0; ip < i; ++ip) {
      Complex f = r(ip, j) / r(i, j);
      if (f != Complex(0)) {
        r.row(ip) -= f * r.row(i);
        u1(ip, i) = f;
      }
    }
  }
  Mat u2 = Mat::Zero(m, m);
  for (int i = 0; i < m; ++i) u2.row(piv[i]) = r.row(i);
  BruhatState st;
  st.u1 = std::move(u1);
  st.p.images = std::move(piv);
  st.u2 = std::move(u2);
  return st;
}

namespace {

// Restores the unit diagonal of u1 by pushing a diagonal through P into u2.
void renormalize(BruhatState& st) {
  const int m = st.p.size();
  for (int c = 0; c < m; ++c) {
    Complex d = st.u1(c, c);
    if (d == Complex(1)) continue;
    st.u1.col(c) /= d;
    st.u2.row(st.p.images[c]) *= d;
  }
}

}  // namespace

BruhatState apply_two_mode(const BruhatState& state, int i,
                           const Eigen::Matrix2cd& e) {
  const int m = state.p.size();
  if (i < 0 || i + 1 >= m) throw DimensionError("apply_two_mode: bad mode");
  if (std::abs(e.determinant()) < 1e-14)
    throw NumericError("apply_two_mode: singular operator");
  BruhatState st = state;
  Eigen::RowVectorXcd lo = st.u1.row(i), hi = st.u1.row(i + 1);
  st.u1.row(i) = e(0, 0) * lo + e(0, 1) * hi;
  st.u1.row(i + 1) = e(1, 0) * lo + e(1, 1) * hi;
  const double tol = zero_tolerance(st.u1);
  Complex beta = st.u1(i + 1, i), gamma = st.u1(i + 1, i + 1);
  if (std::abs(beta) > tol) {
    if (std::abs(gamma) <= tol) {
      // swap case: columns i, i+1 of u1 and rows i, i+1 of P
      st.u1.col(i).swap(st.u1.col(i + 1));
      std::swap(st.p.images[i], st.p.images[i + 1]);
    } else {
      int j1 = st.p.images[i], j2 = st.p.images[i + 1];
      if (j1 < j2) {
        st.u1.col(i).swap(st.u1.col(i + 1));
        std::swap(st.p.images[i], st.p.images[i + 1]);
        std::swap(j1, j2);
      }
      Complex t = st.u1(i + 1, i) / st.u1(i + 1, i + 1);
      st.u1.col(i) -= t * st.u1.col(i + 1);
      st.u2.row(j2) += t * st.u2.row(j1);
    }
  }
  renormalize(st);
  st.u1(i + 1, i) = 0.0;  // structural zero
  return st;
}

SwapResult swap_rows_mzi(const BruhatState& state, int i) {
  Complex b = state.u1(i, i + 1);
  MZIParams params = zeroing_angles(b, Complex(1));
  BruhatState st = apply_two_mode(state, i, mzi_matrix(params));
  SwapResult r;
  r.params = params;
  r.state = std::move(st);
  return r;
}

}  // namespace meshc
