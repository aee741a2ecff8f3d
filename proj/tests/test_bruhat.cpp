#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "meshc/bruhat.hpp"

using namespace meshc;

namespace {

std::mt19937_64 rng(11);

Mat random_invertible(int m) {
  std::normal_distribution<double> g;
  Mat a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = Complex(g(rng), g(rng));
  return a;
}

// Independent oracle for the Bruhat permutation: P[i,j] = 1 iff
// r(i,j) + r(i+1,j+1) - r(i,j+1) - r(i+1,j) = 1 with
// r(i,j) = rank(A[i:, :j]). Equivalently images[i] is determined by the
// rank profile of the trailing-row submatrices.
int rank_of(const Mat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(a);
  cod.setThreshold(1e-9);
  return static_cast<int>(cod.rank());
}

std::vector<int> rank_profile_permutation(const Mat& a) {
  const int m = static_cast<int>(a.rows());
  std::vector<int> images(m, -1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int v = rank_of(a.bottomLeftCorner(m - i, j + 1)) -
              rank_of(a.bottomLeftCorner(m - i, j)) -
              (i + 1 < m ? rank_of(a.bottomLeftCorner(m - i - 1, j + 1)) -
                               rank_of(a.bottomLeftCorner(m - i - 1, j))
                         : 0);
      if (v == 1) images[i] = j;
    }
  return images;
}

bool upper_unit(const Mat& u) {
  for (int i = 0; i < u.rows(); ++i) {
    if (std::abs(u(i, i) - 1.0) > 1e-9) return false;
    for (int j = 0; j < i; ++j)
      if (std::abs(u(i, j)) > 1e-9) return false;
  }
  return true;
}

bool upper(const Mat& u) {
  for (int i = 0; i < u.rows(); ++i) {
    if (std::abs(u(i, i)) < 1e-12) return false;
    for (int j = 0; j < i; ++j)
      if (std::abs(u(i, j)) > 1e-9) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("permutation basics") {
  Permutation p = Permutation::identity(4);
  CHECK(p.is_identity());
  p.images = {2, 0, 1, 3};
  CHECK_FALSE(p.is_identity());
  Mat pm = p.matrix();
  CHECK(std::abs(pm(0, 2) - 1.0) < 1e-15);
  CHECK(std::abs(pm(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(pm.sum() - 4.0) < 1e-15);
}

TEST_CASE("bruhat factors have the required shape and reconstruct") {
  for (int m : {1, 2, 3, 5, 8}) {
    for (int it = 0; it < 6; ++it) {
      Mat a = random_invertible(m);
      BruhatState st = bruhat_decompose(a);
      CHECK(upper_unit(st.u1));
      CHECK(upper(st.u2));
      CHECK((st.reconstruct() - a).norm() < 1e-8 * a.norm());
    }
  }
}

TEST_CASE("bruhat permutation matches the rank-profile oracle") {
  for (int m : {2, 3, 4, 6}) {
    for (int it = 0; it < 8; ++it) {
      Mat a = random_invertible(m);
      BruhatState st = bruhat_decompose(a);
      CHECK(st.p.images == rank_profile_permutation(a));
    }
  }
}

TEST_CASE("bruhat of triangular and permutation inputs") {
  Mat u = Mat::Identity(4, 4);
  u(0, 2) = Complex(0.3, 0.2);
  u(1, 3) = 1.5;
  BruhatState st = bruhat_decompose(u);
  CHECK(st.p.is_identity());

  Permutation rev;
  rev.images = {3, 2, 1, 0};
  st = bruhat_decompose(rev.matrix());
  CHECK(st.p.images == rev.images);
}

TEST_CASE("bruhat rejects singular input") {
  Mat a = Mat::Ones(3, 3);
  CHECK_THROWS_AS(bruhat_decompose(a), NumericError);
}

TEST_CASE("apply_two_mode preserves the tracked product") {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  for (int m : {2, 3, 5, 7}) {
    for (int it = 0; it < 40; ++it) {
      Mat a = random_invertible(m);
      BruhatState st = bruhat_decompose(a);
      std::uniform_int_distribution<int> mode(0, m - 2);
      int i = mode(rng);
      Eigen::Matrix2cd e = mzi_matrix({ang(rng), ang(rng)});
      BruhatState st2 = apply_two_mode(st, i, e);
      Mat ea = a;
      Eigen::RowVectorXcd lo = ea.row(i), hi = ea.row(i + 1);
      ea.row(i) = e(0, 0) * lo + e(0, 1) * hi;
      ea.row(i + 1) = e(1, 0) * lo + e(1, 1) * hi;
      // oracle: decompose E.A from scratch
      BruhatState ref = bruhat_decompose(ea);
      CHECK(st2.p.images == ref.p.images);
      CHECK((st2.reconstruct() - ea).norm() < 1e-7 * ea.norm());
      CHECK(upper_unit(st2.u1));
      CHECK(upper(st2.u2));
    }
  }
}

TEST_CASE("swap_rows_mzi swaps out-of-order labels") {
  for (int it = 0; it < 60; ++it) {
    Mat a = random_invertible(5);
    BruhatState st = bruhat_decompose(a);
    for (int i = 0; i < 4; ++i) {
      if (st.p.images[i] > st.p.images[i + 1]) {
        auto expect = st.p.images;
        std::swap(expect[i], expect[i + 1]);
        SwapResult s = swap_rows_mzi(st, i);
        CHECK(s.state.p.images == expect);
        Eigen::Matrix2cd e = mzi_matrix(s.params);
        Mat ea = st.reconstruct();
        Eigen::RowVectorXcd lo = ea.row(i), hi = ea.row(i + 1);
        ea.row(i) = e(0, 0) * lo + e(0, 1) * hi;
        ea.row(i + 1) = e(1, 0) * lo + e(1, 1) * hi;
        CHECK((s.state.reconstruct() - ea).norm() < 1e-7 * ea.norm());
        st = s.state;
      }
    }
  }
}
