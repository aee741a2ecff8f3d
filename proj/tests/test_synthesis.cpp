#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "meshc/synthesis.hpp"

using namespace meshc;

TEST_CASE("clements: count, depth, reconstruction") {
  for (int m = 2; m <= 8; ++m) {
    UnitaryMatrix u = haar_random_unitary(m, 10 + m);
    Circuit c = synth_clements(u);
    CHECK(c.mzi_count() == m * (m - 1) / 2);
    CHECK(c.mzi_depth() <= m);
    CHECK((c.evaluate() - u.mat()).norm() < 1e-8);
  }
}

TEST_CASE("clements on identity leaves every slot inactive") {
  Circuit c = synth_clements(UnitaryMatrix(Mat::Identity(6, 6)));
  CHECK(c.active_mzi_count() == 0);
  CHECK((c.evaluate() - Mat::Identity(6, 6)).norm() < 1e-9);
}

TEST_CASE("clements on a diagonal touches only the phase layer") {
  Mat d = Mat::Identity(5, 5);
  for (int i = 0; i < 5; ++i) d(i, i) = std::exp(Complex(0, 0.3 * (i + 1)));
  Circuit c = synth_clements(UnitaryMatrix(d));
  CHECK(c.active_mzi_count() == 0);
  CHECK((c.evaluate() - d).norm() < 1e-9);
}

TEST_CASE("reck: count, depth, reconstruction") {
  for (int m = 2; m <= 8; ++m) {
    UnitaryMatrix u = haar_random_unitary(m, 20 + m);
    Circuit c = synth_reck(u);
    CHECK(c.mzi_count() == m * (m - 1) / 2);
    CHECK(c.mzi_depth() <= std::max(1, 2 * m - 3));
    CHECK((c.evaluate() - u.mat()).norm() < 1e-8);
  }
}

TEST_CASE("boson sampling: count, depth, column reconstruction") {
  for (int m = 2; m <= 9; ++m) {
    for (int n = 1; n <= m; ++n) {
      Isometry v = random_isometry(m, n, 100 * m + n);
      Circuit c = synth_boson_sampling(v);
      CHECK(c.mzi_count() == m * n - n * (n + 1) / 2);
      CHECK(c.mzi_depth() <= m);
      CHECK((c.evaluate().leftCols(n) - v.mat()).norm() < 1e-8);
    }
  }
}

TEST_CASE("boson sampling with n = m matches the Clements count") {
  const int m = 6;
  Isometry v(haar_random_unitary(m, 5).mat());
  Circuit c = synth_boson_sampling(v);
  CHECK(c.mzi_count() == m * (m - 1) / 2);
}

TEST_CASE("boson sampling on (I_n; 0) leaves every slot inactive") {
  Mat v = Mat::Identity(7, 7).leftCols(3);
  Circuit c = synth_boson_sampling(Isometry(v));
  CHECK(c.active_mzi_count() == 0);
  CHECK((c.evaluate().leftCols(3) - v).norm() < 1e-9);
}

TEST_CASE("parameter_count formula") {
  CHECK(parameter_count(10, 4) == 60);
  CHECK(parameter_count(2, 1) == 2);
  for (int m = 1; m <= 9; ++m) CHECK(parameter_count(m, m) == m * (m - 1));
  CHECK_THROWS_AS(parameter_count(3, 4), DimensionError);
}

TEST_CASE("partial scheme beats the full-mesh count for small n") {
  // reference comparison at m = 10, n = 2: full Clements-style partial
  // count is about (m^2 - n^2 + 2mn)/4 = 34, ours is 17
  CHECK(10 * 2 - 2 * 3 / 2 == 17);
  CHECK((10 * 10 - 2 * 2 + 2 * 10 * 2) / 4 == 34);
}

TEST_CASE("complete_isometry extends to a unitary with v as prefix") {
  Isometry v = random_isometry(8, 3, 42);
  Mat u = complete_isometry(v);
  CHECK((u.leftCols(3) - v.mat()).norm() == 0.0);
  CHECK((u.adjoint() * u - Mat::Identity(8, 8)).norm() < 1e-9);
}
