#include "meshc/core.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace meshc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double x) {
  x = std::fmod(x, kTwoPi);
  if (x < 0) x += kTwoPi;
  return x;
}

// Box-Muller on explicit uniforms so that streams are identical across
// standard library implementations.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : gen_(seed) {}

  double next() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    have_ = true;
    return r * std::cos(kTwoPi * u2);
  }

 private:
  double uniform() {
    return (gen_() >> 11) * (1.0 / 9007199254740992.0);  // 53-bit mantissa
  }
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_ = false;
};

}  // namespace

UnitaryMatrix::UnitaryMatrix(Mat u) : mat_(std::move(u)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 1)
    throw DimensionError("UnitaryMatrix: matrix must be square and nonempty");
  double err = (mat_.adjoint() * mat_ -
                Mat::Identity(mat_.rows(), mat_.cols()))
                   .norm();
  if (!(err <= kUnitarityTol))
    throw NumericError("UnitaryMatrix: ||U^dag U - I||_F = " +
                       std::to_string(err) + " exceeds tolerance");
}

Isometry::Isometry(Mat v) : mat_(std::move(v)) {
  if (mat_.cols() < 1 || mat_.rows() < mat_.cols())
    throw DimensionError("Isometry: need m >= n >= 1");
  double err =
      (mat_.adjoint() * mat_ - Mat::Identity(mat_.cols(), mat_.cols())).norm();
  if (!(err <= kUnitarityTol))
    throw NumericError("Isometry: ||V^dag V - I||_F = " + std::to_string(err) +
                       " exceeds tolerance");
}

Eigen::Matrix2cd beamsplitter_matrix() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd bs;
  bs << Complex(s, 0), Complex(0, s), Complex(0, s), Complex(s, 0);
  return bs;
}

Eigen::Matrix2cd mzi_matrix(const MZIParams& p) {
  double s = std::sin(p.theta / 2), c = std::cos(p.theta / 2);
  Complex g = Complex(0, 1) * std::exp(Complex(0, p.theta / 2));
  Complex e = std::exp(Complex(0, p.phi));
  Eigen::Matrix2cd m;
  m << g * e * s, g * c, g * e * c, -g * s;
  return m;
}

MZIParams zeroing_angles(Complex a, Complex b) {
  if (a == Complex(0) && b == Complex(0))
    throw NumericError("zeroing_angles: degenerate vector (0, 0)");
  MZIParams p;
  p.phi = (a == Complex(0) || b == Complex(0))
              ? 0.0
              : wrap_angle(std::arg(b) - std::arg(a));
  p.theta = 2.0 * std::atan2(std::abs(a), std::abs(b));
  return p;
}

MZIWithPhases mzi_with_output_phases(const Eigen::Matrix2cd& w) {
  double s = std::abs(w(0, 0)), c = std::abs(w(0, 1));
  MZIWithPhases r;
  r.params.theta = 2.0 * std::atan2(s, c);
  Complex g = Complex(0, 1) * std::exp(Complex(0, r.params.theta / 2));
  double hs = std::sin(r.params.theta / 2), hc = std::cos(r.params.theta / 2);
  if (s < 1e-14) {
    r.params.phi = 0.0;
    r.d1 = w(0, 1) / (g * hc);
    r.d2 = w(1, 0) / (g * hc);
  } else if (c < 1e-14) {
    r.params.phi = 0.0;
    r.d1 = w(0, 0) / (g * hs);
    r.d2 = -w(1, 1) / (g * hs);
  } else {
    r.params.phi = wrap_angle(std::arg(w(0, 0)) - std::arg(w(0, 1)));
    r.d1 = w(0, 1) / (g * hc);
    r.d2 = -w(1, 1) / (g * hs);
  }
  return r;
}

UnitaryMatrix haar_random_unitary(int m, std::uint64_t seed) {
  if (m < 1) throw DimensionError("haar_random_unitary: m must be >= 1");
  GaussianStream gs(seed);
  Mat z(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      z(i, j) = Complex(gs.next(), gs.next()) / std::sqrt(2.0);
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Phase correction makes the distribution Haar rather than QR-biased.
  for (int j = 0; j < m; ++j) {
    Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return UnitaryMatrix(std::move(q));
}

Isometry random_isometry(int m, int n, std::uint64_t seed) {
  if (n > m) throw DimensionError("random_isometry: n must not exceed m");
  Mat u = haar_random_unitary(m, seed).mat();
  return Isometry(u.leftCols(n));
}

}  // namespace meshc
