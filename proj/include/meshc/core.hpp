#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace meshc {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

struct NumericError : Error {
  using Error::Error;
};

// Frobenius tolerance accepted when validating unitarity / isometry on
// construction.
inline constexpr double kUnitarityTol = 1e-9;

/// Scale-invariant threshold below which an amplitude of `a` counts as zero.
inline double zero_tolerance(const Mat& a) {
  double scale = a.norm() / std::sqrt(static_cast<double>(a.size()));
  return 1e-10 * scale;
}

/// Square matrix validated to satisfy ||U^dag U - I|| <= kUnitarityTol.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Mat u);

  int modes() const { return static_cast<int>(mat_.rows()); }
  const Mat& mat() const { return mat_; }

 private:
  Mat mat_;
};

/// m x n matrix with orthonormal columns, m >= n.
class Isometry {
 public:
  explicit Isometry(Mat v);

  int modes() const { return static_cast<int>(mat_.rows()); }
  int cols() const { return static_cast<int>(mat_.cols()); }
  const Mat& mat() const { return mat_; }

 private:
  Mat mat_;
};

/// Angle pair of a single MZI. theta is the internal phase, phi the external
/// phase on the top input.
struct MZIParams {
  double theta = 0.0;
  double phi = 0.0;
};

/// The balanced beamsplitter (1/sqrt2) [[1, i], [i, 1]].
Eigen::Matrix2cd beamsplitter_matrix();

/// MZI = BS . PS_top(theta) . BS . PS_top(phi)
///     = i e^{i theta/2} [[e^{i phi} sin(t/2), cos(t/2)],
///                        [e^{i phi} cos(t/2), -sin(t/2)]].
Eigen::Matrix2cd mzi_matrix(const MZIParams& p);

/// Angles such that mzi_matrix(result) * (a, b)^T has zero second component.
/// Throws NumericError on the degenerate (0, 0) input.
MZIParams zeroing_angles(Complex a, Complex b);

/// Decomposes an arbitrary 2x2 unitary W as diag(d1, d2) * mzi_matrix(p),
/// i.e. a standard MZI followed by per-mode output phases.
struct MZIWithPhases {
  MZIParams params;
  Complex d1, d2;
};
MZIWithPhases mzi_with_output_phases(const Eigen::Matrix2cd& w);

/// Haar-distributed random unitary, deterministic per seed.
UnitaryMatrix haar_random_unitary(int m, std::uint64_t seed);

/// First n columns of haar_random_unitary(m, seed).
Isometry random_isometry(int m, int n, std::uint64_t seed);

}  // namespace meshc
