#pragma once

// Hilbert-Schmidt sampling of density matrices and Monte Carlo estimation of
// determinant moments.
//
// Sampling routes (each induces the flat measure on states):
//   real        rho = G G^T / tr, G an N x (N+1) real Ginibre matrix
//   complex     rho = G G^* / tr, G an N x N complex Ginibre matrix
//   quaternion  spectrum from the beta = 4 Laguerre ensemble with the
//               weight exponent set to zero (bidiagonal chi model), rotated
//               by the eigenprojectors of a quaternionic Wishart matrix.
// Quaternionic states are held as their 2N x 2N complex embedding.

#include "hsm/accumulator.hpp"
#include "hsm/moments.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string_view>

namespace hsm {

using Rng = std::mt19937_64;

inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kEigenvalueFloor = -1e-10;
inline constexpr std::int64_t kDefaultChunkSize = std::int64_t{1} << 16;

class DensityMatrix {
 public:
  /// Throws std::invalid_argument if `data` does not have the size implied
  /// by family and dimension.
  DensityMatrix(Family family, int dim, Eigen::MatrixXcd data);

  Family family() const { return family_; }
  int dim() const { return dim_; }
  /// The matrix itself, or its complex embedding for the quaternion family.
  const Eigen::MatrixXcd& data() const { return data_; }

  /// Quaternionic trace counts each embedded pair once.
  double trace() const;
  /// The N eigenvalues, ascending (degenerate embedded pairs merged).
  Eigen::VectorXd eigenvalues() const;
  /// Quaternion: positive square root of the embedded determinant.
  double determinant() const;
  bool is_hermitian(double tol = 1e-12) const;

 private:
  Family family_;
  int dim_;
  Eigen::MatrixXcd data_;
};

bool is_supported(Family family, int dim);

/// Throws std::invalid_argument for unsupported (family, dim).
DensityMatrix sample_hs(Family family, int dim, Rng& rng);

/// Transposes the indices of the second tensor factor of a
/// (dim_a * dim_b)-square matrix.
Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& m, int dim_a, int dim_b);
/// Two-qubit or qubit-qutrit split inferred from the dimension.
Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho);

/// Sorted eigenvalues of a Hermitian matrix.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m);

/// Spectrum of an HS-distributed state drawn through the bidiagonal
/// Laguerre model; normalized to unit sum.
Eigen::VectorXd sample_hs_spectrum(Family family, int dim, Rng& rng);

enum class Target { det, det_pt };

std::string_view to_string(Target target);
Target parse_target(std::string_view name);

struct EstimationConfig {
  Target target = Target::det;
  Family family = Family::real;
  int dim = 4;
  int max_order = 2;
  std::int64_t samples = 100'000;
  std::uint64_t seed = 1;
  int threads = 1;
  std::int64_t chunk_size = kDefaultChunkSize;
};

struct MomentEstimate {
  int order = 0;
  double estimate = 0;
  double std_error = 0;
  std::optional<Rat> exact;
};

struct EstimationResult {
  EstimationConfig config;
  MomentVector moments;
  std::vector<MomentEstimate> estimates;
  SampleAccumulator accumulator;
};

/// Raised when det(rho^PT) and the PT spectrum disagree about the sign, or
/// when the configuration is inconsistent.
class SeparabilityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Chunked, multi-threaded estimation. Chunk c draws from its own generator
/// seeded by (seed, c); chunk accumulators are merged in chunk order, so the
/// result depends on (seed, chunk_size) only.
EstimationResult run_estimation(const EstimationConfig& config);

struct SeparabilityEstimate {
  double estimate = 0;
  double std_error = 0;
  std::int64_t samples = 0;
  std::int64_t separable = 0;
  std::int64_t multiple_negative = 0;
};

/// Fraction of two-qubit states with det(rho^PT) >= 0.
SeparabilityEstimate separability_probability(Family family, std::int64_t samples, std::uint64_t seed,
                                              int threads);

/// Exact moment when a closed form or fixture exists.
std::optional<Rat> known_exact_moment(Target target, Family family, int dim, int order);

/// Per-chunk generator seed.
std::uint64_t chunk_seed(std::uint64_t seed, std::int64_t chunk);

}  // namespace hsm
