#include "hsm/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace hsm {

namespace {

using cd = std::complex<double>;

template <class Mat>
Mat partial_transpose_impl(const Mat& m, int dim_a, int dim_b) {
  Mat out(m.rows(), m.cols());
  for (int a = 0; a < dim_a; ++a)
    for (int b = 0; b < dim_b; ++b)
      for (int a2 = 0; a2 < dim_a; ++a2)
        for (int b2 = 0; b2 < dim_b; ++b2)
          out(a * dim_b + b, a2 * dim_b + b2) = m(a * dim_b + b2, a2 * dim_b + b);
  return out;
}

template <int N, int K>
Eigen::Matrix<double, N, N> draw_real(Rng& rng, std::normal_distribution<double>& normal) {
  for (;;) {
    Eigen::Matrix<double, N, K> g;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < K; ++j) g(i, j) = normal(rng);
    Eigen::Matrix<double, N, N> w = g * g.transpose();
    const double tr = w.trace();
    if (tr >= kTraceTolerance) return w / tr;
  }
}

template <int N>
Eigen::Matrix<cd, N, N> draw_complex(Rng& rng, std::normal_distribution<double>& normal) {
  for (;;) {
    Eigen::Matrix<cd, N, N> g;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        const double re = normal(rng);
        g(i, j) = cd(re, normal(rng));
      }
    Eigen::Matrix<cd, N, N> w = g * g.adjoint();
    const double tr = w.trace().real();
    if (tr >= kTraceTolerance) return w / tr;
  }
}

// Complex embedding [[X, Y], [-conj(Y), conj(X)]] of a quaternionic Ginibre
// matrix X + Y j with independent standard normal components.
Eigen::MatrixXcd draw_quaternion_ginibre(int dim, Rng& rng, std::normal_distribution<double>& normal) {
  Eigen::MatrixXcd x(dim, dim), y(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const double a = normal(rng);
      const double b = normal(rng);
      const double c = normal(rng);
      const double d = normal(rng);
      x(i, j) = cd(a, b);
      y(i, j) = cd(c, d);
    }
  Eigen::MatrixXcd out(2 * dim, 2 * dim);
  out.topLeftCorner(dim, dim) = x;
  out.topRightCorner(dim, dim) = y;
  out.bottomLeftCorner(dim, dim) = -y.conjugate();
  out.bottomRightCorner(dim, dim) = x.conjugate();
  return out;
}

int family_beta(Family family) {
  switch (family) {
    case Family::real:
      return 1;
    case Family::complex:
      return 2;
    case Family::quaternion:
      return 4;
  }
  return 0;
}

Eigen::VectorXd spectrum_from_chi_model(int beta, int dim, Rng& rng) {
  // Bidiagonal model: B B^T has eigenvalue density
  //   prod lambda^{a - p} |Vandermonde|^beta exp(-sum lambda / 2),
  // p = 1 + beta (dim - 1) / 2. Choosing a = p removes the power weight.
  const double a = 1.0 + beta * (dim - 1) / 2.0;
  const auto chi = [&rng](double dof) {
    std::gamma_distribution<double> g(dof / 2.0, 2.0);
    return std::sqrt(g(rng));
  };
  for (;;) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
      b(i, i) = chi(2 * a - beta * i);
      if (i > 0) b(i, i - 1) = chi(beta * (dim - i));
    }
    const Eigen::MatrixXd l = b * b.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l, Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    const double total = ev.sum();
    if (total >= kTraceTolerance) return ev / total;
  }
}

template <class Mat>
void observe(const Mat& rho, const EstimationConfig& cfg, SampleAccumulator& acc) {
  if (cfg.target == Target::det) {
    acc.add(std::real(rho.determinant()));
    return;
  }
  const Mat pt = partial_transpose_impl(rho, 2, cfg.dim / 2);
  const double det = std::real(pt.determinant());
  acc.add(det);

  Eigen::SelfAdjointEigenSolver<Mat> es(pt, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const int negative = static_cast<int>((ev.array() < kEigenvalueFloor).count());
  if (cfg.dim == 4) {
    // det >= 0 <=> min eigenvalue >= floor; only judged outside the
    // rounding band |min eigenvalue| <= |floor|.
    const double lowest = ev.minCoeff();
    if ((det >= 0 && lowest < kEigenvalueFloor) || (det < 0 && lowest > -kEigenvalueFloor)) {
      throw SeparabilityViolation("det(rho^PT) = " + std::to_string(det) +
                                  " disagrees with lowest PT eigenvalue " + std::to_string(lowest));
    }
    acc.record_separability(det >= 0, negative);
  } else {
    acc.record_separability(negative == 0, negative);
  }
}

void sample_chunk(const EstimationConfig& cfg, Rng& rng, std::int64_t count, SampleAccumulator& acc) {
  std::normal_distribution<double> normal;
  if (cfg.family == Family::quaternion) {
    for (std::int64_t s = 0; s < count; ++s) {
      acc.add(sample_hs_spectrum(Family::quaternion, cfg.dim, rng).prod());
    }
    return;
  }
  if (cfg.family == Family::real && cfg.dim == 4) {
    for (std::int64_t s = 0; s < count; ++s) observe(draw_real<4, 5>(rng, normal), cfg, acc);
  } else if (cfg.family == Family::real && cfg.dim == 6) {
    for (std::int64_t s = 0; s < count; ++s) observe(draw_real<6, 7>(rng, normal), cfg, acc);
  } else if (cfg.family == Family::complex && cfg.dim == 4) {
    for (std::int64_t s = 0; s < count; ++s) observe(draw_complex<4>(rng, normal), cfg, acc);
  } else if (cfg.family == Family::complex && cfg.dim == 6) {
    for (std::int64_t s = 0; s < count; ++s) observe(draw_complex<6>(rng, normal), cfg, acc);
  } else {
    throw std::invalid_argument("unsupported family/dimension");
  }
}

void validate(const EstimationConfig& cfg) {
  if (!is_supported(cfg.family, cfg.dim)) {
    throw std::invalid_argument("unsupported combination: family " + std::string(to_string(cfg.family)) +
                                ", dimension " + std::to_string(cfg.dim) + " (dimensions are 4 or 6)");
  }
  if (cfg.target == Target::det_pt && cfg.family == Family::quaternion) {
    throw std::invalid_argument("partial transpose is only defined here for real and complex states");
  }
  if (cfg.max_order < 1) throw std::invalid_argument("max_order must be at least 1");
  if (cfg.samples < 2) throw std::invalid_argument("need at least two samples");
  if (cfg.threads < 1) throw std::invalid_argument("threads must be at least 1");
  if (cfg.chunk_size < 1) throw std::invalid_argument("chunk size must be positive");
}

}  // namespace

DensityMatrix::DensityMatrix(Family family, int dim, Eigen::MatrixXcd data)
    : family_(family), dim_(dim), data_(std::move(data)) {
  const int n = family == Family::quaternion ? 2 * dim : dim;
  if (data_.rows() != n || data_.cols() != n) {
    throw std::invalid_argument("DensityMatrix: storage size does not match family and dimension");
  }
}

double DensityMatrix::trace() const {
  const double t = data_.trace().real();
  return family_ == Family::quaternion ? 0.5 * t : t;
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  const Eigen::VectorXd all = hermitian_eigenvalues(data_);
  if (family_ != Family::quaternion) return all;
  Eigen::VectorXd out(dim_);
  for (int k = 0; k < dim_; ++k) out(k) = 0.5 * (all(2 * k) + all(2 * k + 1));
  return out;
}

double DensityMatrix::determinant() const {
  const double d = data_.determinant().real();
  if (family_ == Family::quaternion) return std::sqrt(std::max(0.0, d));
  return d;
}

bool DensityMatrix::is_hermitian(double tol) const {
  return (data_ - data_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_supported(Family, int dim) { return dim == 4 || dim == 6; }

Eigen::VectorXd sample_hs_spectrum(Family family, int dim, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("sample_hs_spectrum: dimension must be positive");
  return spectrum_from_chi_model(family_beta(family), dim, rng);
}

DensityMatrix sample_hs(Family family, int dim, Rng& rng) {
  if (!is_supported(family, dim)) {
    throw std::invalid_argument("sample_hs: dimension must be 4 or 6, got " + std::to_string(dim));
  }
  std::normal_distribution<double> normal;
  switch (family) {
    case Family::real:
      if (dim == 4) return DensityMatrix(family, dim, draw_real<4, 5>(rng, normal).cast<cd>());
      return DensityMatrix(family, dim, draw_real<6, 7>(rng, normal).cast<cd>());
    case Family::complex:
      if (dim == 4) return DensityMatrix(family, dim, draw_complex<4>(rng, normal));
      return DensityMatrix(family, dim, draw_complex<6>(rng, normal));
    case Family::quaternion: {
      const Eigen::VectorXd spectrum = sample_hs_spectrum(family, dim, rng);
      // Eigenprojectors of a quaternionic Wishart matrix are Haar distributed
      // and come in degenerate pairs of the embedding.
      const Eigen::MatrixXcd g = draw_quaternion_ginibre(dim, rng, normal);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g * g.adjoint());
      const Eigen::MatrixXcd& v = es.eigenvectors();
      Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2 * dim, 2 * dim);
      for (int k = 0; k < dim; ++k) {
        const auto pair = v.middleCols(2 * k, 2);
        rho += spectrum(k) * (pair * pair.adjoint());
      }
      return DensityMatrix(family, dim, 0.5 * (rho + rho.adjoint()));
    }
  }
  throw std::invalid_argument("sample_hs: unknown family");
}

Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& m, int dim_a, int dim_b) {
  if (dim_a < 1 || dim_b < 1 || m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    throw std::invalid_argument("partial_transpose: matrix is not (" + std::to_string(dim_a) + "*" +
                                std::to_string(dim_b) + ")-square");
  }
  return partial_transpose_impl(m, dim_a, dim_b);
}

Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho) {
  if (rho.family() == Family::quaternion) {
    throw std::invalid_argument("partial_transpose: not defined for the quaternion family");
  }
  if (rho.dim() != 4 && rho.dim() != 6) {
    throw std::invalid_argument("partial_transpose: composite dimension must be 4 or 6");
  }
  return partial_transpose_impl(rho.data(), 2, rho.dim() / 2);
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

std::string_view to_string(Target target) { return target == Target::det ? "det" : "detPT"; }

Target parse_target(std::string_view name) {
  if (name == "det") return Target::det;
  if (name == "detPT") return Target::det_pt;
  throw std::invalid_argument("unknown target '" + std::string(name) + "' (expected det or detPT)");
}

std::uint64_t chunk_seed(std::uint64_t seed, std::int64_t chunk) {
  // splitmix64 finalizer over (seed, chunk)
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(chunk + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::optional<Rat> known_exact_moment(Target target, Family family, int dim, int order) {
  if (order < 1) return std::nullopt;
  if (target == Target::det) {
    if (dim == 4) return hs_det_moment(family, order);
    if (dim == 6 && family == Family::complex) {
      if (order == 1) return qubit_qutrit_first_moment();
      if (order == 2) return Rat(qubit_qutrit_first_moment() * qubit_qutrit_second_moment_ratio());
    }
    return std::nullopt;
  }
  if (family == Family::real && dim == 4 && order <= 9) return assemble_moment(order);
  return std::nullopt;
}

EstimationResult run_estimation(const EstimationConfig& config) {
  validate(config);
  const std::int64_t chunks = (config.samples + config.chunk_size - 1) / config.chunk_size;
  std::vector<SampleAccumulator> parts(static_cast<std::size_t>(chunks), SampleAccumulator(config.max_order));

  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    try {
      for (std::int64_t c = next++; c < chunks; c = next++) {
        Rng rng(chunk_seed(config.seed, c));
        const std::int64_t count = std::min(config.chunk_size, config.samples - c * config.chunk_size);
        sample_chunk(config, rng, count, parts[static_cast<std::size_t>(c)]);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = chunks;
    }
  };

  const int workers = static_cast<int>(std::min<std::int64_t>(config.threads, chunks));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  EstimationResult result{config, {config.target == Target::det ? det_support() : pt_support(), {}}, {},
                          SampleAccumulator(config.max_order)};
  if (config.dim == 6) result.moments.support = {Rat(0), make_rat(1, 46656)};
  // Loose but valid: PT eigenvalues lie in [-1/2, 1].
  if (config.dim == 6 && config.target == Target::det_pt) result.moments.support = {Rat(-1), Rat(1)};
  for (const auto& part : parts) result.accumulator.merge(part);
  result.accumulator.seed = config.seed;
  result.accumulator.chunk_size = config.chunk_size;
  result.accumulator.chunks = chunks;

  for (int k = 1; k <= config.max_order; ++k) {
    const double est = result.accumulator.estimate(k);
    result.moments.raw.push_back(from_double(est));
    result.estimates.push_back(
        {k, est, result.accumulator.std_error(k), known_exact_moment(config.target, config.family, config.dim, k)});
  }
  return result;
}

SeparabilityEstimate separability_probability(Family family, std::int64_t samples, std::uint64_t seed,
                                              int threads) {
  EstimationConfig cfg;
  cfg.target = Target::det_pt;
  cfg.family = family;
  cfg.dim = 4;
  cfg.max_order = 1;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.threads = threads;
  const EstimationResult r = run_estimation(cfg);
  const auto& acc = r.accumulator;
  return {acc.separable_fraction(), acc.separable_std_error(), acc.separability_tested(), acc.separable_count(),
          acc.multiple_negative_count()};
}

}  // namespace hsm
