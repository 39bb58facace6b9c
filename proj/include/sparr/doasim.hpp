#pragma once

// Coarray-MUSIC direction-of-arrival simulator: narrowband snapshot model,
// redundancy-averaged coarray covariance with spatial smoothing, noise
// subspace pseudo-spectrum, and peak matching against ground truth.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "sparr/coarray.hpp"
#include "sparr/geometry.hpp"

namespace sparr {

struct DegenerateCoarray : std::runtime_error {
  explicit DegenerateCoarray(Position u)
      : std::runtime_error("coarray too degenerate for smoothing (u_max = " +
                           std::to_string(u) + " < 1)") {}
};

struct DoaScenario {
  ArrayGeometry geometry;
  std::vector<double> source_angles_deg;
  double snr_db = 0.0;
  std::size_t snapshots = 500;
  std::uint64_t seed = 1;
  bool noiseless = false;
};

struct MusicSpectrum {
  std::vector<double> grid;
  std::vector<double> values;
};

struct DoaEstimate {
  std::vector<double> angles;
  double rmse = 0.0;
  std::size_t resolved_count = 0;
};

// Seeded standard-normal stream: mt19937_64 driving a Box-Muller transform,
// so output is identical across platforms and standard libraries. Complex
// samples have unit total variance and consume one real pair each.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = (static_cast<double>(rng_() >> 11) + 0.5) * kScale;
    const double u2 = (static_cast<double>(rng_() >> 11) + 0.5) * kScale;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

  std::complex<double> next_complex() {
    const double re = next();
    const double im = next();
    return {re * kInvSqrt2, im * kInvSqrt2};
  }

 private:
  static constexpr double kScale = 1.0 / 9007199254740992.0;
  static constexpr double kInvSqrt2 = 0.7071067811865475244;
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

inline Eigen::VectorXcd steering_vector(const std::vector<Position>& positions,
                                        double angle_deg) {
  const double s = std::sin(angle_deg * std::numbers::pi / 180.0);
  Eigen::VectorXcd a(static_cast<Eigen::Index>(positions.size()));
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double phase = std::numbers::pi * static_cast<double>(positions[static_cast<std::size_t>(i)]) * s;
    a(i) = std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return a;
}

// x(t) = A s(t) + n(t) with unit-power uncorrelated circular Gaussian
// sources and white circular Gaussian noise at 10^(-snr_db/10) power per
// sensor. Draw order per snapshot: one complex symbol per source in angle
// order, then one complex noise sample per sensor in position order.
inline Eigen::MatrixXcd simulate_snapshots(const DoaScenario& sc) {
  if (sc.snapshots < 1) throw std::invalid_argument("snapshots must be >= 1");
  if (sc.source_angles_deg.empty()) throw std::invalid_argument("no source angles given");
  const auto& pos = sc.geometry.positions();
  const Eigen::Index n = static_cast<Eigen::Index>(pos.size());
  const Eigen::Index k = static_cast<Eigen::Index>(sc.source_angles_deg.size());
  const Eigen::Index t_count = static_cast<Eigen::Index>(sc.snapshots);

  Eigen::MatrixXcd steering(n, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    steering.col(j) = steering_vector(pos, sc.source_angles_deg[static_cast<std::size_t>(j)]);
  }

  const double noise_amp = sc.noiseless ? 0.0 : std::sqrt(std::pow(10.0, -sc.snr_db / 10.0));
  GaussianStream gauss(sc.seed);
  Eigen::MatrixXcd x(n, t_count);
  Eigen::VectorXcd symbols(k);
  for (Eigen::Index t = 0; t < t_count; ++t) {
    for (Eigen::Index j = 0; j < k; ++j) symbols(j) = gauss.next_complex();
    x.col(t) = steering * symbols;
    if (!sc.noiseless) {
      for (Eigen::Index i = 0; i < n; ++i) x(i, t) += noise_amp * gauss.next_complex();
    }
  }
  return x;
}

inline Eigen::MatrixXcd sample_covariance(const Eigen::MatrixXcd& snapshots) {
  return snapshots * snapshots.adjoint() / static_cast<double>(snapshots.cols());
}

struct SmoothedCoarray {
  Eigen::MatrixXcd matrix;
  Position u_max = 0;
};

// Redundancy averaging followed by spatial smoothing: entries of R are
// averaged per coarray lag, lags inside the central hole-free segment
// [-u_max, u_max] form a virtual ULA measurement, and the smoothed
// (u_max+1) x (u_max+1) covariance is the mean of the outer products of its
// sliding subvectors.
inline SmoothedCoarray coarray_covariance(const Eigen::MatrixXcd& r, const ArrayGeometry& g) {
  const auto& pos = g.positions();
  const Eigen::Index n = static_cast<Eigen::Index>(pos.size());
  if (r.rows() != n || r.cols() != n) {
    throw std::invalid_argument("covariance dimension does not match geometry");
  }
  const CoarrayProfile profile = coarray_profile(g);
  const Position u = profile.u_max;
  if (u < 1) throw DegenerateCoarray(u);

  std::vector<std::complex<double>> acc(static_cast<std::size_t>(2 * u + 1), {0.0, 0.0});
  std::vector<std::int64_t> cnt(static_cast<std::size_t>(2 * u + 1), 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Position m = pos[static_cast<std::size_t>(i)] - pos[static_cast<std::size_t>(j)];
      if (m < -u || m > u) continue;
      acc[static_cast<std::size_t>(m + u)] += r(i, j);
      ++cnt[static_cast<std::size_t>(m + u)];
    }
  }
  std::vector<std::complex<double>> v(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    v[i] = acc[i] / static_cast<double>(cnt[i]);
  }

  const Eigen::Index d = static_cast<Eigen::Index>(u + 1);
  Eigen::MatrixXcd smoothed = Eigen::MatrixXcd::Zero(d, d);
  Eigen::VectorXcd w(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    // Subvector i covers lags k - i for k in [0, d), so its phase progression
    // matches the virtual steering vector used by the spectrum.
    for (Eigen::Index k = 0; k < d; ++k) {
      w(k) = v[static_cast<std::size_t>(k - i + u)];
    }
    smoothed += w * w.adjoint();
  }
  smoothed /= static_cast<double>(d);
  return {std::move(smoothed), u};
}

// Noise-subspace pseudo-spectrum over a uniform angle grid spanning
// [-90, 90] degrees.
inline MusicSpectrum music_spectrum(const Eigen::MatrixXcd& coarray_cov,
                                    std::size_t n_sources, double grid_step_deg = 0.1) {
  const Eigen::Index d = coarray_cov.rows();
  if (static_cast<Eigen::Index>(n_sources) >= d) {
    throw std::invalid_argument("cannot separate " + std::to_string(n_sources) +
                                " sources with a " + std::to_string(d) + "-dimensional coarray");
  }
  if (grid_step_deg <= 0.0) throw std::invalid_argument("grid step must be positive");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(coarray_cov);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  const Eigen::MatrixXcd noise_basis =
      es.eigenvectors().leftCols(d - static_cast<Eigen::Index>(n_sources));

  const std::size_t points = static_cast<std::size_t>(std::llround(180.0 / grid_step_deg)) + 1;
  MusicSpectrum spec;
  spec.grid.resize(points);
  spec.values.resize(points);
  std::vector<Position> virtual_positions(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < virtual_positions.size(); ++i) {
    virtual_positions[i] = static_cast<Position>(i);
  }
  for (std::size_t gi = 0; gi < points; ++gi) {
    const double angle = -90.0 + static_cast<double>(gi) * grid_step_deg;
    spec.grid[gi] = angle;
    const Eigen::VectorXcd a = steering_vector(virtual_positions, angle);
    const double denom = (noise_basis.adjoint() * a).squaredNorm();
    spec.values[gi] = 1.0 / std::max(denom, 1e-300);
  }
  return spec;
}

// Picks the n_sources tallest local maxima and greedily matches them to the
// true angles; rmse is over matched pairs only (0 when nothing matched).
inline DoaEstimate estimate_doas(const MusicSpectrum& spec, std::size_t n_sources,
                                 double match_tolerance_deg,
                                 const std::vector<double>& truth) {
  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < spec.values.size(); ++i) {
    if (spec.values[i] >= spec.values[i - 1] && spec.values[i] > spec.values[i + 1]) {
      peaks.push_back(i);
    }
  }
  std::sort(peaks.begin(), peaks.end(),
            [&](std::size_t a, std::size_t b) { return spec.values[a] > spec.values[b]; });
  if (peaks.size() > n_sources) peaks.resize(n_sources);

  DoaEstimate est;
  est.angles.reserve(peaks.size());
  for (std::size_t i : peaks) est.angles.push_back(spec.grid[i]);
  std::sort(est.angles.begin(), est.angles.end());

  std::vector<double> sorted_truth = truth;
  std::sort(sorted_truth.begin(), sorted_truth.end());
  std::vector<bool> used(est.angles.size(), false);
  double err_sq_sum = 0.0;
  for (double t : sorted_truth) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_idx = est.angles.size();
    for (std::size_t i = 0; i < est.angles.size(); ++i) {
      if (used[i]) continue;
      const double d = std::abs(est.angles[i] - t);
      if (d <= match_tolerance_deg && d < best) {
        best = d;
        best_idx = i;
      }
    }
    if (best_idx < est.angles.size()) {
      used[best_idx] = true;
      ++est.resolved_count;
      err_sq_sum += best * best;
    }
  }
  est.rmse = est.resolved_count > 0
                 ? std::sqrt(err_sq_sum / static_cast<double>(est.resolved_count))
                 : 0.0;
  return est;
}

struct DoaRunResult {
  DoaEstimate estimate;
  Position u_max = 0;
  std::size_t smoothed_dim = 0;
  MusicSpectrum spectrum;
};

// End-to-end run: simulate, form the smoothed coarray covariance, compute
// the spectrum, estimate and match.
inline DoaRunResult run_doa_simulation(const DoaScenario& sc, double grid_step_deg = 0.1,
                                       double match_tolerance_deg = 2.0) {
  const Eigen::MatrixXcd x = simulate_snapshots(sc);
  const Eigen::MatrixXcd r = sample_covariance(x);
  SmoothedCoarray smoothed = coarray_covariance(r, sc.geometry);
  const std::size_t k = sc.source_angles_deg.size();
  DoaRunResult result;
  result.u_max = smoothed.u_max;
  result.smoothed_dim = static_cast<std::size_t>(smoothed.matrix.rows());
  result.spectrum = music_spectrum(smoothed.matrix, k, grid_step_deg);
  result.estimate = estimate_doas(result.spectrum, k, match_tolerance_deg,
                                  sc.source_angles_deg);
  return result;
}

}  // namespace sparr
