#pragma once

#include "travwave/equations.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace travwave {

/// Half-period collocation grid for even L-periodic functions.
///
/// Nodes are x_n = (L/2)(2n-1)/(2N), n = 1..N (stored 0-based), and the
/// cosine basis uses wavenumbers kappa_l = 2 pi l / L, l = 0..N-1.
class Grid {
public:
  Grid(double length, std::size_t size);

  std::size_t size() const noexcept { return nodes_.size(); }
  double length() const noexcept { return length_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> wavenumbers() const noexcept { return wavenumbers_; }
  /// Orthonormal transform weight: sqrt(1/N) for l = 0, sqrt(2/N) otherwise.
  double weight(std::size_t l) const noexcept;
  /// Spacing between nodes, L / (2N).
  double spacing() const noexcept { return 0.5 * length_ / static_cast<double>(size()); }

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.length_ == b.length_ && a.size() == b.size();
  }

private:
  double length_;
  std::vector<double> nodes_;
  std::vector<double> wavenumbers_;
};

Grid make_grid(double length, std::size_t size);

/// Orthonormal cosine pair on the half-shifted nodes (DCT-II / DCT-III with
/// orthonormal scaling). Fast path via FFTW.
std::vector<double> cosine_forward(std::span<const double> samples);
std::vector<double> cosine_inverse(std::span<const double> coefficients);

/// The same pair by direct O(N^2) summation of the defining sums.
std::vector<double> cosine_forward_direct(std::span<const double> samples);
std::vector<double> cosine_inverse_direct(std::span<const double> coefficients);

/// Wave profile sampled on a Grid.
class Wave {
public:
  Wave(Grid grid, std::vector<double> samples);

  static Wave zero(const Grid& grid);
  static Wave from_coefficients(Grid grid, std::vector<double> coefficients);
  /// Samples of cos(kappa_mode x) scaled by amplitude.
  static Wave cosine_mode(const Grid& grid, std::size_t mode, double amplitude = 1.0);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return samples_.size(); }
  std::span<const double> samples() const noexcept { return samples_; }
  std::vector<double>& mutable_samples() noexcept {
    coefficients_.reset();
    return samples_;
  }
  std::vector<double> coefficients() const;

  /// phi(x_1) - phi(x_N).
  double waveheight() const noexcept { return samples_.front() - samples_.back(); }
  /// Cosine-series value at an arbitrary abscissa.
  double evaluate(double x) const;

private:
  Grid grid_;
  std::vector<double> samples_;
  std::optional<std::vector<double>> coefficients_;
};

/// Equation + grid with the multiplier values and (lazily) the dense
/// operator matrix. Copies share the cached matrix.
class Discretization {
public:
  Discretization(Equation equation, Grid grid);

  const Equation& equation() const noexcept { return equation_; }
  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return grid_.size(); }
  /// alpha(kappa_l), l = 0..N-1.
  std::span<const double> multipliers() const noexcept { return multipliers_; }

  /// L^N applied through the cosine transform.
  std::vector<double> apply(std::span<const double> samples) const;
  const Eigen::MatrixXd& matrix() const;

  /// Same equation on a refined grid of `size` points.
  Discretization with_size(std::size_t size) const;

private:
  struct MatrixCache;
  Equation equation_;
  Grid grid_;
  std::vector<double> multipliers_;
  std::shared_ptr<MatrixCache> cache_;
};

Wave apply_operator(const Equation& equation, const Wave& wave);

/// L^N(i,j) = sum_l w_l^2 alpha(kappa_l) cos(kappa_l x_i) cos(kappa_l x_j).
Eigen::MatrixXd operator_matrix(const Equation& equation, const Grid& grid);

/// -c phi + f(phi) + L^N phi - B at every node.
std::vector<double> steady_residual(const Discretization& disc, std::span<const double> samples, double speed, double b);
std::vector<double> steady_residual(const Equation& equation, const Wave& wave, double speed, double b);

/// Zero-pads the cosine coefficients to factor*N modes and resamples.
Wave refine(const Wave& wave, std::size_t factor);

/// Truncates or zero-pads the cosine series onto a grid of `size` points.
Wave resample(const Wave& wave, std::size_t size);

} // namespace travwave
