#include "travwave/spectral.hpp"

#include "fft.hpp"
#include "travwave/error.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

namespace travwave {

namespace {

// cos(pi m / (2N)) for m = 0..4N-1. Every cos(kappa_l x_n) on a grid of
// size N is one of these entries, indexed by l(2n+1) mod 4N.
std::vector<double> quarter_cos_table(std::size_t n) {
  std::vector<double> table(4 * n);
  for (std::size_t m = 0; m < table.size(); ++m)
    table[m] = std::cos(std::numbers::pi * static_cast<double>(m) / (2.0 * static_cast<double>(n)));
  return table;
}

double ortho_weight(std::size_t l, std::size_t n) {
  return std::sqrt((l == 0 ? 1.0 : 2.0) / static_cast<double>(n));
}

} // namespace

Grid::Grid(double length, std::size_t size) : length_(length) {
  if (size < 2) throw InvalidArgument("grid needs at least 2 points");
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidArgument("grid length must be positive and finite");
  nodes_.resize(size);
  wavenumbers_.resize(size);
  const double n = static_cast<double>(size);
  for (std::size_t i = 0; i < size; ++i) {
    nodes_[i] = 0.5 * length * (2.0 * static_cast<double>(i) + 1.0) / (2.0 * n);
    wavenumbers_[i] = 2.0 * std::numbers::pi / length * static_cast<double>(i);
  }
}

double Grid::weight(std::size_t l) const noexcept { return ortho_weight(l, size()); }

Grid make_grid(double length, std::size_t size) { return Grid(length, size); }

std::vector<double> cosine_forward(std::span<const double> samples) {
  const std::size_t n = samples.size();
  auto out = fft::dct2(samples);
  for (std::size_t l = 0; l < n; ++l) out[l] *= 0.5 * ortho_weight(l, n);
  return out;
}

std::vector<double> cosine_inverse(std::span<const double> coefficients) {
  const std::size_t n = coefficients.size();
  std::vector<double> scaled(n);
  for (std::size_t l = 0; l < n; ++l)
    scaled[l] = coefficients[l] * ortho_weight(l, n) * (l == 0 ? 1.0 : 0.5);
  return fft::dct3(scaled);
}

std::vector<double> cosine_forward_direct(std::span<const double> samples) {
  const std::size_t n = samples.size();
  const auto table = quarter_cos_table(n);
  std::vector<double> out(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += samples[i] * table[(l * (2 * i + 1)) % (4 * n)];
    out[l] = ortho_weight(l, n) * sum;
  }
  return out;
}

std::vector<double> cosine_inverse_direct(std::span<const double> coefficients) {
  const std::size_t n = coefficients.size();
  const auto table = quarter_cos_table(n);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t l = 0; l < n; ++l) sum += ortho_weight(l, n) * coefficients[l] * table[(l * (2 * i + 1)) % (4 * n)];
    out[i] = sum;
  }
  return out;
}

// --- Wave ---------------------------------------------------------------

Wave::Wave(Grid grid, std::vector<double> samples) : grid_(std::move(grid)), samples_(std::move(samples)) {
  if (samples_.size() != grid_.size()) throw InvalidArgument("wave sample count does not match grid size");
}

Wave Wave::zero(const Grid& grid) { return {grid, std::vector<double>(grid.size(), 0.0)}; }

Wave Wave::from_coefficients(Grid grid, std::vector<double> coefficients) {
  if (coefficients.size() != grid.size()) throw InvalidArgument("coefficient count does not match grid size");
  auto samples = cosine_inverse(coefficients);
  Wave w(std::move(grid), std::move(samples));
  w.coefficients_ = std::move(coefficients);
  return w;
}

Wave Wave::cosine_mode(const Grid& grid, std::size_t mode, double amplitude) {
  std::vector<double> samples(grid.size());
  const auto x = grid.nodes();
  const double k = 2.0 * std::numbers::pi / grid.length() * static_cast<double>(mode);
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = amplitude * std::cos(k * x[i]);
  return {grid, std::move(samples)};
}

std::vector<double> Wave::coefficients() const {
  if (coefficients_) return *coefficients_;
  return cosine_forward(samples_);
}

double Wave::evaluate(double x) const {
  const auto coeffs = coefficients();
  const auto kappa = grid_.wavenumbers();
  double sum = 0.0;
  for (std::size_t l = 0; l < coeffs.size(); ++l) sum += grid_.weight(l) * coeffs[l] * std::cos(kappa[l] * x);
  return sum;
}

// --- Discretization -----------------------------------------------------

struct Discretization::MatrixCache {
  std::once_flag once;
  Eigen::MatrixXd matrix;
};

Discretization::Discretization(Equation equation, Grid grid)
  : equation_(std::move(equation)), grid_(std::move(grid)), cache_(std::make_shared<MatrixCache>()) {
  if (equation_.length() != grid_.length()) throw InvalidArgument("equation and grid wavelengths differ");
  multipliers_.resize(grid_.size());
  const auto kappa = grid_.wavenumbers();
  for (std::size_t l = 0; l < multipliers_.size(); ++l) multipliers_[l] = equation_.symbol(kappa[l]);
}

std::vector<double> Discretization::apply(std::span<const double> samples) const {
  if (samples.size() != size()) throw InvalidArgument("operator input length does not match grid size");
  auto coeffs = cosine_forward(samples);
  for (std::size_t l = 0; l < coeffs.size(); ++l) coeffs[l] *= multipliers_[l];
  return cosine_inverse(coeffs);
}

const Eigen::MatrixXd& Discretization::matrix() const {
  std::call_once(cache_->once, [this] { cache_->matrix = operator_matrix(equation_, grid_); });
  return cache_->matrix;
}

Discretization Discretization::with_size(std::size_t size) const { return {equation_, Grid(grid_.length(), size)}; }

Wave apply_operator(const Equation& equation, const Wave& wave) {
  Discretization disc(equation, wave.grid());
  return {wave.grid(), disc.apply(wave.samples())};
}

Eigen::MatrixXd operator_matrix(const Equation& equation, const Grid& grid) {
  if (equation.length() != grid.length()) throw InvalidArgument("equation and grid wavelengths differ");
  const std::size_t n = grid.size();
  const auto table = quarter_cos_table(n);
  const auto kappa = grid.wavenumbers();
  // basis(l, i) = w_l cos(kappa_l x_i); the matrix is basis^T diag(alpha) basis.
  Eigen::MatrixXd basis(n, n);
  Eigen::MatrixXd scaled(n, n);
  for (std::size_t l = 0; l < n; ++l) {
    const double w = grid.weight(l);
    const double alpha = equation.symbol(kappa[l]);
    for (std::size_t i = 0; i < n; ++i) {
      const double b = w * table[(l * (2 * i + 1)) % (4 * n)];
      basis(l, i) = b;
      scaled(l, i) = alpha * b;
    }
  }
  Eigen::MatrixXd m = basis.transpose() * scaled;
  // Exact symmetry; the product is symmetric only up to rounding.
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = j + 1; i < m.rows(); ++i) m(j, i) = m(i, j);
  return m;
}

std::vector<double> steady_residual(const Discretization& disc, std::span<const double> samples, double speed, double b) {
  auto out = disc.apply(samples);
  const auto& eq = disc.equation();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += -speed * samples[i] + eq.flux(samples[i]) - b;
  return out;
}

std::vector<double> steady_residual(const Equation& equation, const Wave& wave, double speed, double b) {
  return steady_residual(Discretization(equation, wave.grid()), wave.samples(), speed, b);
}

Wave resample(const Wave& wave, std::size_t size) {
  const std::size_t n = wave.size();
  const auto coeffs = wave.coefficients();
  std::vector<double> out(size, 0.0);
  // Orthonormal coefficients scale with sqrt(size/n) when the grid changes.
  const double scale = std::sqrt(static_cast<double>(size) / static_cast<double>(n));
  for (std::size_t l = 0; l < std::min(n, size); ++l) out[l] = coeffs[l] * scale;
  return Wave::from_coefficients(Grid(wave.grid().length(), size), std::move(out));
}

Wave refine(const Wave& wave, std::size_t factor) {
  if (factor < 2 || (factor & (factor - 1)) != 0) throw InvalidArgument("refinement factor must be a power of 2, >= 2");
  return resample(wave, wave.size() * factor);
}

} // namespace travwave
