#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rieszwell {

using complex = std::complex<double>;

/// Uniform real grid x_k = x_min + k*dx, k = 0..count-1.
class UniformGrid {
public:
    static constexpr std::size_t min_count = 8;

    UniformGrid(double x_min, double dx, std::size_t count);

    /// Grid with `count` nodes spanning [lo, hi] inclusive.
    static UniformGrid from_bounds(double lo, double hi, std::size_t count);

    /// Grid on [lo, hi] with spacing `dx`; hi is rounded to the nearest node.
    static UniformGrid with_spacing(double lo, double hi, double dx);

    double x_min() const noexcept { return x_min_; }
    double dx() const noexcept { return dx_; }
    std::size_t count() const noexcept { return count_; }
    double x_max() const noexcept { return x(count_ - 1); }
    double x(std::size_t k) const noexcept { return x_min_ + static_cast<double>(k) * dx_; }

    /// Index of the node closest to `x`, clamped to the grid.
    std::size_t nearest_index(double x) const noexcept;

    /// Sub-grid of `n` nodes starting at node `first`.
    UniformGrid subgrid(std::size_t first, std::size_t n) const;

    bool same_nodes(const UniformGrid& other) const noexcept;

private:
    double x_min_;
    double dx_;
    std::size_t count_;
};

/// Complex samples of a function, one per node of a uniform grid.
class GridFunction {
public:
    GridFunction(UniformGrid grid, std::vector<complex> values);

    /// All-zero function on `grid`.
    explicit GridFunction(UniformGrid grid);

    static GridFunction sample(const UniformGrid& grid, const std::function<complex(double)>& f);
    static GridFunction sample_real(const UniformGrid& grid, const std::function<double(double)>& f);

    const UniformGrid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const complex> values() const noexcept { return values_; }
    const complex& operator[](std::size_t k) const noexcept { return values_[k]; }
    double x(std::size_t k) const noexcept { return grid_.x(k); }

    double max_abs() const noexcept;

    /// Values on nodes [first, first + n) as a new function.
    GridFunction restrict(std::size_t first, std::size_t n) const;

    /// Value at the grid node nearest to x (no interpolation).
    complex at_node(double x) const noexcept { return values_[grid_.nearest_index(x)]; }

    GridFunction scaled(complex factor) const;

    /// this + factor * other; grids must coincide.
    GridFunction plus(const GridFunction& other, complex factor = 1.0) const;

private:
    UniformGrid grid_;
    std::vector<complex> values_;
};

/// Samples F(w_k), w_k = omega_min + k*d_omega, of a Fourier transform in the
/// convention F(w) = integral f(x) exp(-i w x) dx.
struct SpectralDensity {
    double omega_min = 0.0;
    double d_omega = 1.0;
    std::vector<complex> values;
    /// Set when the source function had not decayed at the grid ends.
    bool truncation_warning = false;

    double omega(std::size_t k) const noexcept {
        return omega_min + static_cast<double>(k) * d_omega;
    }
    std::size_t size() const noexcept { return values.size(); }
    double max_abs() const noexcept;
};

/// Validated fractional order (alpha, or q for the one-sided operators).
class FractionalOrder {
public:
    explicit FractionalOrder(double value);

    double value() const noexcept { return value_; }
    bool is_integer() const noexcept;
    /// Smallest integer strictly greater than the order (for integers, the order itself).
    int ceiling() const noexcept;

    /// Orders admitted by cosine-normalized Riesz operators: |cos(alpha pi/2)| > 1e-8.
    bool riesz_admissible() const noexcept;
    /// Orders admitted by the quantum Riesz operator: 1 < alpha <= 2.
    bool quantum_admissible() const noexcept;

private:
    double value_;
};

/// Throws NonFiniteError if any sample is NaN/Inf.
void require_finite(std::span<const complex> values, const char* what);

/// Maximum of |f| over the first and last node, relative to max|f|
/// (0 for the zero function).
double relative_end_magnitude(const GridFunction& f);

/// CSV with header `x,re,im`, one row per node, "%.12e" formatting.
void write_csv(const GridFunction& f, std::ostream& out);
/// Parses the CSV written by write_csv. The x column must be uniform.
GridFunction read_csv(std::istream& in);

/// "%.12e" formatting used by every text artifact.
std::string format_number(double v);

}  // namespace rieszwell
