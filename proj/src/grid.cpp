#include "rieszwell/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "rieszwell/errors.hpp"

namespace rieszwell {

UniformGrid::UniformGrid(double x_min, double dx, std::size_t count)
    : x_min_(x_min), dx_(dx), count_(count) {
    if (!std::isfinite(x_min) || !std::isfinite(dx)) {
        throw NonFiniteError("grid: non-finite origin or spacing");
    }
    if (!(dx > 0.0)) {
        throw DomainError("grid: spacing must be positive");
    }
    if (count < min_count) {
        throw DomainError("grid: at least " + std::to_string(min_count) + " nodes required, got " +
                          std::to_string(count));
    }
}

UniformGrid UniformGrid::from_bounds(double lo, double hi, std::size_t count) {
    if (!(hi > lo)) {
        throw DomainError("grid: upper bound must exceed lower bound");
    }
    if (count < min_count) {
        throw DomainError("grid: at least " + std::to_string(min_count) + " nodes required");
    }
    return UniformGrid(lo, (hi - lo) / static_cast<double>(count - 1), count);
}

UniformGrid UniformGrid::with_spacing(double lo, double hi, double dx) {
    if (!(hi > lo) || !(dx > 0.0)) {
        throw DomainError("grid: need hi > lo and dx > 0");
    }
    const auto cells = static_cast<std::size_t>(std::llround((hi - lo) / dx));
    return UniformGrid(lo, dx, cells + 1);
}

std::size_t UniformGrid::nearest_index(double x) const noexcept {
    const double k = std::round((x - x_min_) / dx_);
    if (!(k > 0.0)) {
        return 0;
    }
    return std::min(static_cast<std::size_t>(k), count_ - 1);
}

UniformGrid UniformGrid::subgrid(std::size_t first, std::size_t n) const {
    if (first + n > count_) {
        throw DomainError("grid: sub-grid exceeds parent grid");
    }
    return UniformGrid(x(first), dx_, n);
}

bool UniformGrid::same_nodes(const UniformGrid& other) const noexcept {
    return count_ == other.count_ && x_min_ == other.x_min_ && dx_ == other.dx_;
}

void require_finite(std::span<const complex> values, const char* what) {
    for (const auto& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw NonFiniteError(std::string(what) + ": non-finite value");
        }
    }
}

GridFunction::GridFunction(UniformGrid grid, std::vector<complex> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.count()) {
        throw DomainError("grid function: " + std::to_string(values_.size()) + " values for " +
                          std::to_string(grid_.count()) + " nodes");
    }
    require_finite(values_, "grid function");
}

GridFunction::GridFunction(UniformGrid grid) : grid_(grid), values_(grid.count()) {}

GridFunction GridFunction::sample(const UniformGrid& grid,
                                  const std::function<complex(double)>& f) {
    std::vector<complex> v(grid.count());
    for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] = f(grid.x(k));
    }
    return GridFunction(grid, std::move(v));
}

GridFunction GridFunction::sample_real(const UniformGrid& grid,
                                       const std::function<double(double)>& f) {
    std::vector<complex> v(grid.count());
    for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] = f(grid.x(k));
    }
    return GridFunction(grid, std::move(v));
}

double GridFunction::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : values_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

GridFunction GridFunction::restrict(std::size_t first, std::size_t n) const {
    const UniformGrid sub = grid_.subgrid(first, n);
    return GridFunction(sub, std::vector<complex>(values_.begin() + static_cast<std::ptrdiff_t>(first),
                                                  values_.begin() + static_cast<std::ptrdiff_t>(first + n)));
}

GridFunction GridFunction::scaled(complex factor) const {
    std::vector<complex> v(values_);
    for (auto& x : v) {
        x *= factor;
    }
    return GridFunction(grid_, std::move(v));
}

GridFunction GridFunction::plus(const GridFunction& other, complex factor) const {
    if (!grid_.same_nodes(other.grid_)) {
        throw DomainError("grid function: operands live on different grids");
    }
    std::vector<complex> v(values_);
    for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] += factor * other.values_[k];
    }
    return GridFunction(grid_, std::move(v));
}

double SpectralDensity::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : values) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

FractionalOrder::FractionalOrder(double value) : value_(value) {
    if (!std::isfinite(value)) {
        throw NonFiniteError("fractional order: non-finite");
    }
    if (!(value > 0.0)) {
        throw DomainError("fractional order must be positive, got " + format_number(value));
    }
}

bool FractionalOrder::is_integer() const noexcept { return value_ == std::floor(value_); }

int FractionalOrder::ceiling() const noexcept {
    if (is_integer()) {
        return static_cast<int>(value_);
    }
    return static_cast<int>(std::floor(value_)) + 1;
}

bool FractionalOrder::riesz_admissible() const noexcept {
    return std::abs(std::cos(value_ * M_PI / 2.0)) > 1e-8;
}

bool FractionalOrder::quantum_admissible() const noexcept {
    return value_ > 1.0 && value_ <= 2.0;
}

double relative_end_magnitude(const GridFunction& f) {
    const double peak = f.max_abs();
    if (peak == 0.0) {
        return 0.0;
    }
    return std::max(std::abs(f[0]), std::abs(f[f.size() - 1])) / peak;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

void write_csv(const GridFunction& f, std::ostream& out) {
    out << "x,re,im\n";
    for (std::size_t k = 0; k < f.size(); ++k) {
        out << format_number(f.x(k)) << ',' << format_number(f[k].real()) << ','
            << format_number(f[k].imag()) << '\n';
    }
}

GridFunction read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw DomainError("csv: empty input");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "x,re,im") {
        throw DomainError("csv: expected header 'x,re,im', got '" + line + "'");
    }
    std::vector<double> xs;
    std::vector<complex> vs;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::istringstream ls(line);
        std::string a, b, c;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c)) {
            throw DomainError("csv: row " + std::to_string(row) + " needs three columns");
        }
        try {
            std::size_t pa = 0, pb = 0, pc = 0;
            const double x = std::stod(a, &pa);
            const double re = std::stod(b, &pb);
            const double im = std::stod(c, &pc);
            if (pa != a.size() || pb != b.size() || pc != c.size()) {
                throw std::invalid_argument("trailing characters");
            }
            xs.push_back(x);
            vs.emplace_back(re, im);
        } catch (const std::logic_error&) {
            throw DomainError("csv: row " + std::to_string(row) + " is not numeric");
        }
    }
    if (xs.size() < UniformGrid::min_count) {
        throw DomainError("csv: at least " + std::to_string(UniformGrid::min_count) + " rows required");
    }
    const double dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    if (!(dx > 0.0)) {
        throw DomainError("csv: x column must be increasing");
    }
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double expected = xs.front() + static_cast<double>(k) * dx;
        if (std::abs(xs[k] - expected) > 1e-9 * std::max(1.0, std::abs(expected)) + 1e-6 * dx) {
            throw DomainError("csv: x column is not uniform at row " + std::to_string(k + 2));
        }
    }
    return GridFunction(UniformGrid(xs.front(), dx, xs.size()), std::move(vs));
}

}  // namespace rieszwell
