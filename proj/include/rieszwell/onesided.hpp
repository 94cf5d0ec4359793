#pragma once

#include <span>
#include <vector>

#include "rieszwell/grid.hpp"

namespace rieszwell {

enum class OperatorSide { FromLeft, FromRight };

enum class DerivativeKind { RiemannLiouville, Caputo };

/// How the grid edge on the integration side is interpreted.
///   Weyl:   the edge stands in for -inf (left) or +inf (right). f must have
///           decayed there; outputs are trimmed by the stencil half-width.
///   Finite: the edge is a genuine terminal a (left) or b (right) with
///           arbitrary boundary data; one-sided stencils keep every node.
enum class Terminal { Weyl, Finite };

struct OneSidedOptions {
    Terminal terminal = Terminal::Weyl;
    /// Weyl mode rejects f whose magnitude at the terminal edge exceeds this
    /// fraction of max|f|.
    double decay_tolerance = 1e-8;
};

/// Finite-difference weights for the m-th derivative at 0 from samples at
/// `offsets` (in units of the grid spacing).
std::vector<double> fd_weights(int m, std::span<const double> offsets);

/// Half-width of the fourth-order central stencil for the n-th derivative.
int central_half_width(int n);

/// n-th classical derivative, fourth order. Weyl: central stencils, output on
/// nodes [p, count-1-p]. Finite: one-sided stencils near both edges, all nodes.
GridFunction classical_derivative(const GridFunction& f, int n, Terminal terminal = Terminal::Weyl);

/// Riemann-Liouville (Weyl) fractional integral of order q > 0 on every node,
/// terminal at the grid edge on the integration side.
GridFunction fractional_integral(const GridFunction& f, double q, OperatorSide side,
                                 const OneSidedOptions& options = {});

/// Riemann-Liouville or Caputo derivative of order q > 0. Integer q reduces to
/// (+-1)^q times the classical derivative.
GridFunction fractional_derivative(const GridFunction& f, double q, OperatorSide side,
                                   DerivativeKind kind, const OneSidedOptions& options = {});

/// RL minus Caputo for the left operator with terminal a_point:
/// sum_{k<n} (x-a)^(k-q) f^(k)(a+) / Gamma(k-q+1), on the nodes strictly right of a_point.
/// a_point must coincide with a grid node.
GridFunction caputo_rl_gap(const GridFunction& f, double q, double a_point);

}  // namespace rieszwell
