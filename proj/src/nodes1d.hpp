#pragma once

#include <string>
#include <vector>

#include "errors.hpp"

namespace normesh {

inline constexpr double kPi = 3.14159265358979323846;

/// Closed interval [a, b] of an algebraic (non-angular) variable.
struct Interval {
    double a;
    double b;

    Interval(double a_, double b_);
    double length() const { return b - a; }
    double midpoint() const { return 0.5 * (a + b); }
};

enum class AngularKind { Periodic, Subperiodic };

/// Angular range [u, v] in radians. A range whose length equals 2*pi within
/// 1e-12 is Periodic; anything shorter is Subperiodic. Lengths above 2*pi
/// are rejected.
struct AngularInterval {
    double u;
    double v;
    AngularKind kind;

    AngularInterval(double u_, double v_);
    double length() const { return v - u; }
    double center() const { return 0.5 * (u + v); }
    /// Semi-angle omega = (v - u)/2, snapped to exactly pi for periodic ranges.
    double semi_angle() const;
};

enum class NodeFamily { Lobatto, ChebZeros, Subperiodic };

const char* node_family_name(NodeFamily family);

struct NodeSet1D {
    std::vector<double> nodes;  // strictly increasing
    NodeFamily family;
    int nu;

    size_t count() const { return nodes.size(); }
};

/// Chebyshev-Lobatto nodes of degree nu (nu + 1 points, endpoints included).
NodeSet1D chebyshev_lobatto(int nu, const Interval& iv);

/// Zeros of T_{nu+1} mapped to [a, b] (nu + 1 points, all interior).
NodeSet1D chebyshev_zeros(int nu, const Interval& iv);

/// psi_omega(s) = 2 asin(sin(omega/2) s), the increasing odd map taking
/// [-1, 1] onto [-omega, omega]. Requires omega in (0, pi] and |s| <= 1.
double psi_map(double omega, double s);

/// Subperiodic angular nodes: psi_omega applied to the zeros of T_{2nu+1},
/// shifted to the interval center. 2*nu + 1 angles, strictly inside (u, v)
/// for subperiodic ranges and equally spaced for periodic ones.
NodeSet1D subperiodic_angles(int nu, const AngularInterval& aiv);

}  // namespace normesh
