#include "nodes1d.hpp"

#include <cmath>

namespace normesh {

namespace {

void check_finite(double x, const char* what) {
    if (!std::isfinite(x)) fail(ErrorCode::InvalidInterval, std::string(what) + " is not finite");
}

}  // namespace

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid_argument";
        case ErrorCode::InvalidInterval: return "invalid_interval";
        case ErrorCode::InvalidAngle: return "invalid_angle";
        case ErrorCode::InvalidFactor: return "invalid_factor";
        case ErrorCode::ParameterValidation: return "parameter_validation";
        case ErrorCode::DomainError: return "domain_error";
        case ErrorCode::UnsupportedKind: return "unsupported_kind";
        case ErrorCode::ScalingError: return "scaling_error";
        case ErrorCode::DeterminingSetViolation: return "determining_set_violation";
        case ErrorCode::ExtractionFailure: return "extraction_failure";
        case ErrorCode::NumericalError: return "numerical_error";
        case ErrorCode::JsonError: return "json_error";
        case ErrorCode::IoError: return "io_error";
        case ErrorCode::InternalError: return "internal_error";
    }
    return "unknown";
}

const char* node_family_name(NodeFamily family) {
    switch (family) {
        case NodeFamily::Lobatto: return "lobatto";
        case NodeFamily::ChebZeros: return "zeros";
        case NodeFamily::Subperiodic: return "subperiodic";
    }
    return "unknown";
}

Interval::Interval(double a_, double b_) : a(a_), b(b_) {
    check_finite(a, "interval endpoint a");
    check_finite(b, "interval endpoint b");
    if (!(b - a > 0.0))
        fail(ErrorCode::InvalidInterval, "interval [" + std::to_string(a) + ", " + std::to_string(b) + "] is degenerate");
}

AngularInterval::AngularInterval(double u_, double v_) : u(u_), v(v_), kind(AngularKind::Subperiodic) {
    if (!std::isfinite(u) || !std::isfinite(v))
        fail(ErrorCode::InvalidAngle, "angular interval endpoint is not finite");
    const double len = v - u;
    if (!(len > 0.0)) fail(ErrorCode::InvalidAngle, "angular interval has non-positive length");
    if (len > 2.0 * kPi + 1e-12)
        fail(ErrorCode::InvalidAngle, "angular interval longer than the period 2*pi");
    kind = (len >= 2.0 * kPi - 1e-12) ? AngularKind::Periodic : AngularKind::Subperiodic;
}

double AngularInterval::semi_angle() const {
    return kind == AngularKind::Periodic ? kPi : 0.5 * (v - u);
}

// Both classical families are generated through the sine form
//   cos(j*pi/p) = sin((p - 2j)*pi/(2p)),
// which makes the node sets exactly symmetric about the interval midpoint
// (the argument negates bit-exactly under j -> p - j) and pins the Lobatto
// endpoints to a and b.

NodeSet1D chebyshev_lobatto(int nu, const Interval& iv) {
    if (nu < 1) fail(ErrorCode::InvalidArgument, "chebyshev_lobatto requires nu >= 1");
    const double mid = iv.midpoint();
    const double half = 0.5 * iv.length();
    const double step = kPi / (2.0 * nu);
    NodeSet1D out{{}, NodeFamily::Lobatto, nu};
    out.nodes.resize(static_cast<size_t>(nu) + 1);
    for (int k = 0; k <= nu; ++k) out.nodes[static_cast<size_t>(k)] = mid + half * std::sin((2 * k - nu) * step);
    out.nodes.front() = iv.a;
    out.nodes.back() = iv.b;
    return out;
}

NodeSet1D chebyshev_zeros(int nu, const Interval& iv) {
    if (nu < 0) fail(ErrorCode::InvalidArgument, "chebyshev_zeros requires nu >= 0");
    const double mid = iv.midpoint();
    const double half = 0.5 * iv.length();
    const double step = kPi / (2.0 * (nu + 1));
    NodeSet1D out{{}, NodeFamily::ChebZeros, nu};
    out.nodes.resize(static_cast<size_t>(nu) + 1);
    for (int k = 0; k <= nu; ++k) out.nodes[static_cast<size_t>(k)] = mid + half * std::sin((2 * k - nu) * step);
    return out;
}

double psi_map(double omega, double s) {
    if (!std::isfinite(omega) || !(omega > 0.0) || omega > kPi + 1e-15)
        fail(ErrorCode::InvalidAngle, "psi_map requires omega in (0, pi]");
    if (!std::isfinite(s) || std::abs(s) > 1.0 + 1e-14)
        fail(ErrorCode::InvalidArgument, "psi_map requires |s| <= 1");
    if (s > 1.0) s = 1.0;
    if (s < -1.0) s = -1.0;
    return 2.0 * std::asin(std::sin(0.5 * omega) * s);
}

NodeSet1D subperiodic_angles(int nu, const AngularInterval& aiv) {
    if (nu < 1) fail(ErrorCode::InvalidArgument, "subperiodic_angles requires nu >= 1");
    const double omega = aiv.semi_angle();
    const double center = aiv.center();
    const Interval unit(-1.0, 1.0);
    const NodeSet1D base = chebyshev_zeros(2 * nu, unit);
    NodeSet1D out{{}, NodeFamily::Subperiodic, nu};
    out.nodes.resize(base.nodes.size());
    for (size_t k = 0; k < base.nodes.size(); ++k) out.nodes[k] = psi_map(omega, base.nodes[k]) + center;
    return out;
}

}  // namespace normesh
