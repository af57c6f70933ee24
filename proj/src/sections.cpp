#include "sections.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace normesh {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

[[noreturn]] void bad_param(const std::string& kind, const std::string& msg) {
    fail(ErrorCode::ParameterValidation, kind + ": " + msg);
}

double norm2(const double* x) { return std::sqrt(x[0] * x[0] + x[1] * x[1]); }
double norm3(const double* x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

/// Largest slack of ang (mod 2*pi) against [lo, hi].
double angle_range_slack(double ang, double lo, double hi) {
    double best = -1e300;
    for (double cand : {ang - kTwoPi, ang, ang + kTwoPi}) best = std::max(best, std::min(cand - lo, hi - cand));
    return best;
}

struct ParamReader {
    const std::string& kind;
    const Params& given;
    Params resolved;
    std::vector<std::string> allowed;

    ParamReader(const std::string& kind_, const Params& given_) : kind(kind_), given(given_) {}

    double scalar(const std::string& name, std::optional<double> def = std::nullopt) {
        allowed.push_back(name);
        auto it = given.find(name);
        if (it == given.end()) {
            if (!def) bad_param(kind, "missing required parameter '" + name + "'");
            resolved[name] = *def;
            return *def;
        }
        const double* v = std::get_if<double>(&it->second);
        if (!v) bad_param(kind, "parameter '" + name + "' must be a scalar");
        if (!std::isfinite(*v)) bad_param(kind, "parameter '" + name + "' is not finite");
        resolved[name] = *v;
        return *v;
    }

    std::vector<double> vec(const std::string& name, size_t dim, std::optional<std::vector<double>> def = std::nullopt) {
        allowed.push_back(name);
        auto it = given.find(name);
        if (it == given.end()) {
            if (!def) bad_param(kind, "missing required parameter '" + name + "'");
            resolved[name] = *def;
            return *def;
        }
        const auto* v = std::get_if<std::vector<double>>(&it->second);
        if (!v || v->size() != dim)
            bad_param(kind, "parameter '" + name + "' must be a vector of length " + std::to_string(dim));
        for (double c : *v)
            if (!std::isfinite(c)) bad_param(kind, "parameter '" + name + "' has a non-finite component");
        resolved[name] = *v;
        return *v;
    }

    std::string str(const std::string& name, const std::string& def) {
        allowed.push_back(name);
        auto it = given.find(name);
        if (it == given.end()) {
            resolved[name] = def;
            return def;
        }
        const auto* v = std::get_if<std::string>(&it->second);
        if (!v) bad_param(kind, "parameter '" + name + "' must be a string");
        resolved[name] = *v;
        return *v;
    }

    void finish() {
        for (const auto& [key, value] : given) {
            (void)value;
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
                bad_param(kind, "unknown parameter '" + key + "'");
        }
    }
};

Vec2 to_vec2(const std::vector<double>& v) { return Vec2{v[0], v[1]}; }

}  // namespace

struct SectionBuilder {
    Section s;

    SectionBuilder(const std::string& kind, KindId id) {
        s.kind_ = kind;
        s.id_ = id;
    }

    void algebraic(double a, double b) { s.algebraic_.emplace_back(a, b); }
    void angular(double u, double v) { s.angular_.emplace_back(u, v); }

    void blend2(const Arc2& p1, const Arc2& p2) {
        s.engine_ = Section::Engine::Blend2;
        s.p1_ = p1;
        s.p2_ = p2;
        s.ambient_ = 2;
    }
    void rot_blend(const Arc2& p1, const Arc2& p2) {
        s.engine_ = Section::Engine::RotBlend;
        s.p1_ = p1;
        s.p2_ = p2;
        s.ambient_ = 3;
    }
    void torus_surface(double R, double r) {
        s.engine_ = Section::Engine::TorusSurf;
        s.R_ = R;
        s.r_ = r;
        s.ambient_ = 3;
    }
    void lune(double w1, double w2) {
        s.engine_ = Section::Engine::Lune;
        s.omega1_ = w1;
        s.omega2_ = w2;
        s.lune_rho_ = std::sin(w2) / std::sin(w1);
        s.lune_c2_ = std::cos(w2) - s.lune_rho_ * std::cos(w1);
        s.ambient_ = 2;
    }
    void rot_lune(double w1, double w2) {
        lune(w1, w2);
        s.engine_ = Section::Engine::RotLune;
        s.ambient_ = 3;
    }
    void pyramid(const std::vector<double>& v) {
        s.engine_ = Section::Engine::Pyramid;
        s.apex_[0] = v[0];
        s.apex_[1] = v[1];
        s.apex_[2] = v[2];
        s.ambient_ = 3;
    }
    void circle_arc(double r) {
        s.engine_ = Section::Engine::CircleArc;
        s.r_ = r;
        s.ambient_ = 2;
    }
    void identity1d() {
        s.engine_ = Section::Engine::Identity1D;
        s.ambient_ = 1;
    }
};

namespace {

// Shared arc shapes. All angles are radians; canonical poses follow the
// symmetric placements of the standard catalog (sector about +x, segment and
// caps about the vertical axis).
const Arc2 kUnitArc{{1, 0}, {0, 1}, {0, 0}};            // (cos t, sin t)
const Arc2 kUnitArcMirrorX{{-1, 0}, {0, 1}, {0, 0}};    // (-cos t, sin t)
const Arc2 kOrigin{{0, 0}, {0, 0}, {0, 0}};

Arc2 scaled_arc(double r) { return Arc2{{r, 0}, {0, r}, {0, 0}}; }

void read_motion(ParamReader& p, Section& s, int ambient, bool& has_motion, double* rot, double* shift) {
    has_motion = false;
    std::vector<double> zero(static_cast<size_t>(ambient), 0.0);
    std::vector<double> sh = p.vec("shift", static_cast<size_t>(ambient), zero);
    double angle = p.scalar("rot_angle", 0.0);
    std::vector<double> axis =
        ambient == 3 ? p.vec("rot_axis", 3, std::vector<double>{0.0, 0.0, 1.0}) : std::vector<double>{};
    for (int i = 0; i < ambient; ++i) shift[i] = sh[static_cast<size_t>(i)];
    bool shifted = std::any_of(sh.begin(), sh.end(), [](double v) { return v != 0.0; });
    if (angle == 0.0 && !shifted) return;
    has_motion = true;
    if (ambient <= 2) {
        const double c = std::cos(angle), si = std::sin(angle);
        rot[0] = c;
        rot[1] = -si;
        rot[3] = si;
        rot[4] = c;
    } else {
        double len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
        if (!(len > 0)) bad_param(s.kind(), "rot_axis must be nonzero");
        const double ux = axis[0] / len, uy = axis[1] / len, uz = axis[2] / len;
        const double c = std::cos(angle), si = std::sin(angle), omc = 1.0 - c;
        rot[0] = c + ux * ux * omc;
        rot[1] = ux * uy * omc - uz * si;
        rot[2] = ux * uz * omc + uy * si;
        rot[3] = uy * ux * omc + uz * si;
        rot[4] = c + uy * uy * omc;
        rot[5] = uy * uz * omc - ux * si;
        rot[6] = uz * ux * omc - uy * si;
        rot[7] = uz * uy * omc + ux * si;
        rot[8] = c + uz * uz * omc;
    }
}

}  // namespace

std::string Signature::constant_class() const {
    const int ea = d1 + d2;
    const int eb = d3;
    std::ostringstream os;
    auto factor = [&os](const char* base, int e, bool& first) {
        if (e == 0) return;
        if (!first) os << "*";
        os << base;
        if (e > 1) os << "^" << e;
        first = false;
    };
    bool first = true;
    factor("alpha", ea, first);
    factor("beta", eb, first);
    if (first) os << "1";
    return os.str();
}

std::string Signature::bound_shape() const {
    std::ostringstream os;
    bool first = true;
    auto factor = [&os, &first](const char* base, int e) {
        if (e == 0) return;
        if (!first) os << "*";
        os << base;
        if (e > 1) os << "^" << e;
        first = false;
    };
    factor("N1", d1);
    factor("N2", d2 + d3);
    if (first) os << "1";
    return os.str();
}

double Signature::constant(double m) const {
    if (!(m > 1.0)) fail(ErrorCode::InvalidFactor, "oversampling factor m must exceed 1");
    const double alpha = 1.0 / std::cos(kPi / (2.0 * m));
    const double beta = m / (m - 1.0);
    return std::pow(alpha, d1 + d2) * std::pow(beta, d3);
}

long long Signature::cardinality_bound(long long N1, long long N2) const {
    long long out = 1;
    for (int i = 0; i < d1; ++i) out *= N1;
    for (int i = 0; i < d2 + d3; ++i) out *= N2;
    return out;
}

Section make_section(const std::string& kind, const Params& params) { return Section::make(kind, params); }

Section Section::make(const std::string& kind, const Params& params) {
    const KindInfo* info = find_kind(kind);
    if (!info) fail(ErrorCode::ParameterValidation, "unknown section kind '" + kind + "'");
    ParamReader p(kind, params);

    auto id = [&]() -> KindId {
        static const std::map<std::string, KindId> ids = {
            {"interval", KindId::Interval},
            {"circle", KindId::Circle},
            {"circle_arc", KindId::CircleArc},
            {"disk", KindId::Disk},
            {"disk_annulus", KindId::DiskAnnulus},
            {"circular_sector", KindId::CircularSector},
            {"circular_segment", KindId::CircularSegment},
            {"circular_zone", KindId::CircularZone},
            {"circular_lens", KindId::CircularLens},
            {"generic_blending", KindId::GenericBlending},
            {"planar_lune", KindId::PlanarLune},
            {"sphere", KindId::Sphere},
            {"torus", KindId::Torus},
            {"spherical_rectangle", KindId::SphericalRectangle},
            {"spherical_lune_surface", KindId::SphericalLuneSurface},
            {"spherical_cap_surface", KindId::SphericalCapSurface},
            {"spherical_collar", KindId::SphericalCollar},
            {"toroidal_rectangle", KindId::ToroidalRectangle},
            {"toroidal_cap_surface", KindId::ToroidalCapSurface},
            {"toroidal_collar", KindId::ToroidalCollar},
            {"toroidal_slice_surface", KindId::ToroidalSliceSurface},
            {"ball", KindId::Ball},
            {"solid_torus", KindId::SolidTorus},
            {"spherical_shell", KindId::SphericalShell},
            {"solid_cap", KindId::SolidCap},
            {"spherical_zone_solid", KindId::SphericalZoneSolid},
            {"spherical_slice", KindId::SphericalSlice},
            {"spherical_cone", KindId::SphericalCone},
            {"spherical_lens_solid", KindId::SphericalLensSolid},
            {"toroidal_cap_solid", KindId::ToroidalCapSolid},
            {"toroidal_zone_solid", KindId::ToroidalZoneSolid},
            {"toroidal_slice_solid", KindId::ToroidalSliceSolid},
            {"solid_lune", KindId::SolidLune},
            {"spherical_square_pyramid", KindId::SphericalSquarePyramid},
        };
        return ids.at(kind);
    }();

    SectionBuilder b(kind, id);

    switch (id) {
        case KindId::Interval: {
            const double a = p.scalar("a", -1.0), v = p.scalar("b", 1.0);
            if (!(v > a)) bad_param(kind, "requires a < b");
            b.identity1d();
            b.algebraic(a, v);
            break;
        }
        case KindId::Circle: {
            const double r = p.scalar("r", 1.0);
            if (!(r > 0)) bad_param(kind, "radius r must be positive");
            b.circle_arc(r);
            b.angular(-kPi, kPi);
            break;
        }
        case KindId::CircleArc: {
            const double r = p.scalar("r", 1.0), w = p.scalar("omega");
            if (!(r > 0)) bad_param(kind, "radius r must be positive");
            if (!(w > 0 && w < kPi)) bad_param(kind, "semi-angle omega must lie in (0, pi)");
            b.circle_arc(r);
            b.angular(-w, w);
            break;
        }
        case KindId::Disk: {
            const double r = p.scalar("r", 1.0);
            if (!(r > 0)) bad_param(kind, "radius r must be positive");
            b.blend2(scaled_arc(r), kOrigin);
            b.algebraic(0, 1);
            b.angular(-kPi, kPi);
            break;
        }
        case KindId::DiskAnnulus: {
            const double ri = p.scalar("r_in"), ro = p.scalar("r_out");
            if (!(ri > 0 && ro > ri)) bad_param(kind, "requires 0 < r_in < r_out");
            b.blend2(scaled_arc(ro), scaled_arc(ri));
            b.algebraic(0, 1);
            b.angular(-kPi, kPi);
            break;
        }
        case KindId::CircularSector: {
            const double r = p.scalar("r", 1.0), w = p.scalar("omega");
            if (!(r > 0)) bad_param(kind, "radius r must be positive");
            if (!(w > 0 && w < kPi)) bad_param(kind, "semi-angle omega must lie in (0, pi)");
            b.blend2(scaled_arc(r), kOrigin);
            b.algebraic(0, 1);
            b.angular(-w, w);
            break;
        }
        case KindId::CircularSegment: {
            const double w = p.scalar("omega");
            if (!(w > 0 && w < kPi)) bad_param(kind, "semi-angle omega must lie in (0, pi)");
            const std::string rep = p.str("representation", "arc_segment");
            const double y0 = std::cos(w);  // chord height sin(pi/2 - omega)
            Arc2 p2;
            double lo = kPi / 2 - w, hi = kPi / 2 + w;
            if (rep == "arc_segment") {
                p2 = Arc2{{1, 0}, {0, 0}, {0, y0}};  // (cos t, y0)
            } else if (rep == "arc_point") {
                p2 = Arc2{{0, 0}, {0, 0}, {0, y0}};  // fixed point (0, y0)
            } else if (rep == "arc_arc_half") {
                p2 = kUnitArcMirrorX;
                hi = kPi / 2;
            } else if (rep == "arc_arc_full") {
                p2 = kUnitArcMirrorX;
            } else {
                bad_param(kind, "representation must be one of arc_segment, arc_point, arc_arc_half, arc_arc_full");
            }
            b.blend2(kUnitArc, p2);
            b.algebraic(0, 1);
            b.angular(lo, hi);
            break;
        }
        case KindId::CircularZone: {
            const double h1 = p.scalar("h1"), h2 = p.scalar("h2");
            if (!(h1 > -1 && h2 < 1 && h1 < h2)) bad_param(kind, "requires -1 < h1 < h2 < 1");
            b.blend2(kUnitArc, kUnitArcMirrorX);
            b.algebraic(0, 1);
            b.angular(std::asin(h1), std::asin(h2));
            break;
        }
        case KindId::CircularLens: {
            const double w = p.scalar("omega");
            if (!(w > 0 && w < kPi / 2)) bad_param(kind, "semi-angle omega must lie in (0, pi/2)");
            const double d = std::cos(w);
            // arcs of the two unit circles centered at (0, -d) and (0, +d)
            b.blend2(Arc2{{0, 1}, {1, 0}, {0, -d}}, Arc2{{0, -1}, {1, 0}, {0, d}});
            b.algebraic(0, 1);
            b.angular(-w, w);
            break;
        }
        case KindId::GenericBlending: {
            Arc2 a1{to_vec2(p.vec("A1", 2)), to_vec2(p.vec("B1", 2)), to_vec2(p.vec("C1", 2))};
            Arc2 a2{to_vec2(p.vec("A2", 2)), to_vec2(p.vec("B2", 2)), to_vec2(p.vec("C2", 2))};
            const double w1 = p.scalar("omega1"), w2 = p.scalar("omega2");
            if (!(w2 > w1)) bad_param(kind, "requires omega1 < omega2");
            if (!(w2 - w1 < kTwoPi)) bad_param(kind, "blending range must be shorter than 2*pi");
            auto arc_null = [](const Arc2& a) {
                return a.A.x == 0 && a.A.y == 0 && a.B.x == 0 && a.B.y == 0;
            };
            if (arc_null(a1) && arc_null(a2)) bad_param(kind, "at least one arc needs nonzero (A, B)");
            b.blend2(a1, a2);
            b.algebraic(0, 1);
            b.angular(w1, w2);
            break;
        }
        case KindId::PlanarLune: {
            const double w1 = p.scalar("omega1"), w2 = p.scalar("omega2");
            if (!(w1 > 0 && w1 < w2 && w2 < kPi)) bad_param(kind, "requires 0 < omega1 < omega2 < pi");
            b.lune(w1, w2);
            b.angular(-w1, w1);
            b.angular(0, w2);
            break;
        }
        case KindId::Sphere: {
            const double r = p.scalar("r", 1.0);
            if (!(r > 0)) bad_param(kind, "radius r must be positive");
            b.torus_surface(0.0, r);
            b.angular(-kPi, kPi);
            b.angular(-kPi, kPi);
            break;
        }
        case KindId::Torus: {
            const double R = p.scalar("R"), r = p.scalar("r");
            if (!(R > r && r > 0)) bad_param(kind, "requires R > r > 0");
            b.torus_surface(R, r);
            b.angular(-kPi, kPi);
            b.angular(-kPi, kPi);
            break;
        }
        case KindId::SphericalRectangle: {
            const double r = p.scalar("r", 1.0);
            const double la = p.scalar("lat1"), lb = p.scalar("lat2");
            const double lo = p.scalar("lon1"), hi = p.scalar("lon2");
            if (!(r > 0)) bad_param(kind, "radius r must be positive");
            if (!(la >= -kPi / 2 && lb <= kPi / 2 && la < lb))
                bad_param(kind, "latitude range must satisfy -pi/2 <= lat1 < lat2 <= pi/2");
            if (!(lo >= -kPi && hi <= kPi && lo < hi && hi - lo < kTwoPi))
                bad_param(kind, "longitude range must be a strict subinterval of [-pi, pi]");
            b.torus_surface(0.0, r);
            b.angular(la, lb);
            b.angular(lo, hi);
            break;
        }
        case KindId::SphericalLuneSurface: {
            const double r = p.scalar("r", 1.0);
            const double lo = p.scalar("lon1"), hi = p.scalar("lon2");
            if (!(r > 0)) bad_param(kind, "radius r must be positive");
            if (!(lo >= -kPi && hi <= kPi && lo < hi && hi - lo < kTwoPi))
                bad_param(kind, "longitude range must be a strict subinterval of [-pi, pi]");
            b.torus_surface(0.0, r);
            b.angular(-kPi / 2, kPi / 2);
            b.angular(lo, hi);
            break;
        }
        case KindId::SphericalCapSurface: {
            const double r = p.scalar("r", 1.0), w = p.scalar("omega");
            if (!(r > 0)) bad_param(kind, "radius r must be positive");
            if (!(w > 0 && w <= kPi / 2)) bad_param(kind, "cap semi-angle omega must lie in (0, pi/2]");
            b.torus_surface(0.0, r);
            b.angular(kPi / 2 - w, kPi / 2 + w);
            b.angular(-kPi, kPi);
            break;
        }
        case KindId::SphericalCollar: {
            const double r = p.scalar("r", 1.0);
            const double la = p.scalar("lat1"), lb = p.scalar("lat2");
            if (!(r > 0)) bad_param(kind, "radius r must be positive");
            if (!(la >= -kPi / 2 && lb <= kPi / 2 && la < lb))
                bad_param(kind, "latitude range must satisfy -pi/2 <= lat1 < lat2 <= pi/2");
            b.torus_surface(0.0, r);
            b.angular(la, lb);
            b.angular(-kPi, kPi);
            break;
        }
        case KindId::ToroidalRectangle: {
            const double R = p.scalar("R"), r = p.scalar("r");
            const double ta = p.scalar("theta1"), tb = p.scalar("theta2");
            const double lo = p.scalar("phi1"), hi = p.scalar("phi2");
            if (!(R > r && r > 0)) bad_param(kind, "requires R > r > 0");
            if (!(ta >= -kPi && tb <= kPi && ta < tb && tb - ta < kTwoPi))
                bad_param(kind, "poloidal range must be a strict subinterval of [-pi, pi]");
            if (!(lo >= -kPi && hi <= kPi && lo < hi && hi - lo < kTwoPi))
                bad_param(kind, "toroidal range must be a strict subinterval of [-pi, pi]");
            b.torus_surface(R, r);
            b.angular(ta, tb);
            b.angular(lo, hi);
            break;
        }
        case KindId::ToroidalCapSurface: {
            const double R = p.scalar("R"), r = p.scalar("r"), w = p.scalar("omega");
            if (!(R > r && r > 0)) bad_param(kind, "requires R > r > 0");
            if (!(w > 0 && w <= kPi / 2)) bad_param(kind, "cap semi-angle omega must lie in (0, pi/2]");
            b.torus_surface(R, r);
            b.angular(kPi / 2 - w, kPi / 2 + w);
            b.angular(-kPi, kPi);
            break;
        }
        case KindId::ToroidalCollar: {
            const double R = p.scalar("R"), r = p.scalar("r");
            const double ta = p.scalar("theta1"), tb = p.scalar("theta2");
            if (!(R > r && r > 0)) bad_param(kind, "requires R > r > 0");
            if (!(ta >= -kPi / 2 && tb <= kPi / 2 && ta < tb))
                bad_param(kind, "poloidal range must satisfy -pi/2 <= theta1 < theta2 <= pi/2");
            b.torus_surface(R, r);
            b.angular(ta, tb);
            b.angular(-kPi, kPi);
            break;
        }
        case KindId::ToroidalSliceSurface: {
            const double R = p.scalar("R"), r = p.scalar("r");
            const double lo = p.scalar("phi1"), hi = p.scalar("phi2");
            if (!(R > r && r > 0)) bad_param(kind, "requires R > r > 0");
            if (!(lo >= -kPi && hi <= kPi && lo < hi && hi - lo < kTwoPi))
                bad_param(kind, "toroidal range must be a strict subinterval of [-pi, pi]");
            b.torus_surface(R, r);
            b.angular(-kPi, kPi);
            b.angular(lo, hi);
            break;
        }
        case KindId::Ball: {
            const double r = p.scalar("r", 1.0);
            if (!(r > 0)) bad_param(kind, "radius r must be positive");
            b.rot_blend(scaled_arc(r), kOrigin);
            b.algebraic(0, 1);
            b.angular(-kPi, kPi);
            b.angular(-kPi, kPi);
            break;
        }
        case KindId::SolidTorus: {
            const double R = p.scalar("R"), r = p.scalar("r");
            if (!(R > r && r > 0)) bad_param(kind, "requires R > r > 0");
            b.rot_blend(Arc2{{r, 0}, {0, r}, {R, 0}}, Arc2{{0, 0}, {0, 0}, {R, 0}});
            b.algebraic(0, 1);
            b.angular(-kPi, kPi);
            b.angular(-kPi, kPi);
            break;
        }
        case KindId::SphericalShell: {
            const double ri = p.scalar("r_in"), ro = p.scalar("r_out");
            if (!(ri > 0 && ro > ri)) bad_param(kind, "requires 0 < r_in < r_out");
            b.rot_blend(scaled_arc(ro), scaled_arc(ri));
            b.algebraic(0, 1);
            b.angular(-kPi, kPi);
            b.angular(-kPi, kPi);
            break;
        }
        case KindId::SolidCap: {
            const double w = p.scalar("omega");
            if (!(w > 0 && w < kPi)) bad_param(kind, "cap semi-angle omega must lie in (0, pi)");
            const double z0 = std::cos(w);
            // rotate the arc-segment blending of the planar segment about its axis
            b.rot_blend(kUnitArc, Arc2{{1, 0}, {0, 0}, {0, z0}});
            b.algebraic(0, 1);
            b.angular(kPi / 2 - w, kPi / 2 + w);
            b.angular(-kPi, kPi);
            break;
        }
        case KindId::SphericalZoneSolid: {
            const double h1 = p.scalar("h1"), h2 = p.scalar("h2");
            if (!(h1 > -1 && h2 < 1 && h1 < h2)) bad_param(kind, "requires -1 < h1 < h2 < 1");
            b.rot_blend(kUnitArc, kUnitArcMirrorX);
            b.algebraic(0, 1);
            b.angular(std::asin(h1), std::asin(h2));
            b.angular(-kPi, kPi);
            break;
        }
        case KindId::SphericalSlice: {
            const double lo = p.scalar("phi1"), hi = p.scalar("phi2");
            if (!(hi > lo && hi - lo < kTwoPi)) bad_param(kind, "rotation range must satisfy 0 < phi2 - phi1 < 2*pi");
            // half disk (r >= 0) rotated by less than a full turn
            b.rot_blend(Arc2{{0, 1}, {1, 0}, {0, 0}}, kOrigin);
            b.algebraic(0, 1);
            b.angular(-kPi / 2, kPi / 2);
            b.angular(lo, hi);
            break;
        }
        case KindId::SphericalCone: {
            const double w = p.scalar("omega");
            if (!(w > 0 && w < kPi)) bad_param(kind, "cone semi-angle omega must lie in (0, pi)");
            b.rot_blend(Arc2{{0, 1}, {1, 0}, {0, 0}}, kOrigin);  // (sin t, cos t): angle from +z
            b.algebraic(0, 1);
            b.angular(-w, w);
            b.angular(-kPi, kPi);
            break;
        }
        case KindId::SphericalLensSolid: {
            const double w = p.scalar("omega");
            if (!(w > 0 && w < kPi / 2)) bad_param(kind, "lens semi-angle omega must lie in (0, pi/2)");
            const double d = std::cos(w);
            // (r, z) arcs of the two unit balls centered at z = -d and z = +d
            b.rot_blend(Arc2{{0, 1}, {1, 0}, {0, -d}}, Arc2{{0, -1}, {1, 0}, {0, d}});
            b.algebraic(0, 1);
            b.angular(-w, w);
            b.angular(-kPi, kPi);
            break;
        }
        case KindId::ToroidalCapSolid: {
            const double R = p.scalar("R"), r = p.scalar("r"), w = p.scalar("omega");
            if (!(R > r && r > 0)) bad_param(kind, "requires R > r > 0");
            if (!(w > 0 && w < kPi)) bad_param(kind, "cap semi-angle omega must lie in (0, pi)");
            const double z0 = r * std::cos(w);
            b.rot_blend(Arc2{{r, 0}, {0, r}, {R, 0}}, Arc2{{r, 0}, {0, 0}, {R, z0}});
            b.algebraic(0, 1);
            b.angular(kPi / 2 - w, kPi / 2 + w);
            b.angular(-kPi, kPi);
            break;
        }
        case KindId::ToroidalZoneSolid: {
            const double R = p.scalar("R"), r = p.scalar("r");
            const double h1 = p.scalar("h1"), h2 = p.scalar("h2");
            if (!(R > r && r > 0)) bad_param(kind, "requires R > r > 0");
            if (!(h1 > -r && h2 < r && h1 < h2)) bad_param(kind, "requires -r < h1 < h2 < r");
            b.rot_blend(Arc2{{r, 0}, {0, r}, {R, 0}}, Arc2{{-r, 0}, {0, r}, {R, 0}});
            b.algebraic(0, 1);
            b.angular(std::asin(h1 / r), std::asin(h2 / r));
            b.angular(-kPi, kPi);
            break;
        }
        case KindId::ToroidalSliceSolid: {
            const double R = p.scalar("R"), r = p.scalar("r");
            const double lo = p.scalar("phi1"), hi = p.scalar("phi2");
            if (!(R > r && r > 0)) bad_param(kind, "requires R > r > 0");
            if (!(hi > lo && hi - lo < kTwoPi)) bad_param(kind, "rotation range must satisfy 0 < phi2 - phi1 < 2*pi");
            b.rot_blend(Arc2{{r, 0}, {0, r}, {R, 0}}, Arc2{{0, 0}, {0, 0}, {R, 0}});
            b.algebraic(0, 1);
            b.angular(-kPi, kPi);
            b.angular(lo, hi);
            break;
        }
        case KindId::SolidLune: {
            const double w1 = p.scalar("omega1"), w2 = p.scalar("omega2");
            const double lo = p.scalar("phi1", 0.0), hi = p.scalar("phi2", kPi);
            if (!(w1 > 0 && w1 < w2 && w2 < kPi)) bad_param(kind, "requires 0 < omega1 < omega2 < pi");
            if (!(hi > lo && hi - lo <= kTwoPi + 1e-12))
                bad_param(kind, "rotation range must satisfy 0 < phi2 - phi1 <= 2*pi");
            b.rot_lune(w1, w2);
            b.angular(-w1, w1);
            b.angular(0, w2);
            b.angular(lo, hi);
            break;
        }
        case KindId::SphericalSquarePyramid: {
            const double la = p.scalar("lat1"), lb = p.scalar("lat2");
            const double lo = p.scalar("lon1"), hi = p.scalar("lon2");
            std::vector<double> V = p.vec("V", 3);
            if (!(la >= -kPi / 2 && lb <= kPi / 2 && la < lb))
                bad_param(kind, "latitude range must satisfy -pi/2 <= lat1 < lat2 <= pi/2");
            if (!(lo >= -kPi && hi <= kPi && lo < hi && hi - lo < kTwoPi))
                bad_param(kind, "longitude range must be a strict subinterval of [-pi, pi]");
            if (!(V[0] * V[0] + V[1] * V[1] + V[2] * V[2] < 1.0))
                bad_param(kind, "apex V must lie strictly inside the unit ball");
            b.pyramid(V);
            b.algebraic(0, 1);
            b.angular(la, lb);
            b.angular(lo, hi);
            break;
        }
    }

    read_motion(p, b.s, b.s.ambient_, b.s.has_motion_, b.s.rot_, b.s.shift_);
    p.finish();
    b.s.params_ = std::move(p.resolved);
    return std::move(b.s);
}

Signature Section::signature() const {
    Signature sig;
    sig.ambient_dim = ambient_;
    sig.d1 = static_cast<int>(algebraic_.size());
    for (const auto& a : angular_) (a.kind == AngularKind::Periodic ? sig.d2 : sig.d3) += 1;
    return sig;
}

void Section::apply_motion(double* x) const {
    if (has_motion_) {
        double y[3] = {0, 0, 0};
        const int d = ambient_;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) y[i] += rot_[i * 3 + j] * x[j];
        for (int i = 0; i < d; ++i) x[i] = y[i];
    }
    for (int i = 0; i < ambient_; ++i) x[i] += shift_[i];
}

void Section::invert_motion(const double* x, double* out) const {
    double t[3] = {0, 0, 0};
    const int d = ambient_;
    for (int i = 0; i < d; ++i) t[i] = x[i] - shift_[i];
    if (has_motion_) {
        for (int i = 0; i < d; ++i) {
            out[i] = 0;
            for (int j = 0; j < d; ++j) out[i] += rot_[j * 3 + i] * t[j];  // transpose
        }
    } else {
        for (int i = 0; i < d; ++i) out[i] = t[i];
    }
}

void Section::map_unchecked(const double* coords, double* out) const {
    switch (engine_) {
        case Engine::Identity1D:
            out[0] = coords[0];
            break;
        case Engine::CircleArc: {
            const double th = coords[0];
            out[0] = r_ * std::cos(th);
            out[1] = r_ * std::sin(th);
            break;
        }
        case Engine::Blend2: {
            const double t = coords[0], c = std::cos(coords[1]), s = std::sin(coords[1]);
            const double x1 = p1_.A.x * c + p1_.B.x * s + p1_.C.x;
            const double y1 = p1_.A.y * c + p1_.B.y * s + p1_.C.y;
            const double x2 = p2_.A.x * c + p2_.B.x * s + p2_.C.x;
            const double y2 = p2_.A.y * c + p2_.B.y * s + p2_.C.y;
            out[0] = t * x1 + (1 - t) * x2;
            out[1] = t * y1 + (1 - t) * y2;
            break;
        }
        case Engine::RotBlend: {
            const double t = coords[0], c = std::cos(coords[1]), s = std::sin(coords[1]);
            const double r = t * (p1_.A.x * c + p1_.B.x * s + p1_.C.x) + (1 - t) * (p2_.A.x * c + p2_.B.x * s + p2_.C.x);
            const double z = t * (p1_.A.y * c + p1_.B.y * s + p1_.C.y) + (1 - t) * (p2_.A.y * c + p2_.B.y * s + p2_.C.y);
            out[0] = r * std::cos(coords[2]);
            out[1] = r * std::sin(coords[2]);
            out[2] = z;
            break;
        }
        case Engine::Lune: {
            const double c1 = std::cos(coords[0]), s1 = std::sin(coords[0]);
            const double c2 = std::cos(coords[1]), s2 = std::sin(coords[1]);
            const double inv = 1.0 / std::sin(omega1_);
            out[0] = c2 + s2 * (c1 - std::cos(omega1_)) * inv;
            out[1] = s1 * s2 * inv;
            break;
        }
        case Engine::RotLune: {
            const double c1 = std::cos(coords[0]), s1 = std::sin(coords[0]);
            const double c2 = std::cos(coords[1]), s2 = std::sin(coords[1]);
            const double inv = 1.0 / std::sin(omega1_);
            const double z = c2 + s2 * (c1 - std::cos(omega1_)) * inv;  // along the axis of rotation
            const double r = s1 * s2 * inv;                             // signed distance from the axis
            out[0] = r * std::cos(coords[2]);
            out[1] = r * std::sin(coords[2]);
            out[2] = z;
            break;
        }
        case Engine::TorusSurf: {
            const double c1 = std::cos(coords[0]), s1 = std::sin(coords[0]);
            const double c2 = std::cos(coords[1]), s2 = std::sin(coords[1]);
            const double rad = R_ + r_ * c1;
            out[0] = rad * c2;
            out[1] = rad * s2;
            out[2] = r_ * s1;
            break;
        }
        case Engine::Pyramid: {
            const double t = coords[0];
            const double c1 = std::cos(coords[1]), s1 = std::sin(coords[1]);
            const double c2 = std::cos(coords[2]), s2 = std::sin(coords[2]);
            out[0] = t * c1 * c2 + (1 - t) * apex_[0];
            out[1] = t * c1 * s2 + (1 - t) * apex_[1];
            out[2] = t * s1 + (1 - t) * apex_[2];
            break;
        }
    }
    apply_motion(out);
}

std::vector<double> Section::evaluate_map(std::span<const double> coords) const {
    if (coords.size() != factor_count())
        fail(ErrorCode::DomainError, kind_ + ": expected " + std::to_string(factor_count()) + " coordinates, got " +
                                         std::to_string(coords.size()));
    size_t i = 0;
    for (const auto& iv : algebraic_) {
        const double tol = 1e-12 * (1.0 + std::abs(iv.a) + std::abs(iv.b));
        if (coords[i] < iv.a - tol || coords[i] > iv.b + tol)
            fail(ErrorCode::DomainError, kind_ + ": algebraic coordinate " + std::to_string(i) + " out of range");
        ++i;
    }
    for (const auto& av : angular_) {
        const double tol = 1e-12 * (1.0 + std::abs(av.u) + std::abs(av.v));
        if (coords[i] < av.u - tol || coords[i] > av.v + tol)
            fail(ErrorCode::DomainError, kind_ + ": angular coordinate " + std::to_string(i) + " out of range");
        ++i;
    }
    std::vector<double> out(static_cast<size_t>(ambient_));
    map_unchecked(coords.data(), out.data());
    return out;
}

bool Section::on_variety() const { return variety_degree() != 0; }

int Section::variety_degree() const {
    switch (id_) {
        case KindId::Circle:
        case KindId::CircleArc:
        case KindId::Sphere:
        case KindId::SphericalRectangle:
        case KindId::SphericalLuneSurface:
        case KindId::SphericalCapSurface:
        case KindId::SphericalCollar:
            return 2;
        case KindId::Torus:
        case KindId::ToroidalRectangle:
        case KindId::ToroidalCapSurface:
        case KindId::ToroidalCollar:
        case KindId::ToroidalSliceSurface:
            return 4;
        default:
            return 0;
    }
}

double Section::residual_scale() const {
    const double s = 1.0 + R_ + r_;
    return s * s * s * s;
}

double Section::membership_residual(std::span<const double> x) const {
    if (!on_variety())
        fail(ErrorCode::UnsupportedKind, kind_ + ": membership residual is defined only for surface sections");
    if (x.size() != static_cast<size_t>(ambient_))
        fail(ErrorCode::DomainError, kind_ + ": point dimension mismatch");
    double local[3];
    invert_motion(x.data(), local);
    if (variety_degree() == 2) {
        double q = -r_ * r_;
        for (int i = 0; i < ambient_; ++i) q += local[i] * local[i];
        return std::abs(q);
    }
    const double rho = norm2(local);
    const double q = (rho - R_) * (rho - R_) + local[2] * local[2] - r_ * r_;
    return std::abs(q);
}

std::optional<double> Section::slack_local(const double* x) const {
    auto angular_at = [&](size_t idx) { return angular_[idx]; };
    switch (id_) {
        case KindId::Interval: {
            const auto& iv = algebraic_[0];
            return std::min(x[0] - iv.a, iv.b - x[0]);
        }
        case KindId::Circle:
            return -std::abs(norm2(x) - r_);
        case KindId::CircleArc: {
            const auto a = angular_at(0);
            return std::min(-std::abs(norm2(x) - r_), angle_range_slack(std::atan2(x[1], x[0]), a.u, a.v));
        }
        case KindId::Disk:
            return r_ - norm2(x);
        case KindId::DiskAnnulus: {
            const double ri = std::get<double>(params_.at("r_in"));
            return std::min(norm2(x) - ri, r_ - norm2(x));
        }
        case KindId::CircularSector: {
            const auto a = angular_at(0);
            return std::min(r_ - norm2(x), angle_range_slack(std::atan2(x[1], x[0]), a.u, a.v));
        }
        case KindId::CircularSegment: {
            const double w = std::get<double>(params_.at("omega"));
            return std::min(1.0 - norm2(x), x[1] - std::cos(w));
        }
        case KindId::CircularZone: {
            const double h1 = std::get<double>(params_.at("h1")), h2 = std::get<double>(params_.at("h2"));
            return std::min({1.0 - norm2(x), x[1] - h1, h2 - x[1]});
        }
        case KindId::CircularLens: {
            const double d = std::cos(std::get<double>(params_.at("omega")));
            const double up[2] = {x[0], x[1] - d}, dn[2] = {x[0], x[1] + d};
            return std::min(1.0 - norm2(up), 1.0 - norm2(dn));
        }
        case KindId::GenericBlending:
            return std::nullopt;
        case KindId::PlanarLune: {
            const double dx = x[0] - lune_c2_;
            return std::min(1.0 - norm2(x), std::sqrt(dx * dx + x[1] * x[1]) - lune_rho_);
        }
        case KindId::Sphere:
        case KindId::Torus:
            return -torus_like_residual(x);
        case KindId::SphericalRectangle: {
            const auto lat = angular_at(0), lon = angular_at(1);
            const double z = std::max(-1.0, std::min(1.0, x[2] / r_));
            return std::min({-torus_like_residual(x), std::min(std::asin(z) - lat.u, lat.v - std::asin(z)),
                             angle_range_slack(std::atan2(x[1], x[0]), lon.u, lon.v)});
        }
        case KindId::SphericalLuneSurface: {
            const auto lon = angular_at(1);
            return std::min(-torus_like_residual(x), angle_range_slack(std::atan2(x[1], x[0]), lon.u, lon.v));
        }
        case KindId::SphericalCapSurface: {
            const double w = std::get<double>(params_.at("omega"));
            return std::min(-torus_like_residual(x), x[2] - r_ * std::cos(w));
        }
        case KindId::SphericalCollar: {
            const auto lat = angular_at(0);
            return std::min({-torus_like_residual(x), x[2] - r_ * std::sin(lat.u), r_ * std::sin(lat.v) - x[2]});
        }
        case KindId::ToroidalRectangle: {
            const auto pol = angular_at(0), tor = angular_at(1);
            const double rho = norm2(x);
            const double th = std::atan2(x[2] / r_, (rho - R_) / r_);
            return std::min({-torus_like_residual(x), angle_range_slack(th, pol.u, pol.v),
                             angle_range_slack(std::atan2(x[1], x[0]), tor.u, tor.v)});
        }
        case KindId::ToroidalCapSurface: {
            const double w = std::get<double>(params_.at("omega"));
            return std::min(-torus_like_residual(x), x[2] - r_ * std::cos(w));
        }
        case KindId::ToroidalCollar: {
            const auto pol = angular_at(0);
            return std::min({-torus_like_residual(x), x[2] - r_ * std::sin(pol.u), r_ * std::sin(pol.v) - x[2],
                             norm2(x) - R_});
        }
        case KindId::ToroidalSliceSurface: {
            const auto tor = angular_at(1);
            return std::min(-torus_like_residual(x), angle_range_slack(std::atan2(x[1], x[0]), tor.u, tor.v));
        }
        case KindId::Ball:
            return r_ - norm3(x);
        case KindId::SolidTorus: {
            const double R = std::get<double>(params_.at("R")), r0 = std::get<double>(params_.at("r"));
            const double drho = norm2(x) - R;
            return r0 - std::sqrt(drho * drho + x[2] * x[2]);
        }
        case KindId::SphericalShell: {
            const double ri = std::get<double>(params_.at("r_in")), ro = std::get<double>(params_.at("r_out"));
            return std::min(norm3(x) - ri, ro - norm3(x));
        }
        case KindId::SolidCap: {
            const double w = std::get<double>(params_.at("omega"));
            return std::min(1.0 - norm3(x), x[2] - std::cos(w));
        }
        case KindId::SphericalZoneSolid: {
            const double h1 = std::get<double>(params_.at("h1")), h2 = std::get<double>(params_.at("h2"));
            return std::min({1.0 - norm3(x), x[2] - h1, h2 - x[2]});
        }
        case KindId::SphericalSlice: {
            const auto phi = angular_at(1);
            return std::min(1.0 - norm3(x), angle_range_slack(std::atan2(x[1], x[0]), phi.u, phi.v));
        }
        case KindId::SphericalCone: {
            const double w = std::get<double>(params_.at("omega"));
            return std::min(1.0 - norm3(x), x[2] - norm3(x) * std::cos(w));
        }
        case KindId::SphericalLensSolid: {
            const double d = std::cos(std::get<double>(params_.at("omega")));
            const double up[3] = {x[0], x[1], x[2] - d}, dn[3] = {x[0], x[1], x[2] + d};
            return std::min(1.0 - norm3(up), 1.0 - norm3(dn));
        }
        case KindId::ToroidalCapSolid: {
            const double R = std::get<double>(params_.at("R")), r0 = std::get<double>(params_.at("r"));
            const double w = std::get<double>(params_.at("omega"));
            const double drho = norm2(x) - R;
            return std::min(r0 - std::sqrt(drho * drho + x[2] * x[2]), x[2] - r0 * std::cos(w));
        }
        case KindId::ToroidalZoneSolid: {
            const double R = std::get<double>(params_.at("R")), r0 = std::get<double>(params_.at("r"));
            const double h1 = std::get<double>(params_.at("h1")), h2 = std::get<double>(params_.at("h2"));
            const double drho = norm2(x) - R;
            return std::min({r0 - std::sqrt(drho * drho + x[2] * x[2]), x[2] - h1, h2 - x[2]});
        }
        case KindId::ToroidalSliceSolid: {
            const double R = std::get<double>(params_.at("R")), r0 = std::get<double>(params_.at("r"));
            const auto phi = angular_at(2);
            const double drho = norm2(x) - R;
            return std::min(r0 - std::sqrt(drho * drho + x[2] * x[2]),
                            angle_range_slack(std::atan2(x[1], x[0]), phi.u, phi.v));
        }
        case KindId::SolidLune: {
            const double dz = x[2] - lune_c2_;
            return std::min(1.0 - norm3(x), std::sqrt(x[0] * x[0] + x[1] * x[1] + dz * dz) - lune_rho_);
        }
        case KindId::SphericalSquarePyramid: {
            // Exit point of the ray from the apex through x on the unit sphere;
            // x belongs to the pyramid iff |x| <= 1 and the exit point lies in
            // the base rectangle.
            const double* V = apex_;
            const double dir[3] = {x[0] - V[0], x[1] - V[1], x[2] - V[2]};
            const double dd = dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2];
            const double ball = 1.0 - norm3(x);
            if (dd < 1e-26) return std::min(ball, 1.0 - norm3(V));  // at the apex
            const double vd = V[0] * dir[0] + V[1] * dir[1] + V[2] * dir[2];
            const double vv = V[0] * V[0] + V[1] * V[1] + V[2] * V[2];
            const double disc = vd * vd + dd * (1.0 - vv);
            const double tau = (-vd + std::sqrt(std::max(0.0, disc))) / dd;
            const double q[3] = {V[0] + tau * dir[0], V[1] + tau * dir[1], V[2] + tau * dir[2]};
            const auto lat = angular_at(0), lon = angular_at(1);
            const double zq = std::max(-1.0, std::min(1.0, q[2]));
            return std::min({ball, std::min(std::asin(zq) - lat.u, lat.v - std::asin(zq)),
                             angle_range_slack(std::atan2(q[1], q[0]), lon.u, lon.v)});
        }
    }
    return std::nullopt;
}

double Section::torus_like_residual(const double* x) const {
    if (variety_degree() == 2) {
        double q = -r_ * r_;
        for (int i = 0; i < ambient_; ++i) q += x[i] * x[i];
        return std::abs(q);
    }
    const double rho = norm2(x);
    return std::abs((rho - R_) * (rho - R_) + x[2] * x[2] - r_ * r_);
}

std::optional<double> Section::inequality_slack(std::span<const double> x) const {
    if (x.size() != static_cast<size_t>(ambient_))
        fail(ErrorCode::DomainError, kind_ + ": point dimension mismatch");
    double local[3];
    invert_motion(x.data(), local);
    return slack_local(local);
}

bool Section::contains(std::span<const double> x, double tol) const {
    if (on_variety()) {
        if (membership_residual(x) > tol * residual_scale()) return false;
    }
    auto slack = inequality_slack(x);
    if (!slack) return true;  // no implicit description available
    if (on_variety()) {
        // residual already checked; keep only the range constraints
        double local[3];
        invert_motion(x.data(), local);
        auto s = slack_local(local);
        return !s || *s >= -tol;
    }
    return *slack >= -tol;
}

namespace {

struct Range {
    double lo, hi;
};

Range radd(Range a, Range b) { return {a.lo + b.lo, a.hi + b.hi}; }
Range rscale(Range a, double s) { return s >= 0 ? Range{s * a.lo, s * a.hi} : Range{s * a.hi, s * a.lo}; }
Range rshift(Range a, double s) { return {a.lo + s, a.hi + s}; }
Range rmul(Range a, Range b) {
    const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {std::min({p[0], p[1], p[2], p[3]}), std::max({p[0], p[1], p[2], p[3]})};
}
Range rhull(Range a, Range b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

/// Exact range of cos over [u, v].
Range cos_range(double u, double v) {
    double lo = std::min(std::cos(u), std::cos(v));
    double hi = std::max(std::cos(u), std::cos(v));
    // include interior extrema at multiples of pi
    const long long k0 = static_cast<long long>(std::ceil(u / kPi));
    const long long k1 = static_cast<long long>(std::floor(v / kPi));
    for (long long k = k0; k <= k1; ++k) {
        if ((k % 2 + 2) % 2 == 0) hi = 1.0;
        else lo = -1.0;
    }
    return {lo, hi};
}

Range sin_range(double u, double v) { return cos_range(u - kPi / 2, v - kPi / 2); }

/// Exact range of A cos(t) + B sin(t) + C over [u, v].
Range arc_component_range(double A, double B, double C, double u, double v) {
    const double amp = std::hypot(A, B);
    if (amp == 0.0) return {C, C};
    const double phase = std::atan2(B, A);
    Range c = cos_range(u - phase, v - phase);
    return rshift(rscale(c, amp), C);
}

}  // namespace

void Section::component_bounds(double* lo, double* hi) const {
    Range comp[3] = {{0, 0}, {0, 0}, {0, 0}};
    switch (engine_) {
        case Engine::Identity1D:
            comp[0] = {algebraic_[0].a, algebraic_[0].b};
            break;
        case Engine::CircleArc: {
            const auto& a = angular_[0];
            comp[0] = rscale(cos_range(a.u, a.v), r_);
            comp[1] = rscale(sin_range(a.u, a.v), r_);
            break;
        }
        case Engine::Blend2:
        case Engine::RotBlend: {
            const auto& th = angular_[0];
            Range x1 = arc_component_range(p1_.A.x, p1_.B.x, p1_.C.x, th.u, th.v);
            Range y1 = arc_component_range(p1_.A.y, p1_.B.y, p1_.C.y, th.u, th.v);
            Range x2 = arc_component_range(p2_.A.x, p2_.B.x, p2_.C.x, th.u, th.v);
            Range y2 = arc_component_range(p2_.A.y, p2_.B.y, p2_.C.y, th.u, th.v);
            Range rx = rhull(x1, x2), ry = rhull(y1, y2);
            if (engine_ == Engine::Blend2) {
                comp[0] = rx;
                comp[1] = ry;
            } else {
                const auto& ph = angular_[1];
                comp[0] = rmul(rx, cos_range(ph.u, ph.v));
                comp[1] = rmul(rx, sin_range(ph.u, ph.v));
                comp[2] = ry;
            }
            break;
        }
        case Engine::Lune:
        case Engine::RotLune: {
            const auto& t1 = angular_[0];
            const auto& t2 = angular_[1];
            const double inv = 1.0 / std::sin(omega1_);
            Range inner = rscale(rshift(cos_range(t1.u, t1.v), -std::cos(omega1_)), inv);
            Range s1 = radd(cos_range(t2.u, t2.v), rmul(sin_range(t2.u, t2.v), inner));
            Range s2 = rmul(rscale(sin_range(t1.u, t1.v), inv), sin_range(t2.u, t2.v));
            if (engine_ == Engine::Lune) {
                comp[0] = s1;
                comp[1] = s2;
            } else {
                const auto& ph = angular_[2];
                comp[0] = rmul(s2, cos_range(ph.u, ph.v));
                comp[1] = rmul(s2, sin_range(ph.u, ph.v));
                comp[2] = s1;
            }
            break;
        }
        case Engine::TorusSurf: {
            const auto& t1 = angular_[0];
            const auto& t2 = angular_[1];
            Range rad = rshift(rscale(cos_range(t1.u, t1.v), r_), R_);
            comp[0] = rmul(rad, cos_range(t2.u, t2.v));
            comp[1] = rmul(rad, sin_range(t2.u, t2.v));
            comp[2] = rscale(sin_range(t1.u, t1.v), r_);
            break;
        }
        case Engine::Pyramid: {
            const auto& t1 = angular_[0];
            const auto& t2 = angular_[1];
            Range c1 = cos_range(t1.u, t1.v);
            Range bx = rmul(c1, cos_range(t2.u, t2.v));
            Range by = rmul(c1, sin_range(t2.u, t2.v));
            Range bz = sin_range(t1.u, t1.v);
            comp[0] = rhull(bx, {apex_[0], apex_[0]});
            comp[1] = rhull(by, {apex_[1], apex_[1]});
            comp[2] = rhull(bz, {apex_[2], apex_[2]});
            break;
        }
    }
    const int d = ambient_;
    if (has_motion_) {
        double ctr[3] = {0, 0, 0}, hw[3] = {0, 0, 0};
        for (int i = 0; i < d; ++i) {
            const double c = 0.5 * (comp[i].lo + comp[i].hi);
            const double h = 0.5 * (comp[i].hi - comp[i].lo);
            ctr[i] = c;
            hw[i] = h;
        }
        for (int i = 0; i < d; ++i) {
            double nc = shift_[i], nh = 0.0;
            for (int j = 0; j < d; ++j) {
                nc += rot_[i * 3 + j] * ctr[j];
                nh += std::abs(rot_[i * 3 + j]) * hw[j];
            }
            comp[i] = {nc - nh, nc + nh};
        }
    } else {
        for (int i = 0; i < d; ++i) comp[i] = rshift(comp[i], shift_[i]);
    }
    for (int i = 0; i < d; ++i) {
        lo[i] = comp[i].lo;
        hi[i] = comp[i].hi;
    }
}

const std::vector<KindInfo>& section_catalog() {
    static const std::vector<KindInfo> catalog = [] {
        auto v2 = [](double a, double b) { return std::vector<double>{a, b}; };
        std::vector<KindInfo> c;
        c.push_back({"interval", "interval", "a, b", {{"a", -1.0}, {"b", 1.0}}});
        c.push_back({"circle", "entire circle", "r", {{"r", 1.0}}});
        c.push_back({"circle_arc", "circle arc", "r, omega", {{"r", 1.0}, {"omega", 2 * kPi / 3}}});
        c.push_back({"disk", "entire disk", "r", {{"r", 1.0}}});
        c.push_back({"disk_annulus", "disk annulus", "r_in, r_out", {{"r_in", 0.5}, {"r_out", 1.0}}});
        c.push_back({"circular_sector", "disk sector", "omega, r", {{"omega", kPi / 3}}});
        c.push_back({"circular_segment", "disk segment", "omega, representation", {{"omega", kPi / 3}}});
        c.push_back({"circular_zone", "disk zone", "h1, h2", {{"h1", -0.3}, {"h2", 0.5}}});
        c.push_back({"circular_lens", "disk lens", "omega", {{"omega", kPi / 3}}});
        c.push_back({"generic_blending", "arc blending domain", "A1, B1, C1, A2, B2, C2, omega1, omega2",
                     {{"A1", v2(1, 0)}, {"B1", v2(0, 1)}, {"C1", v2(0, 0)}, {"A2", v2(1, 0)}, {"B2", v2(0, 0)},
                      {"C2", v2(0, 0.5)}, {"omega1", kPi / 6}, {"omega2", 5 * kPi / 6}}});
        c.push_back({"planar_lune", "planar lune", "omega1, omega2", {{"omega1", kPi / 4}, {"omega2", kPi / 2}}});
        c.push_back({"sphere", "entire sphere", "r", {{"r", 1.0}}});
        c.push_back({"torus", "entire torus", "R, r", {{"R", 3.0}, {"r", 1.0}}});
        c.push_back({"spherical_rectangle", "surface spherical rectangle", "lat1, lat2, lon1, lon2, r",
                     {{"lat1", -kPi / 6}, {"lat2", kPi / 3}, {"lon1", -kPi / 4}, {"lon2", kPi / 2}}});
        c.push_back({"spherical_lune_surface", "surface spherical lune", "lon1, lon2, r",
                     {{"lon1", -kPi / 3}, {"lon2", kPi / 3}}});
        c.push_back({"spherical_cap_surface", "surface spherical cap", "omega, r", {{"omega", kPi / 3}}});
        c.push_back({"spherical_collar", "surface spherical collar", "lat1, lat2, r",
                     {{"lat1", -kPi / 6}, {"lat2", kPi / 3}}});
        c.push_back({"toroidal_rectangle", "surface toroidal rectangle", "R, r, theta1, theta2, phi1, phi2",
                     {{"R", 3.0}, {"r", 1.0}, {"theta1", -kPi / 3}, {"theta2", kPi / 2}, {"phi1", -kPi / 4},
                      {"phi2", kPi / 3}}});
        c.push_back({"toroidal_cap_surface", "surface toroidal cap", "R, r, omega",
                     {{"R", 3.0}, {"r", 1.0}, {"omega", kPi / 3}}});
        c.push_back({"toroidal_collar", "surface toroidal collar", "R, r, theta1, theta2",
                     {{"R", 3.0}, {"r", 1.0}, {"theta1", -kPi / 6}, {"theta2", kPi / 3}}});
        c.push_back({"toroidal_slice_surface", "surface toroidal slice", "R, r, phi1, phi2",
                     {{"R", 3.0}, {"r", 1.0}, {"phi1", -kPi / 3}, {"phi2", kPi / 2}}});
        c.push_back({"ball", "entire ball", "r", {{"r", 1.0}}});
        c.push_back({"solid_torus", "solid torus", "R, r", {{"R", 3.0}, {"r", 1.0}}});
        c.push_back({"spherical_shell", "spherical shell", "r_in, r_out", {{"r_in", 0.5}, {"r_out", 1.0}}});
        c.push_back({"solid_cap", "solid spherical cap", "omega", {{"omega", kPi / 3}}});
        c.push_back({"spherical_zone_solid", "solid spherical zone", "h1, h2", {{"h1", -0.3}, {"h2", 0.5}}});
        c.push_back({"spherical_slice", "solid spherical slice", "phi1, phi2", {{"phi1", 0.0}, {"phi2", 2 * kPi / 3}}});
        c.push_back({"spherical_cone", "solid spherical cone", "omega", {{"omega", kPi / 4}}});
        c.push_back({"spherical_lens_solid", "solid spherical lens", "omega", {{"omega", kPi / 3}}});
        c.push_back({"toroidal_cap_solid", "solid toroidal cap", "R, r, omega",
                     {{"R", 3.0}, {"r", 1.0}, {"omega", kPi / 3}}});
        c.push_back({"toroidal_zone_solid", "solid toroidal zone", "R, r, h1, h2",
                     {{"R", 3.0}, {"r", 1.0}, {"h1", -0.3}, {"h2", 0.5}}});
        c.push_back({"toroidal_slice_solid", "solid toroidal slice", "R, r, phi1, phi2",
                     {{"R", 3.0}, {"r", 1.0}, {"phi1", 0.0}, {"phi2", 2 * kPi / 3}}});
        c.push_back({"solid_lune", "solid lune", "omega1, omega2 [, phi1, phi2]",
                     {{"omega1", kPi / 4}, {"omega2", kPi / 2}}});
        c.push_back({"spherical_square_pyramid", "spherical square pyramid", "lat1, lat2, lon1, lon2, V",
                     {{"lat1", -kPi / 6},
                      {"lat2", kPi / 3},
                      {"lon1", -kPi / 4},
                      {"lon2", kPi / 2},
                      {"V", std::vector<double>{0.1, -0.05, 0.2}}}});
        return c;
    }();
    return catalog;
}

const KindInfo* find_kind(const std::string& name) {
    for (const auto& k : section_catalog())
        if (k.name == name) return &k;
    return nullptr;
}

}  // namespace normesh
