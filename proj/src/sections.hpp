#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nodes1d.hpp"

namespace normesh {

using ParamValue = std::variant<double, std::vector<double>, std::string>;
using Params = std::map<std::string, ParamValue>;

/// Factor-type counts (d1 algebraic, d2 periodic angular, d3 subperiodic
/// angular) of a section, from which the norming constant class
/// alpha^(d1+d2) * beta^(d3) and the cardinality bound N1^d1 * N2^(d2+d3)
/// follow.
struct Signature {
    int d1 = 0;
    int d2 = 0;
    int d3 = 0;
    int ambient_dim = 0;

    std::string constant_class() const;  // e.g. "alpha^2*beta"
    std::string bound_shape() const;     // e.g. "N1*N2^2"
    double constant(double m) const;
    long long cardinality_bound(long long N1, long long N2) const;
    int factor_count() const { return d1 + d2 + d3; }
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// One arc of a planar blending: P(theta) = A cos(theta) + B sin(theta) + C.
struct Arc2 {
    Vec2 A, B, C;
};

enum class KindId {
    Interval,
    Circle,
    CircleArc,
    Disk,
    DiskAnnulus,
    CircularSector,
    CircularSegment,
    CircularZone,
    CircularLens,
    GenericBlending,
    PlanarLune,
    Sphere,
    Torus,
    SphericalRectangle,
    SphericalLuneSurface,
    SphericalCapSurface,
    SphericalCollar,
    ToroidalRectangle,
    ToroidalCapSurface,
    ToroidalCollar,
    ToroidalSliceSurface,
    Ball,
    SolidTorus,
    SphericalShell,
    SolidCap,
    SphericalZoneSolid,
    SphericalSlice,
    SphericalCone,
    SphericalLensSolid,
    ToroidalCapSolid,
    ToroidalZoneSolid,
    ToroidalSliceSolid,
    SolidLune,
    SphericalSquarePyramid,
};

/// A catalogued compact set K = sigma(I x Theta) whose map components are
/// affine in each algebraic variable and degree-1 trigonometric in each
/// angular variable.
class Section {
  public:
    Section() = default;  // empty placeholder; build real specs through make()
    static Section make(const std::string& kind, const Params& params);

    const std::string& kind() const { return kind_; }
    KindId kind_id() const { return id_; }
    const Params& params() const { return params_; }
    int ambient_dim() const { return ambient_; }
    const std::vector<Interval>& algebraic_ranges() const { return algebraic_; }
    const std::vector<AngularInterval>& angular_ranges() const { return angular_; }
    size_t factor_count() const { return algebraic_.size() + angular_.size(); }
    Signature signature() const;

    /// sigma at (algebraic coords..., angular coords...), range-checked.
    std::vector<double> evaluate_map(std::span<const double> coords) const;

    /// |q(x)| for kinds carried by a circle, sphere or torus variety;
    /// throws UnsupportedKind otherwise.
    double membership_residual(std::span<const double> x) const;
    bool on_variety() const;
    int variety_degree() const;  // 2 for circle/sphere, 4 for torus, 0 otherwise

    /// Minimum slack of the kind's defining inequalities (>= 0 inside K, up
    /// to roundoff). nullopt when no implicit description exists.
    std::optional<double> inequality_slack(std::span<const double> x) const;

    /// Membership test at tolerance tol; variety residuals are compared
    /// against tol * residual_scale().
    bool contains(std::span<const double> x, double tol) const;

    /// (1 + R + r)^4, the scale factor for variety residual tolerances.
    double residual_scale() const;

    /// sigma without range validation (used on exact grid nodes).
    void map_unchecked(const double* coords, double* out) const;

    /// Guaranteed per-component enclosure of K = sigma(I x Theta), computed
    /// by interval arithmetic on the map structure.
    void component_bounds(double* lo, double* hi) const;

  private:
    std::string kind_;
    KindId id_ = KindId::Interval;
    Params params_;
    int ambient_ = 1;
    std::vector<Interval> algebraic_;
    std::vector<AngularInterval> angular_;

    enum class Engine { Identity1D, CircleArc, Blend2, RotBlend, Lune, RotLune, TorusSurf, Pyramid };
    Engine engine_ = Engine::Identity1D;

    Arc2 p1_, p2_;                    // Blend2 / RotBlend ((x,y) or (r,z) plane)
    double R_ = 0.0, r_ = 1.0;        // torus radii; r_ doubles as circle/sphere radius
    double omega1_ = 0.0, omega2_ = 0.0;  // lune semi-angles
    double lune_rho_ = 0.0, lune_c2_ = 0.0;
    double apex_[3] = {0.0, 0.0, 0.0};

    bool has_motion_ = false;
    double rot_[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    double shift_[3] = {0.0, 0.0, 0.0};

    void apply_motion(double* x) const;
    void invert_motion(const double* x, double* out) const;
    std::optional<double> slack_local(const double* x) const;
    double torus_like_residual(const double* x) const;
    friend struct SectionBuilder;
};

/// make_section free-function form of Section::make.
Section make_section(const std::string& kind, const Params& params);

struct KindInfo {
    std::string name;    // CLI identifier, e.g. "solid_lune"
    std::string label;   // prose label, e.g. "solid lune"
    std::string params_help;
    Params default_params;
};

/// All catalogued kinds with defaults suitable for demos and the table
/// command.
const std::vector<KindInfo>& section_catalog();

const KindInfo* find_kind(const std::string& name);

}  // namespace normesh
