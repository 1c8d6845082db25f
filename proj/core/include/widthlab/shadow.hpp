#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "widthlab/ballbody.hpp"
#include "widthlab/patches.hpp"

namespace widthlab {

/// Orthogonal projection onto the 3-space orthogonal to the apex direction,
/// in a fixed orthonormal basis chosen so the projected base vertices have
/// symmetric coordinates (+-1, +-1, +-1)/(2 sqrt 2).
struct ProjectionMap {
    std::array<Vec4, 3> basis;  // orthonormal, orthogonal to E
    Vec4 e_dir;                 // unit apex direction

    Vec3 project(const Vec4& x) const {
        return Vec3{dot(x, basis[0]), dot(x, basis[1]), dot(x, basis[2])};
    }
    Vec4 lift(const Vec3& y) const {
        return y[0] * basis[0] + y[1] * basis[1] + y[2] * basis[2];
    }
};

ProjectionMap make_projection(const SimplexFrame& f);

using EllipticalArc = EllipseArcPiece<3>;

/// Projected base arc between two base vertices: gamma(t) = cos t pi(X) +
/// sin t pi(Y), t in [0, pi/2].
EllipticalArc make_arc(const ProjectionMap& pm, const SimplexFrame& f, VertexId x, VertexId y);

struct ArcAxes {
    double a;  // semi-major
    double b;  // semi-minor
    double e;  // eccentricity
};
ArcAxes arc_axes(const EllipticalArc& arc);

/// Point on the opposite arc at the aligned parameter; the chord has unit
/// length for every t.
Vec3 opposite_point(const ProjectionMap& pm, const SimplexFrame& f, VertexId x, VertexId y,
                    double t);

/// The shadow body: the intersection of all unit balls centered on the six
/// projected arcs.
struct ShadowBody {
    ProjectionMap pm;
    std::array<EllipticalArc, 6> arcs;  // in GeneratorSet::pair_order()
    BallBody<3> body;
};

ShadowBody build_shadow(const SimplexFrame& f);

struct ProjectedPatchReport {
    double max_plane_residual = 0.0;  // distance of images to the arc plane
    double min_coeff = 0.0;           // most negative sector coordinate
    double max_lambda = 0.0;          // largest radial parameter
    double min_interior_margin = 0.0; // over images with lambda < 1 - 1e-3
    int samples = 0;
    bool pass = false;
};

/// Checks that the projected patch is exactly the elliptical sector
/// {lambda * gamma(t)} and that its open part is interior to the shadow.
ProjectedPatchReport projected_patch_check(const ShadowBody& sb, const GeneratorSet& gs,
                                           VertexId x, VertexId y, double spacing = 0.04);

struct EquivalenceReport {
    long samples = 0;
    long excluded = 0;   // inside the boundary band of either oracle
    long compared = 0;
    long agreements = 0;
    double agreement_rate = 1.0;
    bool pass = false;
};

/// Membership equivalence between the 3D arc-intersection oracle and the 4D
/// fiber test over random points in the shadow's bounding box.
EquivalenceReport equivalence_check(const ShadowBody& sb, const BallBody<4>& m4, long n,
                                    std::uint64_t seed, double band = 1e-4, int threads = 0);

struct CircularProjectionResult {
    Vec3 best_normal{};
    double best_residual = 1e300;
    double generic_residual = 0.0;  // residual at a fixed generic plane
    double width_min = 0.0, width_max = 0.0;  // planar widths on the best plane
    int planes_scanned = 0;
};

/// Sweeps projection planes and measures how circular the planar shadow is:
/// the support function on each plane is fitted by the support function of a
/// disk and the max deviation is reported.
CircularProjectionResult circular_projection_search(const ShadowBody& sb, int resolution = 240,
                                                    int directions = 360);

}  // namespace widthlab
