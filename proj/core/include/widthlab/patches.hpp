#pragma once

#include <array>
#include <string>
#include <vector>

#include "widthlab/frame.hpp"
#include "widthlab/pieces.hpp"

namespace widthlab {

using SphericalPatch = SpherePatchPiece<4>;
using ArcSegment = ArcPiece<4>;

/// The six face patches of the generating set together with their shared
/// boundary decomposition: four apex arcs, six base arcs, five vertices.
/// Arc endpoints are intentionally duplicated across pieces.
struct GeneratorSet {
    SimplexFrame frame;
    std::array<SphericalPatch, 6> patches;  // AB, AC, AD, BC, BD, CD
    std::array<ArcSegment, 4> apex_arcs;    // X--E for X in A..D
    std::array<ArcSegment, 6> base_arcs;    // X--Y for pairs in A..D
    std::array<Vec4, 5> vertices;           // A..E

    static const std::array<std::pair<VertexId, VertexId>, 6>& pair_order();
    const SphericalPatch& patch(VertexId x, VertexId y) const;
    const ArcSegment& base_arc(VertexId x, VertexId y) const;
    const ArcSegment& apex_arc(VertexId x) const;
};

/// Patch of the 2-face spanned by base vertices X, Y and the apex: the part
/// of the sphere S(M_{Z,W}, sqrt(3)/2) inside the positive cone of {X, Y, E}.
SphericalPatch make_face_patch(const SimplexFrame& f, VertexId x, VertexId y);

/// Apex arc from base vertex X to E: the circle at distance 1 from the three
/// remaining base vertices, clipped between X and E.
ArcSegment make_apex_arc(const SimplexFrame& f, VertexId x);

/// Base arc cos(t) X + sin(t) Y, t in [0, pi/2].
ArcSegment make_base_arc(const SimplexFrame& f, VertexId x, VertexId y);

/// The three boundary arcs of a patch in order (X--E, Y--E, X--Y).
std::array<ArcSegment, 3> boundary_arcs(const SphericalPatch& patch);

GeneratorSet make_generator_set(const SimplexFrame& f);

/// Deterministic sample with geodesic covering radius <= h: a polar lattice
/// seeded at the patch centroid, clipped to the cone, plus boundary arc
/// samples and the corners.
std::vector<Vec4> sample_patch(const SphericalPatch& patch, double h);

/// True iff p lies on the patch sphere within tol and within tol of the
/// positive cone (nonnegative least-squares residual).
bool patch_contains(const SphericalPatch& patch, const Vec4& p, double tol = 1e-9);

inline ExtremeResult<4> farthest_point_on_patch(const SphericalPatch& patch, const Vec4& x) {
    return farthest_from(patch, x);
}

struct NearestPiece {
    double dist;
    Vec4 point;
    std::string label;
};

/// Distance from p to the union of the six patches (= the generating set).
NearestPiece distance_to_generators(const GeneratorSet& gs, const Vec4& p);

/// All pieces of the decomposition as generic generator pieces
/// (6 patches + 4 apex arcs + 6 base arcs + 5 vertices).
std::vector<GenPiece<4>> decomposition_pieces(const GeneratorSet& gs);

/// Random point on a patch, counter-seeded and reproducible.
Vec4 random_patch_point(const SphericalPatch& patch, std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t counter);

}  // namespace widthlab
