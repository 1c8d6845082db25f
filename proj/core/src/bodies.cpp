#include "widthlab/bodies.hpp"

#include <cmath>
#include <stdexcept>

namespace widthlab {

BallBody<4> build_M(const GeneratorSet& gs) {
    BallBody<4> body;
    body.name = "M";
    body.radius = 1.0;
    body.witness = gs.frame.G;
    for (const auto& p : gs.patches) body.gens.emplace_back(p);
    return body;
}

BallBody<4> build_reuleaux(const SimplexFrame& f) {
    BallBody<4> body;
    body.name = "reuleaux4";
    body.radius = 1.0;
    body.witness = f.G;
    static const char* names[] = {"vertex_A", "vertex_B", "vertex_C", "vertex_D", "vertex_E"};
    Vec4 vs[5] = {f.A, f.B, f.C, f.D, f.E};
    for (int i = 0; i < 5; ++i)
        body.gens.emplace_back(PointPiece<4>{vs[i], names[i], PieceKind::Vertex});
    return body;
}

std::array<Vec3, 4> default_tetrahedron() {
    const double s = 1.0 / (2.0 * std::sqrt(2.0));
    return {Vec3{s, s, -s}, Vec3{s, -s, s}, Vec3{-s, s, s}, Vec3{-s, -s, -s}};
}

BallBody<3> build_meissner2_3d(const std::array<Vec3, 4>& tetra, int apex) {
    if (apex < 0 || apex > 3) throw std::invalid_argument("meissner: apex index out of range");
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::abs(dist(tetra[i], tetra[j]) - 1.0) > 1e-9)
                throw std::invalid_argument("meissner: tetrahedron must have unit edges");

    BallBody<3> body;
    body.name = "meissner2";
    body.radius = 1.0;
    Vec3 centroid{};
    for (const auto& v : tetra) centroid += v;
    body.witness = centroid / 4.0;

    // One preserved edge arc from the apex to each base vertex: the circle
    // at distance 1 from the remaining two vertices, clipped to the short
    // arc between its endpoints.
    for (int i = 0; i < 4; ++i) {
        if (i == apex) continue;
        int others[2], n = 0;
        for (int j = 0; j < 4; ++j)
            if (j != apex && j != i) others[n++] = j;

        ArcPiece<3> arc;
        arc.center = (tetra[others[0]] + tetra[others[1]]) * 0.5;
        arc.radius = std::sqrt(3.0) / 2.0;
        arc.u = normalized(tetra[i] - arc.center);
        Vec3 toward_apex = tetra[apex] - arc.center;
        Vec3 v = toward_apex - dot(toward_apex, arc.u) * arc.u;
        arc.v = normalized(v);
        arc.t0 = 0.0;
        arc.t1 = std::atan2(dot(toward_apex, arc.v), dot(toward_apex, arc.u));
        arc.label = "edge_" + std::to_string(i) + "_apex";
        arc.kind = PieceKind::EdgeArc;
        body.gens.emplace_back(arc);
    }
    return body;
}

BallBody<3> build_ball3(const Vec3& center, double r) {
    BallBody<3> body;
    body.name = "ball3";
    body.radius = r;
    body.witness = center;
    body.gens.emplace_back(PointPiece<3>{center, "center", PieceKind::Vertex});
    return body;
}

}  // namespace widthlab
