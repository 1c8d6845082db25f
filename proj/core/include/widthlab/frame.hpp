#pragma once

#include <array>
#include <string>

#include "widthlab/vec.hpp"

namespace widthlab {

enum class VertexId { A = 0, B = 1, C = 2, D = 3, E = 4 };

inline const char* vertex_name(VertexId v) {
    static const char* names[] = {"A", "B", "C", "D", "E"};
    return names[static_cast<int>(v)];
}

/// Oriented affine hyperplane. `keep = +1` keeps the side where
/// normal . x >= offset, `keep = -1` the opposite one.
struct Hyperplane {
    Vec4 normal;   // unit length
    double offset; // normal . x = offset on the plane
    int keep;

    /// >= 0 inside the kept closed half-space.
    double signed_excess(const Vec4& x) const {
        return static_cast<double>(keep) * (dot(normal, x) - offset);
    }
    bool contains(const Vec4& x, double tol = 1e-10) const {
        return signed_excess(x) >= -tol;
    }
    double plane_residual(const Vec4& x) const { return dot(normal, x) - offset; }
};

/// Exact coordinates of the regular unit 4-simplex used everywhere else.
/// A..D sit on the coordinate axes with squared norm 1/2 and the apex is
/// E = (phi/2)(A+B+C+D).
struct SimplexFrame {
    Vec4 A, B, C, D, E, G, O;
    double phi;

    Vec4 vertex(VertexId v) const {
        switch (v) {
            case VertexId::A: return A;
            case VertexId::B: return B;
            case VertexId::C: return C;
            case VertexId::D: return D;
            default: return E;
        }
    }
    Vec4 base(int i) const { return vertex(static_cast<VertexId>(i)); }

    Vec4 mid(VertexId x, VertexId y) const { return (vertex(x) + vertex(y)) * 0.5; }
    Vec4 centroid3(VertexId x, VertexId y, VertexId z) const {
        return (vertex(x) + vertex(y) + vertex(z)) / 3.0;
    }
};

SimplexFrame build_frame();

/// Hyperplane through four affinely independent points, oriented so the
/// witness lies strictly in the kept half-space.
Hyperplane hyperplane_through(const std::array<Vec4, 4>& pts, const Vec4& keep_witness);

/// Perpendicular bisector of segment XY, oriented toward X.
Hyperplane perpendicular_bisector(const Vec4& x, const Vec4& y);

/// The 24 coordinate permutations of the base axes; each fixes E and O.
using BasePermutation = std::array<int, 4>;
const std::array<BasePermutation, 24>& base_permutations();

inline Vec4 apply_base_permutation(const BasePermutation& p, const Vec4& x) {
    Vec4 y;
    for (int i = 0; i < 4; ++i) y[p[i]] = x[i];
    return y;
}

/// JSON text of the frame with 17 significant digits per coordinate.
std::string frame_to_json(const SimplexFrame& f);

}  // namespace widthlab
