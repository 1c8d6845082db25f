#pragma once

#include <array>

#include "widthlab/ballbody.hpp"
#include "widthlab/patches.hpp"

namespace widthlab {

/// Intersection of all unit balls centered on the six face patches.
BallBody<4> build_M(const GeneratorSet& gs);

/// Reuleaux simplex: unit balls centered at the five vertices.
BallBody<4> build_reuleaux(const SimplexFrame& f);

/// Regular unit tetrahedron centered at the origin (the projected base
/// vertices of the 4-simplex).
std::array<Vec3, 4> default_tetrahedron();

/// Meissner body of the second kind: intersection of all unit balls
/// centered on the three edge arcs meeting at the apex vertex.
BallBody<3> build_meissner2_3d(const std::array<Vec3, 4>& tetra, int apex = 3);

/// Ball of width 2r as a ball body (single point generator).
BallBody<3> build_ball3(const Vec3& center = Vec3{0.0, 0.0, 0.0}, double r = 0.5);

}  // namespace widthlab
