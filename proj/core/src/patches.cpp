#include "widthlab/patches.hpp"

#include <cmath>
#include <stdexcept>

#include "widthlab/rng.hpp"

namespace widthlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// The two base vertices not in {x, y}.
std::pair<VertexId, VertexId> opposite_pair(VertexId x, VertexId y) {
    bool used[4] = {false, false, false, false};
    used[static_cast<int>(x)] = true;
    used[static_cast<int>(y)] = true;
    int out[2], n = 0;
    for (int i = 0; i < 4; ++i)
        if (!used[i]) out[n++] = i;
    return {static_cast<VertexId>(out[0]), static_cast<VertexId>(out[1])};
}

void check_base_pair(VertexId x, VertexId y) {
    if (x == y) throw std::invalid_argument("base pair must be two distinct vertices");
    if (x == VertexId::E || y == VertexId::E)
        throw std::invalid_argument("base pair must avoid the apex");
}

/// Angle of point p on the circle (center, radius, u, v).
double arc_angle_of(const ArcSegment& arc, const Vec4& p) {
    Vec4 rel = p - arc.center;
    return std::atan2(dot(rel, arc.v), dot(rel, arc.u));
}

}  // namespace

ArcSegment make_base_arc(const SimplexFrame& f, VertexId x, VertexId y) {
    check_base_pair(x, y);
    ArcSegment arc;
    arc.center = f.O;
    arc.radius = norm(f.vertex(x));  // 1/sqrt(2)
    arc.u = normalized(f.vertex(x));
    arc.v = normalized(f.vertex(y));
    arc.t0 = 0.0;
    arc.t1 = kPi / 2.0;
    arc.label = std::string("base_") + vertex_name(x) + vertex_name(y);
    arc.kind = PieceKind::BaseArc;
    return arc;
}

ArcSegment make_apex_arc(const SimplexFrame& f, VertexId x) {
    if (x == VertexId::E) throw std::invalid_argument("apex arc needs a base vertex");
    // Circle at distance 1 from the other three base vertices: center at
    // their centroid, radius sqrt(2/3), in the plane spanned by X and the
    // centroid direction.
    Vec4 sum_others{};
    for (int i = 0; i < 4; ++i)
        if (static_cast<VertexId>(i) != x) sum_others += f.base(i);
    ArcSegment arc;
    arc.center = sum_others / 3.0;
    arc.radius = std::sqrt(2.0 / 3.0);
    arc.u = normalized(f.vertex(x));
    arc.v = normalized(sum_others);
    double ta = arc_angle_of(arc, f.vertex(x));
    double tb = arc_angle_of(arc, f.E);
    arc.t0 = std::min(ta, tb);
    arc.t1 = std::max(ta, tb);
    arc.label = std::string("edge_") + vertex_name(x) + "E";
    arc.kind = PieceKind::ApexArc;
    return arc;
}

SphericalPatch make_face_patch(const SimplexFrame& f, VertexId x, VertexId y) {
    check_base_pair(x, y);
    auto [z, w] = opposite_pair(x, y);

    SphericalPatch p;
    p.center = f.mid(z, w);
    p.radius = std::sqrt(3.0) / 2.0;
    p.b0 = normalized(f.vertex(x));
    p.b1 = normalized(f.vertex(y));
    p.b2 = f.vertex(z) + f.vertex(w);  // unit length already
    p.cone = {f.vertex(x), f.vertex(y), f.E};
    p.corners = {f.vertex(x), f.vertex(y), f.E};
    p.label = std::string("face_") + vertex_name(x) + vertex_name(y);
    p.kind = PieceKind::PatchInterior;

    // Invert the cone-generator matrix in carrier coordinates.
    std::array<std::array<double, 3>, 3> m{};
    for (int j = 0; j < 3; ++j) {
        Vec<3> col{dot(p.cone[j], p.b0), dot(p.cone[j], p.b1), dot(p.cone[j], p.b2)};
        for (int i = 0; i < 3; ++i) m[i][j] = col[i];
    }
    for (int k = 0; k < 3; ++k) {
        Vec<3> e{};
        e[k] = 1.0;
        Vec<3> sol{};
        if (!solve_linear<3>(m, e, sol))
            throw std::invalid_argument("face patch: degenerate cone");
        for (int i = 0; i < 3; ++i) p.cone_inv[i][k] = sol[i];
    }

    p.boundary = {make_apex_arc(f, x), make_apex_arc(f, y), make_base_arc(f, x, y)};
    return p;
}

std::array<ArcSegment, 3> boundary_arcs(const SphericalPatch& patch) {
    return patch.boundary;
}

const std::array<std::pair<VertexId, VertexId>, 6>& GeneratorSet::pair_order() {
    static const std::array<std::pair<VertexId, VertexId>, 6> pairs = {{
        {VertexId::A, VertexId::B},
        {VertexId::A, VertexId::C},
        {VertexId::A, VertexId::D},
        {VertexId::B, VertexId::C},
        {VertexId::B, VertexId::D},
        {VertexId::C, VertexId::D},
    }};
    return pairs;
}

const SphericalPatch& GeneratorSet::patch(VertexId x, VertexId y) const {
    const auto& order = pair_order();
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto [a, b] = order[i];
        if ((a == x && b == y) || (a == y && b == x)) return patches[i];
    }
    throw std::invalid_argument("patch: invalid base pair");
}

const ArcSegment& GeneratorSet::base_arc(VertexId x, VertexId y) const {
    const auto& order = pair_order();
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto [a, b] = order[i];
        if ((a == x && b == y) || (a == y && b == x)) return base_arcs[i];
    }
    throw std::invalid_argument("base_arc: invalid base pair");
}

const ArcSegment& GeneratorSet::apex_arc(VertexId x) const {
    if (x == VertexId::E) throw std::invalid_argument("apex_arc: base vertex expected");
    return apex_arcs[static_cast<int>(x)];
}

GeneratorSet make_generator_set(const SimplexFrame& f) {
    GeneratorSet gs;
    gs.frame = f;
    const auto& order = GeneratorSet::pair_order();
    for (std::size_t i = 0; i < order.size(); ++i)
        gs.patches[i] = make_face_patch(f, order[i].first, order[i].second);
    for (int i = 0; i < 4; ++i) gs.apex_arcs[i] = make_apex_arc(f, static_cast<VertexId>(i));
    for (std::size_t i = 0; i < order.size(); ++i)
        gs.base_arcs[i] = make_base_arc(f, order[i].first, order[i].second);
    gs.vertices = {f.A, f.B, f.C, f.D, f.E};
    return gs;
}

std::vector<Vec4> sample_patch(const SphericalPatch& patch, double h) {
    if (!(h > 0.0) || h >= patch.radius)
        throw std::invalid_argument("sample_patch: spacing must be in (0, radius)");

    std::vector<Vec4> out;
    const double r = patch.radius;
    const double step = 0.7 * h;  // lattice pitch, keeps covering radius under h

    // Seed at the spherical centroid of the corners.
    Vec4 mean{};
    for (const auto& c : patch.corners) mean += (c - patch.center);
    Vec4 n0 = normalized(mean);
    Vec4 p0 = patch.center + r * n0;
    if (patch.cone_contains_carrier(p0, 1e-9)) out.push_back(p0);

    // Tangent frame at p0 inside the carrier.
    Vec<3> n0c{dot(n0, patch.b0), dot(n0, patch.b1), dot(n0, patch.b2)};
    Vec<3> t1c = (std::abs(n0c[0]) < 0.9) ? Vec<3>{1.0, 0.0, 0.0} : Vec<3>{0.0, 1.0, 0.0};
    // Gram-Schmidt in carrier coordinates.
    double pr = dot(t1c, n0c);
    for (int i = 0; i < 3; ++i) t1c[i] -= pr * n0c[i];
    t1c = normalized(t1c);
    Vec<3> t2c{n0c[1] * t1c[2] - n0c[2] * t1c[1], n0c[2] * t1c[0] - n0c[0] * t1c[2],
               n0c[0] * t1c[1] - n0c[1] * t1c[0]};
    Vec4 e1 = patch.from_carrier(t1c);
    Vec4 e2 = patch.from_carrier(t2c);

    const int max_ring = static_cast<int>(std::ceil(kPi * r / step)) + 1;
    for (int k = 1; k <= max_ring; ++k) {
        double rho = k * step;          // geodesic radius
        double ang = rho / r;
        if (ang > kPi) break;
        double circ = kTwoPi * r * std::sin(ang);
        int m = std::max(6, static_cast<int>(std::ceil(circ / step)));
        bool any = false;
        for (int j = 0; j < m; ++j) {
            double th = kTwoPi * j / m;
            Vec4 q = patch.center +
                     r * (std::cos(ang) * n0 +
                          std::sin(ang) * (std::cos(th) * e1 + std::sin(th) * e2));
            if (patch.cone_contains_carrier(q, 1e-9)) {
                out.push_back(q);
                any = true;
            }
        }
        if (!any && rho > 2.0 * r) break;
    }

    // Boundary arcs and corners guarantee coverage near the clipped rim.
    for (const auto& arc : patch.boundary) {
        double len = (arc.t1 - arc.t0) * arc.radius;
        int m = std::max(2, static_cast<int>(std::ceil(len / step)) + 1);
        for (int j = 0; j <= m; ++j) {
            double t = arc.t0 + (arc.t1 - arc.t0) * j / m;
            out.push_back(arc.point(t));
        }
    }
    for (const auto& c : patch.corners) out.push_back(c);
    return out;
}

bool patch_contains(const SphericalPatch& patch, const Vec4& p, double tol) {
    if (std::abs(dist(p, patch.center) - patch.radius) > tol) return false;

    // Nonnegative least squares against the three cone generators, solved
    // exactly by enumerating active subsets.
    double best = norm2(p);
    for (int mask = 1; mask < 8; ++mask) {
        Vec4 cols[3];
        int idx[3], k = 0;
        for (int j = 0; j < 3; ++j)
            if (mask & (1 << j)) {
                cols[k] = patch.cone[j];
                idx[k] = j;
                ++k;
            }
        // Normal equations on the selected columns.
        double gram[3][3], rhs[3];
        for (int i = 0; i < k; ++i) {
            rhs[i] = dot(cols[i], p);
            for (int j = 0; j < k; ++j) gram[i][j] = dot(cols[i], cols[j]);
        }
        double lam[3] = {0, 0, 0};
        bool ok = true;
        if (k == 1) {
            lam[0] = rhs[0] / gram[0][0];
        } else if (k == 2) {
            double det = gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0];
            if (std::abs(det) < 1e-14) ok = false;
            else {
                lam[0] = (rhs[0] * gram[1][1] - gram[0][1] * rhs[1]) / det;
                lam[1] = (gram[0][0] * rhs[1] - rhs[0] * gram[1][0]) / det;
            }
        } else {
            std::array<std::array<double, 3>, 3> m{};
            Vec<3> b{rhs[0], rhs[1], rhs[2]}, sol{};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) m[i][j] = gram[i][j];
            if (!solve_linear<3>(m, b, sol)) ok = false;
            else
                for (int i = 0; i < 3; ++i) lam[i] = sol[i];
        }
        if (!ok) continue;
        bool feas = true;
        for (int i = 0; i < k; ++i)
            if (lam[i] < -1e-12) feas = false;
        if (!feas) continue;
        Vec4 fit{};
        for (int i = 0; i < k; ++i) fit += lam[i] * cols[i];
        best = std::min(best, norm2(p - fit));
        (void)idx;
    }
    return std::sqrt(best) <= tol;
}

NearestPiece distance_to_generators(const GeneratorSet& gs, const Vec4& p) {
    NearestPiece best{1e300, {}, ""};
    for (const auto& patch : gs.patches) {
        ExtremeResult<4> r = nearest_to(patch, p);
        if (r.value < best.dist) best = {r.value, r.point, patch.label};
    }
    return best;
}

std::vector<GenPiece<4>> decomposition_pieces(const GeneratorSet& gs) {
    std::vector<GenPiece<4>> out;
    for (const auto& p : gs.patches) out.emplace_back(p);
    for (const auto& a : gs.apex_arcs) out.emplace_back(a);
    for (const auto& a : gs.base_arcs) out.emplace_back(a);
    static const char* names[] = {"vertex_A", "vertex_B", "vertex_C", "vertex_D", "vertex_E"};
    for (int i = 0; i < 5; ++i)
        out.emplace_back(PointPiece<4>{gs.vertices[i], names[i], PieceKind::Vertex});
    return out;
}

Vec4 random_patch_point(const SphericalPatch& patch, std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t counter) {
    // Rejection from random nonnegative cone combinations projected to the
    // sphere; falls back to the centroid seed if unlucky.
    for (std::uint64_t k = 0; k < 64; ++k) {
        double l0 = rng::u01(seed, stream, counter * 256 + 3 * k + 0);
        double l1 = rng::u01(seed, stream, counter * 256 + 3 * k + 1);
        double l2 = rng::u01(seed, stream, counter * 256 + 3 * k + 2);
        Vec4 q = l0 * patch.cone[0] + l1 * patch.cone[1] + l2 * patch.cone[2];
        Vec4 rel = q - patch.center;
        double n = norm(rel);
        if (n < 1e-9) continue;
        Vec4 s = patch.center + (patch.radius / n) * rel;
        if (patch.cone_contains_carrier(s, 1e-12)) return s;
    }
    Vec4 mean{};
    for (const auto& c : patch.corners) mean += (c - patch.center);
    return patch.center + patch.radius * normalized(mean);
}

}  // namespace widthlab
