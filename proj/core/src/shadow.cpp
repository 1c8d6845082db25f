#include "widthlab/shadow.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "widthlab/rng.hpp"

namespace widthlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ProjectionMap make_projection(const SimplexFrame& f) {
    ProjectionMap pm;
    pm.e_dir = normalized(f.E);
    pm.basis = {Vec4{0.5, 0.5, -0.5, -0.5}, Vec4{0.5, -0.5, 0.5, -0.5},
                Vec4{-0.5, 0.5, 0.5, -0.5}};
    return pm;
}

EllipticalArc make_arc(const ProjectionMap& pm, const SimplexFrame& f, VertexId x, VertexId y) {
    if (x == y || x == VertexId::E || y == VertexId::E)
        throw std::invalid_argument("make_arc: two distinct base vertices expected");
    EllipticalArc arc;
    arc.u = pm.project(f.vertex(x));
    arc.v = pm.project(f.vertex(y));
    arc.t0 = 0.0;
    arc.t1 = kPi / 2.0;
    arc.label = std::string("ell_") + vertex_name(x) + vertex_name(y);
    arc.kind = PieceKind::ShadowEdge;
    return arc;
}

ArcAxes arc_axes(const EllipticalArc& arc) {
    const double s = 1.0 / std::sqrt(2.0);
    double r1 = norm(arc.u + arc.v) * s;
    double r2 = norm(arc.u - arc.v) * s;
    ArcAxes ax;
    ax.a = std::max(r1, r2);
    ax.b = std::min(r1, r2);
    ax.e = std::sqrt(std::max(0.0, 1.0 - (ax.b * ax.b) / (ax.a * ax.a)));
    return ax;
}

namespace {

std::pair<VertexId, VertexId> opposite_sorted(VertexId x, VertexId y) {
    bool used[4] = {};
    used[static_cast<int>(x)] = true;
    used[static_cast<int>(y)] = true;
    int out[2], n = 0;
    for (int i = 0; i < 4; ++i)
        if (!used[i]) out[n++] = i;
    return {static_cast<VertexId>(out[0]), static_cast<VertexId>(out[1])};
}

}  // namespace

Vec3 opposite_point(const ProjectionMap& pm, const SimplexFrame& f, VertexId x, VertexId y,
                    double t) {
    if (static_cast<int>(x) > static_cast<int>(y)) std::swap(x, y);
    auto [z, w] = opposite_sorted(x, y);
    return make_arc(pm, f, z, w).point(t);
}

ShadowBody build_shadow(const SimplexFrame& f) {
    ShadowBody sb;
    sb.pm = make_projection(f);
    const auto& order = GeneratorSet::pair_order();
    for (std::size_t i = 0; i < order.size(); ++i)
        sb.arcs[i] = make_arc(sb.pm, f, order[i].first, order[i].second);
    sb.body.name = "shadow";
    sb.body.radius = 1.0;
    sb.body.witness = Vec3{0.0, 0.0, 0.0};
    for (const auto& a : sb.arcs) sb.body.gens.emplace_back(a);
    return sb;
}

ProjectedPatchReport projected_patch_check(const ShadowBody& sb, const GeneratorSet& gs,
                                           VertexId x, VertexId y, double spacing) {
    ProjectedPatchReport rep;
    const SphericalPatch& patch = gs.patch(x, y);
    Vec3 u = sb.pm.project(gs.frame.vertex(x));
    Vec3 v = sb.pm.project(gs.frame.vertex(y));
    double guu = dot(u, u), gvv = dot(v, v), guv = dot(u, v);
    double det = guu * gvv - guv * guv;

    rep.min_interior_margin = 1e300;
    rep.min_coeff = 1e300;
    for (const Vec4& p : sample_patch(patch, spacing)) {
        Vec3 img = sb.pm.project(p);
        // Coordinates in the (u, v) frame via the Gram system.
        double bu = dot(img, u), bv = dot(img, v);
        double a = (bu * gvv - guv * bv) / det;
        double b = (guu * bv - guv * bu) / det;
        rep.max_plane_residual =
            std::max(rep.max_plane_residual, norm(img - (a * u + b * v)));
        rep.min_coeff = std::min(rep.min_coeff, std::min(a, b));
        double lambda = std::hypot(a, b);
        rep.max_lambda = std::max(rep.max_lambda, lambda);
        if (lambda < 1.0 - 1e-3)
            rep.min_interior_margin = std::min(rep.min_interior_margin, margin(sb.body, img));
        ++rep.samples;
    }
    rep.pass = rep.max_plane_residual <= 1e-8 && rep.min_coeff >= -1e-8 &&
               rep.max_lambda <= 1.0 + 1e-8 && rep.min_interior_margin > 0.0;
    return rep;
}

EquivalenceReport equivalence_check(const ShadowBody& sb, const BallBody<4>& m4, long n,
                                    std::uint64_t seed, double band, int threads) {
    EquivalenceReport rep;
    rep.samples = n;

    const Vec3 lo{-0.65, -0.65, -0.65}, hi{0.65, 0.65, 0.65};
    // Fiber bracket along the apex axis from exact support values.
    const Vec4 e4 = sb.pm.e_dir;
    const double s_hi = support(m4, e4).value + 0.05;
    const double s_lo = -support(m4, -e4).value - 0.05;

    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
    threads = std::min<long>(threads, std::max<long>(1, n));

    std::vector<long> excluded(threads, 0), agree(threads, 0), compared(threads, 0);
    auto worker = [&](int ti) {
        long begin = n * ti / threads, end = n * (ti + 1) / threads;
        for (long i = begin; i < end; ++i) {
            Vec3 y = rng::box_point<3>(seed, 21, static_cast<std::uint64_t>(i), lo, hi);
            double m3 = margin(sb.body, y);

            // Concave 1D maximization of the 4D margin along the fiber.
            Vec4 base = sb.pm.lift(y);
            double a = s_lo, b = s_hi;
            auto f = [&](double s) { return margin(m4, base + s * e4); };
            for (int it = 0; it < 80; ++it) {
                double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
                if (f(m1) < f(m2)) a = m1;
                else b = m2;
                if (b - a < 1e-9) break;
            }
            double m4max = f(0.5 * (a + b));

            if (std::abs(m3) <= band || std::abs(m4max) <= band) {
                ++excluded[ti];
                continue;
            }
            ++compared[ti];
            if ((m3 >= 0.0) == (m4max >= 0.0)) ++agree[ti];
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();

    for (int t = 0; t < threads; ++t) {
        rep.excluded += excluded[t];
        rep.compared += compared[t];
        rep.agreements += agree[t];
    }
    rep.agreement_rate =
        rep.compared > 0 ? static_cast<double>(rep.agreements) / rep.compared : 1.0;
    rep.pass = rep.agreement_rate >= 0.999;
    return rep;
}

CircularProjectionResult circular_projection_search(const ShadowBody& sb, int resolution,
                                                    int directions) {
    CircularProjectionResult out;

    auto plane_residual = [&](const Vec3& normal, double& wmin, double& wmax) {
        Vec3 n = normalized(normal);
        Vec3 q1{1.0, 0.0, 0.0};
        if (std::abs(n[0]) > 0.9) q1 = Vec3{0.0, 1.0, 0.0};
        q1 = normalized(q1 - dot(q1, n) * n);
        Vec3 q2{n[1] * q1[2] - n[2] * q1[1], n[2] * q1[0] - n[0] * q1[2],
                n[0] * q1[1] - n[1] * q1[0]};
        std::vector<double> h(directions);
        double c0 = 0.0, c1 = 0.0, c2 = 0.0;
        wmin = 1e300;
        wmax = -1e300;
        for (int k = 0; k < directions; ++k) {
            double th = kTwoPi * k / directions;
            Vec3 u = std::cos(th) * q1 + std::sin(th) * q2;
            h[k] = support(sb.body, u).value;
            c0 += h[k];
            c1 += h[k] * std::cos(th);
            c2 += h[k] * std::sin(th);
        }
        c0 /= directions;
        c1 *= 2.0 / directions;
        c2 *= 2.0 / directions;
        double resid = 0.0;
        for (int k = 0; k < directions; ++k) {
            double th = kTwoPi * k / directions;
            resid = std::max(resid,
                             std::abs(h[k] - (c0 + c1 * std::cos(th) + c2 * std::sin(th))));
        }
        for (int k = 0; k < directions / 2; ++k) {
            double w = h[k] + h[k + directions / 2];
            wmin = std::min(wmin, w);
            wmax = std::max(wmax, w);
        }
        return resid;
    };

    std::vector<Vec3> normals;
    // Symmetry axes first: coordinate axes (2-fold) and vertex directions
    // (3-fold), then a Fibonacci cover of the hemisphere.
    normals.push_back(Vec3{1.0, 0.0, 0.0});
    normals.push_back(Vec3{0.0, 1.0, 0.0});
    normals.push_back(Vec3{0.0, 0.0, 1.0});
    const double s = 1.0 / std::sqrt(3.0);
    normals.push_back(Vec3{s, s, -s});
    normals.push_back(Vec3{s, -s, s});
    normals.push_back(Vec3{-s, s, s});
    normals.push_back(Vec3{-s, -s, -s});
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int i = 0; i < resolution; ++i) {
        double z = (i + 0.5) / resolution;  // hemisphere
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double th = kTwoPi * i / golden;
        normals.push_back(Vec3{r * std::cos(th), r * std::sin(th), z});
    }

    double wmin, wmax;
    for (const auto& n : normals) {
        double resid = plane_residual(n, wmin, wmax);
        ++out.planes_scanned;
        if (resid < out.best_residual) {
            out.best_residual = resid;
            out.best_normal = normalized(n);
            out.width_min = wmin;
            out.width_max = wmax;
        }
    }

    // Local refinement around the best normal.
    double step = 0.2;
    for (int level = 0; level < 4; ++level) {
        Vec3 n0 = out.best_normal;
        Vec3 t1{1.0, 0.0, 0.0};
        if (std::abs(n0[0]) > 0.9) t1 = Vec3{0.0, 1.0, 0.0};
        t1 = normalized(t1 - dot(t1, n0) * n0);
        Vec3 t2{n0[1] * t1[2] - n0[2] * t1[1], n0[2] * t1[0] - n0[0] * t1[2],
                n0[0] * t1[1] - n0[1] * t1[0]};
        for (int a = -2; a <= 2; ++a)
            for (int b = -2; b <= 2; ++b) {
                if (a == 0 && b == 0) continue;
                Vec3 n = normalized(n0 + step * (a * t1 + b * t2));
                double resid = plane_residual(n, wmin, wmax);
                ++out.planes_scanned;
                if (resid < out.best_residual) {
                    out.best_residual = resid;
                    out.best_normal = n;
                    out.width_min = wmin;
                    out.width_max = wmax;
                }
            }
        step *= 0.35;
    }

    // Control value at a fixed generic plane.
    double gmin, gmax;
    out.generic_residual = plane_residual(normalized(Vec3{0.3, 0.55, 0.9}), gmin, gmax);
    return out;
}

}  // namespace widthlab
