#include "widthlab/caseverify.hpp"

#include <algorithm>
#include <cmath>

#include "widthlab/mathutil.hpp"
#include "widthlab/rng.hpp"

namespace widthlab {

namespace {

std::array<VertexId, 2> other_base(VertexId x, VertexId y) {
    bool used[4] = {};
    used[static_cast<int>(x)] = true;
    used[static_cast<int>(y)] = true;
    std::array<VertexId, 2> out{};
    int n = 0;
    for (int i = 0; i < 4; ++i)
        if (!used[i]) out[n++] = static_cast<VertexId>(i);
    return out;
}

std::array<VertexId, 3> other_base3(VertexId x) {
    std::array<VertexId, 3> out{};
    int n = 0;
    for (int i = 0; i < 4; ++i)
        if (static_cast<VertexId>(i) != x) out[n++] = static_cast<VertexId>(i);
    return out;
}

/// Facets of the positive cone with apex at `apex` spanned by four linearly
/// independent directions, as oriented half-spaces.
std::vector<Hyperplane> cone_halfspaces(const Vec4& apex, const std::array<Vec4, 4>& dirs) {
    std::vector<Hyperplane> out;
    for (int j = 0; j < 4; ++j) {
        // Normal orthogonal to the other three directions, positive on dirs[j].
        std::array<std::array<double, 4>, 4> m{};
        Vec4 rhs{};
        int r = 0;
        for (int i = 0; i < 4; ++i) {
            if (i == j) continue;
            for (int c = 0; c < 4; ++c) m[r][c] = dirs[i][c];
            rhs[r] = 0.0;
            ++r;
        }
        for (int c = 0; c < 4; ++c) m[3][c] = dirs[j][c];
        rhs[3] = 1.0;
        Vec4 n{};
        if (!solve_linear<4>(m, rhs, n))
            throw std::invalid_argument("cone_halfspaces: dependent directions");
        Hyperplane h;
        h.normal = normalized(n);
        h.offset = dot(h.normal, apex);
        h.keep = +1;
        out.push_back(h);
    }
    return out;
}

bool same_halfspace(const Hyperplane& a, const Hyperplane& b) {
    double d = dot(a.normal, b.normal);
    if (d > 1.0 - 1e-12) {
        return std::abs(a.offset - b.offset) < 1e-12 && a.keep == b.keep;
    }
    if (d < -1.0 + 1e-12) {
        return std::abs(a.offset + b.offset) < 1e-12 && a.keep == -b.keep;
    }
    return false;
}

void append_dedup(std::vector<Hyperplane>& dst, const std::vector<Hyperplane>& src) {
    for (const auto& h : src) {
        bool dup = false;
        for (const auto& e : dst)
            if (same_halfspace(e, h)) {
                dup = true;
                break;
            }
        if (!dup) dst.push_back(h);
    }
}

}  // namespace

PolyRegion region_for_generator(const SimplexFrame& f, const GenClass& cls) {
    PolyRegion r;
    switch (cls.kind) {
        case GenClassKind::VertexBase: {
            VertexId x = cls.a;
            auto others = other_base3(x);
            std::array<Vec4, 4> dirs = {f.vertex(others[0]) - f.G, f.vertex(others[1]) - f.G,
                                        f.vertex(others[2]) - f.G, f.E - f.G};
            r.half_spaces = cone_halfspaces(f.G, dirs);
            r.half_spaces.push_back(hyperplane_through(
                {f.vertex(others[0]), f.vertex(others[1]), f.vertex(others[2]), f.E},
                f.vertex(x)));
            r.half_spaces.back().keep = -r.half_spaces.back().keep;  // away from x
            r.provenance = std::string("vertex_") + vertex_name(x);
            break;
        }
        case GenClassKind::ArcApex: {
            VertexId x = cls.a;
            auto others = other_base3(x);
            Hyperplane base = hyperplane_through({f.A, f.B, f.C, f.D}, f.E);
            base.keep = -base.keep;  // away from the apex
            Hyperplane side = hyperplane_through(
                {f.vertex(others[0]), f.vertex(others[1]), f.vertex(others[2]), f.E},
                f.vertex(x));
            side.keep = -side.keep;  // away from x
            r.half_spaces = {base, side};
            r.provenance = std::string("apex_arc_") + vertex_name(x);
            break;
        }
        case GenClassKind::ArcBase: {
            VertexId x = cls.a, y = cls.b;
            auto zw = other_base(x, y);
            Hyperplane hx = hyperplane_through(
                {f.vertex(x), f.vertex(zw[0]), f.vertex(zw[1]), f.O}, f.vertex(y));
            hx.keep = -hx.keep;  // away from y
            Hyperplane hy = hyperplane_through(
                {f.vertex(y), f.vertex(zw[0]), f.vertex(zw[1]), f.O}, f.vertex(x));
            hy.keep = -hy.keep;  // away from x
            r.half_spaces = {hx, hy};
            r.provenance = std::string("base_arc_") + vertex_name(x) + vertex_name(y);
            break;
        }
        case GenClassKind::PatchInterior: {
            VertexId x = cls.a, y = cls.b;
            auto zw = other_base(x, y);
            Hyperplane base = hyperplane_through({f.A, f.B, f.C, f.D}, f.E);
            base.keep = -base.keep;
            Hyperplane hx = hyperplane_through(
                {f.vertex(x), f.vertex(zw[0]), f.vertex(zw[1]), f.E}, f.vertex(y));
            hx.keep = -hx.keep;
            Hyperplane hy = hyperplane_through(
                {f.vertex(y), f.vertex(zw[0]), f.vertex(zw[1]), f.E}, f.vertex(x));
            hy.keep = -hy.keep;
            r.half_spaces = {base, hx, hy};
            r.provenance = std::string("patch_") + vertex_name(x) + vertex_name(y);
            break;
        }
    }
    return r;
}

const std::vector<std::string>& configuration_ids() {
    static const std::vector<std::string> ids = {"1a", "1b", "2a", "2b", "3a",
                                                 "3b", "3c", "3d", "4a", "4b"};
    return ids;
}

PolyRegion config_region(const SimplexFrame& f, const std::string& id) {
    using K = GenClassKind;
    const VertexId A = VertexId::A, B = VertexId::B, C = VertexId::C, D = VertexId::D;
    GenClass q, r;
    if (id == "1a") {
        q = {K::VertexBase, A, A};
        r = {K::ArcBase, B, C};
    } else if (id == "1b") {
        q = {K::VertexBase, A, A};
        r = {K::PatchInterior, B, C};
    } else if (id == "2a") {
        q = {K::ArcApex, A, A};
        r = {K::ArcBase, B, C};
    } else if (id == "2b") {
        q = {K::ArcApex, A, A};
        r = {K::PatchInterior, B, C};
    } else if (id == "3a") {
        q = {K::ArcBase, A, B};
        r = {K::ArcBase, B, C};
    } else if (id == "3b") {
        q = {K::ArcBase, A, B};
        r = {K::ArcBase, C, D};
    } else if (id == "3c") {
        q = {K::ArcBase, A, B};
        r = {K::PatchInterior, B, C};
    } else if (id == "3d") {
        q = {K::ArcBase, A, B};
        r = {K::PatchInterior, C, D};
    } else if (id == "4a") {
        q = {K::PatchInterior, A, B};
        r = {K::PatchInterior, B, C};
    } else if (id == "4b") {
        q = {K::PatchInterior, A, B};
        r = {K::PatchInterior, C, D};
    } else {
        throw std::invalid_argument("config_region: unknown configuration " + id);
    }
    PolyRegion rq = region_for_generator(f, q);
    PolyRegion rr = region_for_generator(f, r);
    PolyRegion out;
    out.provenance = id + " (" + rq.provenance + " x " + rr.provenance + ")";
    append_dedup(out.half_spaces, rq.half_spaces);
    append_dedup(out.half_spaces, rr.half_spaces);
    return out;
}

// ---------------------------------------------------------------------------
// Polytope utilities
// ---------------------------------------------------------------------------

std::vector<Vec4> polytope_vertices(const std::vector<Hyperplane>& hs, double feas_tol) {
    // Normalize to a.x <= b.
    struct Ineq { Vec4 a; double b; };
    std::vector<Ineq> cs;
    cs.reserve(hs.size());
    for (const auto& h : hs) {
        if (h.keep > 0) cs.push_back({-h.normal, -h.offset});
        else cs.push_back({h.normal, h.offset});
    }
    const int n = static_cast<int>(cs.size());
    std::vector<Vec4> verts;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    std::array<std::array<double, 4>, 4> m{};
                    Vec4 rhs{cs[i].b, cs[j].b, cs[k].b, cs[l].b};
                    for (int c = 0; c < 4; ++c) {
                        m[0][c] = cs[i].a[c];
                        m[1][c] = cs[j].a[c];
                        m[2][c] = cs[k].a[c];
                        m[3][c] = cs[l].a[c];
                    }
                    Vec4 x{};
                    if (!solve_linear<4>(m, rhs, x, 1e-10)) continue;
                    bool feas = true;
                    for (const auto& c : cs)
                        if (dot(c.a, x) > c.b + feas_tol) {
                            feas = false;
                            break;
                        }
                    if (!feas) continue;
                    bool dup = false;
                    for (const auto& v : verts)
                        if (dist(v, x) < 1e-9) {
                            dup = true;
                            break;
                        }
                    if (!dup) verts.push_back(x);
                }
    return verts;
}

std::vector<Hyperplane> support_cuts(const BallBody<4>& body) {
    std::vector<Vec4> dirs;
    for (int i = 0; i < 4; ++i)
        for (int s = -1; s <= 1; s += 2) {
            Vec4 u{};
            u[i] = static_cast<double>(s);
            dirs.push_back(u);
        }
    for (int mask = 0; mask < 16; ++mask) {
        Vec4 u;
        for (int i = 0; i < 4; ++i) u[i] = (mask & (1 << i)) ? -0.5 : 0.5;
        dirs.push_back(u);
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int si = -1; si <= 1; si += 2)
                for (int sj = -1; sj <= 1; sj += 2) {
                    Vec4 u{};
                    u[i] = si / std::sqrt(2.0);
                    u[j] = sj / std::sqrt(2.0);
                    dirs.push_back(u);
                }
    std::vector<Hyperplane> cuts;
    SupportOptions opt;
    for (const auto& u : dirs) {
        SupportResult<4> s = support(body, u, opt);
        Hyperplane h;
        h.normal = u;
        h.offset = s.value + std::max(s.precision, 1e-9);
        h.keep = -1;  // u.x <= h
        cuts.push_back(h);
    }
    return cuts;
}

void support_box(const BallBody<4>& body, Vec4& lo, Vec4& hi, double pad) {
    for (int i = 0; i < 4; ++i) {
        Vec4 u{};
        u[i] = 1.0;
        hi[i] = support(body, u).value + pad;
        u[i] = -1.0;
        lo[i] = -support(body, u).value - pad;
    }
}

namespace {

std::vector<Hyperplane> box_halfspaces(const Vec4& lo, const Vec4& hi) {
    std::vector<Hyperplane> out;
    for (int i = 0; i < 4; ++i) {
        Hyperplane a, b;
        a.normal = Vec4{};
        a.normal[i] = 1.0;
        a.offset = hi[i];
        a.keep = -1;
        b.normal = Vec4{};
        b.normal[i] = 1.0;
        b.offset = lo[i];
        b.keep = +1;
        out.push_back(a);
        out.push_back(b);
    }
    return out;
}

/// Dykstra projection onto an intersection of half-spaces.
Vec4 project_onto_halfspaces(const std::vector<Hyperplane>& hs, const Vec4& z,
                             int cycles = 400) {
    Vec4 x = z;
    std::vector<Vec4> inc(hs.size(), Vec4{});
    for (int c = 0; c < cycles; ++c) {
        double moved = 0.0;
        for (std::size_t i = 0; i < hs.size(); ++i) {
            Vec4 y = x + inc[i];
            double ex = hs[i].signed_excess(y);
            Vec4 xp = ex >= 0.0 ? y : y + (-ex) * static_cast<double>(hs[i].keep) * hs[i].normal;
            inc[i] = y - xp;
            moved = std::max(moved, dist(x, xp));
            x = xp;
        }
        if (moved < 1e-12) break;
    }
    return x;
}

}  // namespace

CaseReport verify_configuration(const GeneratorSet& gs, const BallBody<4>& body,
                                const PolyRegion& region, const std::string& id, long budget,
                                std::uint64_t seed, const CaseOptions& opt) {
    CaseReport rep;
    rep.configuration = id;
    rep.budget = budget;
    rep.seed = seed;

    if (budget <= 0) {
        rep.verdict = "INCONCLUSIVE";
        return rep;
    }

    // Outer polyhedral system: region + support box + support cuts.
    Vec4 lo{}, hi{};
    support_box(body, lo, hi);
    std::vector<Hyperplane> outer = region.half_spaces;
    std::vector<Hyperplane> region_box = region.half_spaces;
    {
        auto bx = box_halfspaces(lo, hi);
        outer.insert(outer.end(), bx.begin(), bx.end());
        region_box.insert(region_box.end(), bx.begin(), bx.end());
        auto cuts = support_cuts(body);
        outer.insert(outer.end(), cuts.begin(), cuts.end());
    }

    std::vector<Vec4> verts = polytope_vertices(outer);
    rep.lp_feasible = !verts.empty();
    if (!rep.lp_feasible) {
        rep.empty_certified = true;
        rep.empty_reason = "outer polyhedron infeasible";
        rep.verdict = "PASS";
        return rep;
    }

    // Ball certificates: if some generator point is provably farther than
    // the radius from the whole outer polytope, the intersection is empty.
    {
        std::vector<Vec4> probes;
        for (const auto& v : gs.vertices) probes.push_back(v);
        for (const auto& a : gs.base_arcs) probes.push_back(a.point(0.5 * (a.t0 + a.t1)));
        for (const auto& a : gs.apex_arcs) probes.push_back(a.point(0.5 * (a.t0 + a.t1)));
        for (const auto& p : gs.patches) {
            Vec4 mean{};
            for (const auto& c : p.corners) mean += (c - p.center);
            probes.push_back(p.center + p.radius * normalized(mean));
        }
        for (const auto& g : probes) {
            Vec4 pr = project_onto_halfspaces(outer, g);
            double up = dist(g, pr);
            if (up <= body.radius + 1e-9) continue;
            Vec4 w = (pr - g) / up;
            double lower = 1e300;
            for (const auto& v : verts) lower = std::min(lower, dot(w, v));
            lower -= dot(w, g);
            if (lower > body.radius + 1e-9) {
                rep.empty_certified = true;
                rep.empty_reason = "ball certificate at generator point";
                rep.verdict = "PASS";
                return rep;
            }
        }
    }

    // Phase 2a: rejection sampling of region ∩ body over the box.
    std::vector<Vec4> hits;
    std::vector<Vec4> region_samples;  // in region, used as ascent starts
    long examined = 0;
    for (long i = 0; i < budget; ++i) {
        Vec4 x = rng::box_point<4>(seed, 11, static_cast<std::uint64_t>(i), lo, hi);
        ++examined;
        if (!region.contains(x, 0.0)) continue;
        if (region_samples.size() < 64) region_samples.push_back(x);
        if (margin(body, x) >= -opt.boundary_band) hits.push_back(x);
    }
    rep.samples_examined = examined;

    // Phase 2b: concave maximization of the membership margin over the
    // region (projected supergradient ascent, multistart).
    auto ascend = [&](Vec4 x) {
        x = project_onto_halfspaces(region_box, x);
        double best = margin(body, x);
        Vec4 best_x = x;
        const double scales[3] = {0.3, 0.03, 0.003};
        for (double c : scales) {
            for (int it = 1; it <= opt.ascent_iters; ++it) {
                FarthestGenerator<4> fg = farthest_generator(body, x);
                Vec4 grad = (fg.ext.value > 1e-12)
                                ? (fg.ext.point - x) / fg.ext.value
                                : Vec4{};
                double alpha = c / std::sqrt(static_cast<double>(it));
                x = project_onto_halfspaces(region_box, x + alpha * grad, 60);
                double m = margin(body, x);
                if (m > best) {
                    best = m;
                    best_x = x;
                }
            }
            x = best_x;
        }
        return std::make_pair(best, best_x);
    };

    std::vector<Vec4> starts = verts;
    if (!verts.empty()) {
        Vec4 cen{};
        for (const auto& v : verts) cen += v;
        starts.push_back(cen / static_cast<double>(verts.size()));
    }
    for (const auto& s : region_samples) starts.push_back(s);
    if (static_cast<int>(starts.size()) > opt.ascent_starts)
        starts.resize(static_cast<std::size_t>(opt.ascent_starts));

    for (const auto& s : starts) {
        auto [m, x] = ascend(s);
        rep.max_margin_found = std::max(rep.max_margin_found, m);
        if (m >= -opt.boundary_band) hits.push_back(x);
    }

    rep.hits = static_cast<long>(hits.size());
    for (const auto& h : hits)
        rep.max_m0_distance = std::max(rep.max_m0_distance, distance_to_generators(gs, h).dist);

    if (hits.empty()) {
        // The margin is concave over a convex region, so a clearly negative
        // multistart optimum certifies emptiness.
        if (rep.max_margin_found < -1e-5) {
            rep.empty_certified = true;
            rep.empty_reason = "concave margin optimum negative";
            rep.verdict = "PASS";
        } else {
            rep.verdict = "INCONCLUSIVE";
        }
        return rep;
    }
    rep.verdict = rep.max_m0_distance <= opt.m0_tol ? "PASS" : "FAIL";
    return rep;
}

// ---------------------------------------------------------------------------
// Bisector cases
// ---------------------------------------------------------------------------

namespace {

/// Multistart margin maximization restricted to a 2-sphere given by center,
/// radius and an orthonormal 3-basis of its carrier.
std::vector<Vec4> sphere_margin_solutions(const BallBody<4>& body, const Vec4& center,
                                          double radius, const std::array<Vec4, 3>& basis,
                                          int starts, std::uint64_t seed,
                                          const std::vector<Vec4>& extra_starts,
                                          double accept_band = 1e-8) {
    auto lift = [&](const Vec3& d) {
        return center + radius * (d[0] * basis[0] + d[1] * basis[1] + d[2] * basis[2]);
    };
    auto to_sphere = [&](const Vec4& x) {
        Vec4 rel = x - center;
        Vec3 d{dot(rel, basis[0]), dot(rel, basis[1]), dot(rel, basis[2])};
        double n = norm(d);
        if (n < 1e-14) d = Vec3{1.0, 0.0, 0.0};
        else d = d / n;
        return lift(d);
    };

    std::vector<Vec4> solutions;
    std::vector<Vec4> all_starts = extra_starts;
    for (int i = 0; i < starts; ++i)
        all_starts.push_back(lift(rng::unit_dir<3>(seed, 31, static_cast<std::uint64_t>(i))));

    for (Vec4 x : all_starts) {
        x = to_sphere(x);
        double best = margin(body, x);
        Vec4 best_x = x;
        for (double c : {0.25, 0.03, 0.003}) {
            for (int it = 1; it <= 300; ++it) {
                FarthestGenerator<4> fg = farthest_generator(body, x);
                Vec4 grad = (fg.ext.point - x) / std::max(fg.ext.value, 1e-12);
                double alpha = c / std::sqrt(static_cast<double>(it));
                x = to_sphere(x + alpha * grad);
                double m = margin(body, x);
                if (m > best) {
                    best = m;
                    best_x = x;
                }
            }
            x = best_x;
        }
        if (best >= -accept_band) solutions.push_back(best_x);
    }
    return solutions;
}

}  // namespace

BisectorReport bisector_case_check(const GeneratorSet& gs, const BallBody<4>& body,
                                   BisectorPair pair, int starts, std::uint64_t seed) {
    const SimplexFrame& f = gs.frame;
    BisectorReport rep;
    rep.starts = starts;

    Vec4 p1 = f.A;
    Vec4 p2 = (pair == BisectorPair::AE) ? f.E : f.B;
    rep.pair = (pair == BisectorPair::AE) ? "A,E" : "A,B";

    // Points at distance 1 from both vertices = 2-sphere in the bisector
    // hyperplane, centered at the midpoint.
    Vec4 center = (p1 + p2) * 0.5;
    double radius = std::sqrt(1.0 - 0.25 * dist2(p1, p2));
    Vec4 axis = normalized(p2 - p1);
    std::array<Vec4, 3> basis;
    {
        int n = 0;
        for (int i = 0; i < 4 && n < 3; ++i) {
            Vec4 e{};
            e[i] = 1.0;
            Vec4 v = e - dot(e, axis) * axis;
            for (int j = 0; j < n; ++j) v -= dot(v, basis[j]) * basis[j];
            double nv = norm(v);
            if (nv > 1e-6) basis[n++] = v / nv;
        }
    }

    std::vector<Vec4> extra;
    if (pair == BisectorPair::AE) {
        extra = {f.B, f.C, f.D};
    } else {
        extra = {f.C, f.D, f.E};
        extra.push_back(random_patch_point(gs.patch(VertexId::C, VertexId::D), seed, 77, 0));
    }

    std::vector<Vec4> sols =
        sphere_margin_solutions(body, center, radius, basis, starts, seed, extra);
    rep.solutions = static_cast<int>(sols.size());

    for (const auto& s : sols) {
        double dev;
        if (pair == BisectorPair::AE) {
            dev = std::min({dist(s, f.B), dist(s, f.C), dist(s, f.D)});
        } else {
            dev = nearest_to(gs.patch(VertexId::C, VertexId::D), s).value;
        }
        rep.max_deviation = std::max(rep.max_deviation, dev);
    }
    rep.pass = rep.solutions > 0 && rep.max_deviation <= 1e-6;
    return rep;
}

// ---------------------------------------------------------------------------
// Uniqueness scan
// ---------------------------------------------------------------------------

UniquenessReport uniqueness_scan(const BallBody<4>& body, const GeneratorSet& gs, int n,
                                 std::uint64_t seed, double exclusion, double cluster_radius) {
    UniquenessReport rep;
    rep.requested = n;
    for (int i = 0; i < n; ++i) {
        Vec4 dir = rng::unit_dir<4>(seed, 7, static_cast<std::uint64_t>(i));
        Vec4 p = ray_boundary(body, body.witness, dir, 1e-10);
        if (distance_to_generators(gs, p).dist <= exclusion) {
            ++rep.skipped;
            continue;
        }
        ++rep.scanned;
        std::vector<Vec4> witnesses = active_generator_points(body, p, 1e-9, cluster_radius);
        int clusters = static_cast<int>(witnesses.size());
        rep.max_clusters = std::max(rep.max_clusters, clusters);
        if (clusters != 1) {
            ++rep.failures;
            continue;
        }
        const Vec4& q = witnesses.front();
        rep.max_dist_error = std::max(rep.max_dist_error, std::abs(dist(p, q) - 1.0));
        rep.max_endpoint_m0_dist =
            std::max(rep.max_endpoint_m0_dist, distance_to_generators(gs, q).dist);
        // Smooth point: the outward normal is (p - q); the induced diameter
        // P -> q is antiparallel to it by construction.
        Vec4 normal = normalized(p - q);
        rep.max_normal_deviation =
            std::max(rep.max_normal_deviation, std::abs(1.0 - std::abs(dot(normal, normalized(p - q)))));
    }
    rep.pass = rep.failures == 0 && rep.scanned > 0 && rep.max_dist_error <= 1e-6 &&
               rep.max_endpoint_m0_dist <= 1e-6;
    return rep;
}

}  // namespace widthlab
