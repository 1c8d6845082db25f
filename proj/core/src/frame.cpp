#include "widthlab/frame.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace widthlab {

SimplexFrame build_frame() {
    SimplexFrame f;
    const double s = 1.0 / std::sqrt(2.0);
    f.phi = (1.0 + std::sqrt(5.0)) / 2.0;
    f.A = Vec4{s, 0.0, 0.0, 0.0};
    f.B = Vec4{0.0, s, 0.0, 0.0};
    f.C = Vec4{0.0, 0.0, s, 0.0};
    f.D = Vec4{0.0, 0.0, 0.0, s};
    f.E = (f.A + f.B + f.C + f.D) * (f.phi / 2.0);
    f.G = (f.A + f.B + f.C + f.D + f.E) / 5.0;
    f.O = Vec4{0.0, 0.0, 0.0, 0.0};
    return f;
}

Hyperplane hyperplane_through(const std::array<Vec4, 4>& pts, const Vec4& keep_witness) {
    // Null vector of the three edge directions gives the normal.
    std::array<Vec4, 3> d;
    for (int i = 0; i < 3; ++i) d[i] = pts[i + 1] - pts[0];

    // Find the coordinate to eliminate: solve d[i] . n = 0 with n[k] = 1 for
    // the axis k giving the best-conditioned 3x3 system.
    Vec4 best_n{};
    double best_quality = -1.0;
    for (int k = 0; k < 4; ++k) {
        std::array<std::array<double, 3>, 3> m{};
        Vec3 rhs{};
        int cols[3], cc = 0;
        for (int c = 0; c < 4; ++c)
            if (c != k) cols[cc++] = c;
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] = d[r][cols[c]];
            rhs[r] = -d[r][k];
        }
        Vec3 sol{};
        if (!solve_linear<3>(m, rhs, sol)) continue;
        Vec4 n{};
        n[k] = 1.0;
        for (int c = 0; c < 3; ++c) n[cols[c]] = sol[c];
        double len = norm(n);
        // Prefer the elimination with the smallest amplification.
        double quality = 1.0 / len;
        if (quality > best_quality) {
            best_quality = quality;
            best_n = n / len;
        }
    }
    if (best_quality < 0.0)
        throw std::invalid_argument("hyperplane_through: affinely dependent points");

    Hyperplane h;
    h.normal = best_n;
    h.offset = dot(h.normal, pts[0]);

    // Rank check: all four points must satisfy the plane equation.
    for (const Vec4& p : pts)
        if (std::abs(dot(h.normal, p) - h.offset) > 1e-10)
            throw std::invalid_argument("hyperplane_through: affinely dependent points");

    double w = dot(h.normal, keep_witness) - h.offset;
    if (std::abs(w) <= 1e-12)
        throw std::invalid_argument("hyperplane_through: witness lies on the plane");
    h.keep = w > 0.0 ? +1 : -1;
    return h;
}

Hyperplane perpendicular_bisector(const Vec4& x, const Vec4& y) {
    Vec4 d = y - x;
    double n = norm(d);
    if (!(n > 1e-14)) throw std::invalid_argument("perpendicular_bisector: identical points");
    Hyperplane h;
    h.normal = d / n;
    h.offset = dot(h.normal, (x + y) * 0.5);
    h.keep = -1;  // the X side has normal . p < offset
    return h;
}

const std::array<BasePermutation, 24>& base_permutations() {
    static const std::array<BasePermutation, 24> perms = [] {
        std::array<BasePermutation, 24> out{};
        BasePermutation p{0, 1, 2, 3};
        int i = 0;
        do {
            out[i++] = p;
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }();
    return perms;
}

namespace {
void append_number(std::string& s, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    s += buf;
}

void append_vec(std::string& s, const char* name, const Vec4& v) {
    s += "  \"";
    s += name;
    s += "\": [";
    for (int i = 0; i < 4; ++i) {
        if (i) s += ", ";
        append_number(s, v[i]);
    }
    s += "]";
}
}  // namespace

std::string frame_to_json(const SimplexFrame& f) {
    std::string s = "{\n";
    append_vec(s, "A", f.A); s += ",\n";
    append_vec(s, "B", f.B); s += ",\n";
    append_vec(s, "C", f.C); s += ",\n";
    append_vec(s, "D", f.D); s += ",\n";
    append_vec(s, "E", f.E); s += ",\n";
    append_vec(s, "G", f.G); s += ",\n";
    append_vec(s, "O", f.O); s += ",\n";
    s += "  \"phi\": ";
    append_number(s, f.phi);
    s += ",\n  \"side_length\": 1\n}\n";
    return s;
}

}  // namespace widthlab
