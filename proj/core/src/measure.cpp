#include "widthlab/measure.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <stdexcept>

namespace widthlab {

void parallel_chunks(long n, int threads, const std::function<void(int, long, long)>& work) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
    threads = static_cast<int>(std::min<long>(threads, std::max<long>(1, n)));
    if (threads == 1) {
        work(0, 0, n);
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] { work(t, n * t / threads, n * (t + 1) / threads); });
    for (auto& th : pool) th.join();
}

namespace {

struct IcoSphere {
    std::vector<Vec3> verts;  // unit directions
    std::vector<std::array<int, 3>> faces;
};

IcoSphere icosphere(int subdiv) {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> v = {
        {-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1},
    };
    for (auto& p : v) p = normalized(p);
    std::vector<std::array<int, 3>> f = {
        {0, 11, 5}, {0, 5, 1},   {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4},  {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},   {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11},  {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
    };
    for (int level = 0; level < subdiv; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            Vec3 m = normalized(v[static_cast<std::size_t>(a)] + v[static_cast<std::size_t>(b)]);
            v.push_back(m);
            int idx = static_cast<int>(v.size()) - 1;
            midpoint[key] = idx;
            return idx;
        };
        std::vector<std::array<int, 3>> nf;
        nf.reserve(f.size() * 4);
        for (const auto& t : f) {
            int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
            nf.push_back({t[0], ab, ca});
            nf.push_back({t[1], bc, ab});
            nf.push_back({t[2], ca, bc});
            nf.push_back({ab, bc, ca});
        }
        f = std::move(nf);
    }
    return {std::move(v), std::move(f)};
}

}  // namespace

Mesh extract_mesh(const BallBody<3>& body, int subdiv) {
    if (margin(body, body.witness) <= 0.0)
        throw std::invalid_argument("extract_mesh: witness must be interior");
    IcoSphere ico = icosphere(subdiv);
    Mesh mesh;
    mesh.vertices.resize(ico.verts.size());
    mesh.margins.resize(ico.verts.size());
    mesh.faces = std::move(ico.faces);
    parallel_chunks(static_cast<long>(ico.verts.size()), 0, [&](int, long begin, long end) {
        for (long i = begin; i < end; ++i) {
            Vec3 p = ray_boundary(body, body.witness, ico.verts[static_cast<std::size_t>(i)],
                                  1e-10);
            mesh.vertices[static_cast<std::size_t>(i)] = p;
            mesh.margins[static_cast<std::size_t>(i)] = margin(body, p);
        }
    });
    mesh.flags.assign(mesh.vertices.size(), 0);
    return mesh;
}

void flag_near_generators(Mesh& mesh, const BallBody<3>& body, double tol) {
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        double d = 1e300;
        for (const auto& g : body.gens)
            d = std::min(d, nearest_to(g, mesh.vertices[i]).value);
        mesh.flags[i] = d <= tol ? 1 : 0;
    }
}

void write_obj(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_obj: cannot open " + path);
    char line[128];
    for (const auto& v : mesh.vertices) {
        std::snprintf(line, sizeof(line), "v %.9g %.9g %.9g\n", v[0], v[1], v[2]);
        out << line;
    }
    for (const auto& f : mesh.faces) {
        std::snprintf(line, sizeof(line), "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
        out << line;
    }
}

void write_ply(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_ply: cannot open " + path);
    out << "ply\nformat binary_little_endian 1.0\n";
    out << "element vertex " << mesh.vertices.size() << "\n";
    out << "property float x\nproperty float y\nproperty float z\n";
    out << "element face " << mesh.faces.size() << "\n";
    out << "property list uchar int vertex_indices\n";
    out << "end_header\n";
    for (const auto& v : mesh.vertices) {
        float c[3] = {static_cast<float>(v[0]), static_cast<float>(v[1]),
                      static_cast<float>(v[2])};
        out.write(reinterpret_cast<const char*>(c), sizeof(c));
    }
    for (const auto& f : mesh.faces) {
        std::uint8_t n = 3;
        std::int32_t idx[3] = {f[0], f[1], f[2]};
        out.write(reinterpret_cast<const char*>(&n), 1);
        out.write(reinterpret_cast<const char*>(idx), sizeof(idx));
    }
}

}  // namespace widthlab
