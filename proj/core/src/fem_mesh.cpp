#include "hemispec/fem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace hemispec::fem {

namespace {
constexpr double kPi = std::numbers::pi;
}

double Mesh::total_area() const {
    double area = 0.0;
    for (const auto& c : cells) {
        Eigen::Vector3d e1 = vertices[c[1]] - vertices[c[0]];
        Eigen::Vector3d e2 = vertices[c[2]] - vertices[c[0]];
        area += 0.5 * e1.cross(e2).norm();
    }
    return area;
}

double Mesh::max_edge_length() const {
    double h = 0.0;
    for (const auto& c : cells) {
        for (int i = 0; i < 3; ++i) {
            h = std::max(h, (vertices[c[i]] - vertices[c[(i + 1) % 3]]).norm());
        }
    }
    return h;
}

Mesh mesh_hemisphere(int refine) {
    if (refine < 0 || refine > 8) throw std::invalid_argument("refine must lie in 0..8");
    Mesh mesh;
    mesh.metric_mode = MetricMode::Embedded;
    mesh.vertices = {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}, {0, 0, 1}};
    mesh.cells = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};

    for (int level = 0; level < refine; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            Eigen::Vector3d p = 0.5 * (mesh.vertices[a] + mesh.vertices[b]);
            p.normalize();
            mesh.vertices.push_back(p);
            int idx = mesh.num_vertices() - 1;
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(mesh.cells.size() * 4);
        for (const auto& c : mesh.cells) {
            int ab = mid(c[0], c[1]), bc = mid(c[1], c[2]), ca = mid(c[2], c[0]);
            next.push_back({c[0], ab, ca});
            next.push_back({ab, c[1], bc});
            next.push_back({ca, bc, c[2]});
            next.push_back({ab, bc, ca});
        }
        mesh.cells = std::move(next);
    }
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        if (std::abs(mesh.vertices[v].z()) < 1e-14) mesh.boundary_vertices.push_back(v);
    }
    return mesh;
}

Mesh mesh_rectangle(double width, double height, int nx, int ny, bool periodic_x) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("grid must be at least 1x1");
    Mesh mesh;
    mesh.metric_mode = MetricMode::FlatChart;
    auto vid = [&](int i, int j) { return j * (nx + 1) + i; };
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            mesh.vertices.push_back({width * i / nx, height * j / ny, 0.0});
        }
    }
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            mesh.cells.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
            mesh.cells.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
        }
    }
    if (periodic_x) {
        mesh.periodic_length = width;
        for (int j = 0; j <= ny; ++j) mesh.periodic_pairs.push_back({vid(nx, j), vid(0, j)});
    }
    for (int j : {0, ny}) {
        for (int i = 0; i <= nx; ++i) {
            if (periodic_x && i == nx) continue; // slave copies are not listed
            mesh.boundary_vertices.push_back(vid(i, j));
        }
    }
    return mesh;
}

Mesh mesh_flat_half_torus(double r1, double r2, int nx, int ny) {
    if (nx < 4 || ny < 4) throw std::invalid_argument("nx and ny must be >= 4");
    if (!(r1 > 0.0 && r2 > 0.0)) throw std::invalid_argument("factor radii must be positive");
    return mesh_rectangle(2.0 * kPi * r1, kPi * r2, nx, ny, true);
}

Mesh scaled(const Mesh& mesh, double factor) {
    Mesh out = mesh;
    for (auto& v : out.vertices) v *= factor;
    out.periodic_length *= factor;
    return out;
}

void write_off(std::ostream& os, const Mesh& mesh) {
    os << "OFF\n";
    os << "# metric " << (mesh.metric_mode == MetricMode::FlatChart ? "flat" : "embedded")
       << "\n";
    if (mesh.periodic_length > 0.0) {
        os.precision(17);
        os << "# periodic x " << mesh.periodic_length << "\n";
    }
    os << mesh.num_vertices() << " " << mesh.num_cells() << " 0\n";
    os.precision(17);
    for (const auto& v : mesh.vertices) os << v.x() << " " << v.y() << " " << v.z() << "\n";
    for (const auto& c : mesh.cells) os << "3 " << c[0] << " " << c[1] << " " << c[2] << "\n";
}

Mesh read_off(std::istream& is) {
    Mesh mesh;
    std::string line;
    bool flat = false;
    double periodic = 0.0;
    int nv = -1, nf = -1;
    std::vector<std::string> tokens;

    auto next_data_line = [&]() -> bool {
        while (std::getline(is, line)) {
            if (line.rfind("# metric flat", 0) == 0) flat = true;
            if (line.rfind("# periodic x ", 0) == 0) periodic = std::stod(line.substr(13));
            if (line.empty() || line[0] == '#') continue;
            return true;
        }
        return false;
    };

    if (!next_data_line() || line.rfind("OFF", 0) != 0) {
        throw std::runtime_error("not an OFF file");
    }
    if (!next_data_line()) throw std::runtime_error("truncated OFF header");
    {
        std::istringstream ss(line);
        int dummy;
        ss >> nv >> nf >> dummy;
        if (nv < 0 || nf < 0) throw std::runtime_error("bad OFF counts");
    }
    mesh.vertices.reserve(nv);
    for (int i = 0; i < nv; ++i) {
        if (!next_data_line()) throw std::runtime_error("truncated OFF vertices");
        std::istringstream ss(line);
        Eigen::Vector3d p;
        ss >> p.x() >> p.y() >> p.z();
        mesh.vertices.push_back(p);
    }
    for (int i = 0; i < nf; ++i) {
        if (!next_data_line()) throw std::runtime_error("truncated OFF faces");
        std::istringstream ss(line);
        int c, a, b, d;
        ss >> c >> a >> b >> d;
        if (c != 3) throw std::runtime_error("OFF reader supports triangles only");
        mesh.cells.push_back({a, b, d});
    }
    mesh.metric_mode = flat ? MetricMode::FlatChart : MetricMode::Embedded;
    mesh.periodic_length = periodic;
    if (flat) {
        double ymax = 0.0;
        for (const auto& v : mesh.vertices) ymax = std::max(ymax, v.y());
        // periodic identification: x = L copies of the x = 0 column
        std::vector<bool> slave(mesh.vertices.size(), false);
        if (periodic > 0.0) {
            for (int s = 0; s < mesh.num_vertices(); ++s) {
                if (std::abs(mesh.vertices[s].x() - periodic) > 1e-9 * std::max(1.0, periodic))
                    continue;
                for (int t = 0; t < mesh.num_vertices(); ++t) {
                    if (std::abs(mesh.vertices[t].x()) < 1e-12 &&
                        std::abs(mesh.vertices[t].y() - mesh.vertices[s].y()) < 1e-9) {
                        mesh.periodic_pairs.push_back({s, t});
                        slave[s] = true;
                        break;
                    }
                }
            }
        }
        for (int v = 0; v < mesh.num_vertices(); ++v) {
            if (slave[v]) continue;
            double y = mesh.vertices[v].y();
            if (std::abs(y) < 1e-9 || std::abs(y - ymax) < 1e-9) {
                mesh.boundary_vertices.push_back(v);
            }
        }
    } else {
        for (int v = 0; v < mesh.num_vertices(); ++v) {
            if (std::abs(mesh.vertices[v].z()) < 1e-12) mesh.boundary_vertices.push_back(v);
        }
    }
    return mesh;
}

void write_off_file(const std::string& path, const Mesh& mesh) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_off(os, mesh);
}

Mesh read_off_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_off(is);
}

void write_matrix_market(std::ostream& os, const SpMat& m) {
    os << "%%MatrixMarket matrix coordinate real general\n";
    os << m.rows() << " " << m.cols() << " " << m.nonZeros() << "\n";
    os.precision(17);
    for (int k = 0; k < m.outerSize(); ++k) {
        for (SpMat::InnerIterator it(m, k); it; ++it) {
            os << it.row() + 1 << " " << it.col() + 1 << " " << it.value() << "\n";
        }
    }
}

} // namespace hemispec::fem
