#include "hemispec/fem.hpp"

#include <vector>

namespace hemispec::fem {

SpMat AssembledSystem::jacobi_matrix() const {
    SpMat j = stiffness - potential * mass;
    j.makeCompressed();
    return j;
}

AssembledSystem assemble(const Mesh& mesh, double potential) {
    const int nv = mesh.num_vertices();
    // merge periodic slaves into their masters, then compress indices
    std::vector<int> rep(nv);
    for (int v = 0; v < nv; ++v) rep[v] = v;
    for (const auto& [slave, master] : mesh.periodic_pairs) rep[slave] = master;
    std::vector<int> dof_of(nv, -1);
    int dof = 0;
    for (int v = 0; v < nv; ++v) {
        if (rep[v] == v) dof_of[v] = dof++;
    }
    for (int v = 0; v < nv; ++v) {
        if (rep[v] != v) dof_of[v] = dof_of[rep[v]];
    }

    std::vector<Eigen::Triplet<double>> kt, mt;
    kt.reserve(mesh.cells.size() * 9);
    mt.reserve(mesh.cells.size() * 9);
    for (const auto& c : mesh.cells) {
        const Eigen::Vector3d& p0 = mesh.vertices[c[0]];
        const Eigen::Vector3d& p1 = mesh.vertices[c[1]];
        const Eigen::Vector3d& p2 = mesh.vertices[c[2]];
        double area = 0.5 * (p1 - p0).cross(p2 - p0).norm();
        if (area <= 1e-14) throw DegenerateCell("cell with vanishing area");

        // edge opposite vertex i; gradients of barycentric coordinates obey
        // grad(l_i) . grad(l_j) = e_i . e_j / (4 A^2)
        Eigen::Vector3d e[3] = {p2 - p1, p0 - p2, p1 - p0};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                double kij = e[i].dot(e[j]) / (4.0 * area);
                double mij = area / 12.0 * (i == j ? 2.0 : 1.0);
                kt.emplace_back(dof_of[c[i]], dof_of[c[j]], kij);
                mt.emplace_back(dof_of[c[i]], dof_of[c[j]], mij);
            }
        }
    }

    AssembledSystem sys;
    sys.potential = potential;
    sys.vertex_to_dof = std::move(dof_of);
    sys.dof = dof;
    sys.stiffness.resize(dof, dof);
    sys.mass.resize(dof, dof);
    sys.stiffness.setFromTriplets(kt.begin(), kt.end());
    sys.mass.setFromTriplets(mt.begin(), mt.end());
    sys.stiffness.makeCompressed();
    sys.mass.makeCompressed();
    return sys;
}

} // namespace hemispec::fem
