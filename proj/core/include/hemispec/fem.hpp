#pragma once

#include "hemispec/models.hpp"

#include <Eigen/Sparse>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

// Independent numerical oracle: P1 finite elements for the Neumann Jacobi
// eigenproblem on meshed n = 2 models.  Curved models use embedded flat
// triangles (surface FEM of first kind); the torus models use their flat
// isometric charts, so those meshes carry no geometry error.

namespace hemispec::fem {

struct DegenerateCell : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MassNotSPD : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GapTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class MetricMode { Embedded, FlatChart };

struct Mesh {
    // Embedded meshes store 3D points; flat charts store (x, y, 0).
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> cells;
    std::vector<int> boundary_vertices;           // representative indices only
    std::vector<std::pair<int, int>> periodic_pairs; // (slave, master)
    MetricMode metric_mode = MetricMode::Embedded;
    double periodic_length = 0.0; // x-period of flat charts, 0 if none

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_cells() const { return static_cast<int>(cells.size()); }
    double total_area() const;
    double max_edge_length() const;
};

// Geodesic triangulation of the upper unit hemisphere: `refine`-fold
// midpoint subdivision of the four upper octahedron faces, vertices
// reprojected to the sphere.  refine in 0..8.
Mesh mesh_hemisphere(int refine);

// Structured triangulation of the flat chart of S^1(r1) x S^1_+(r2):
// rectangle [0, 2 pi r1] x [0, pi r2], periodic in x, Neumann ends in y.
Mesh mesh_flat_half_torus(double r1, double r2, int nx, int ny);

// Generic rectangle chart mesh (used by the torus builder and by tests).
Mesh mesh_rectangle(double width, double height, int nx, int ny, bool periodic_x);

// Uniformly scales an embedded mesh (hemisphere -> radius-r cap).
Mesh scaled(const Mesh& mesh, double factor);

using SpMat = Eigen::SparseMatrix<double>;

struct AssembledSystem {
    SpMat stiffness; // Dirichlet energy K0, periodic pairs merged
    SpMat mass;      // consistent P1 mass
    double potential = 0.0;
    std::vector<int> vertex_to_dof; // -1 never occurs; slaves map to masters
    int dof = 0;

    // K0 - potential * M, the matrix of the Jacobi form.
    SpMat jacobi_matrix() const;
};

AssembledSystem assemble(const Mesh& mesh, double potential);

struct EigenResult {
    std::vector<double> eigenvalues; // ascending
    int num_negative = 0;            // eigenvalues < 0 among those computed
    double lambda1 = 0.0;
    int dof = 0;
    std::vector<double> residual_norms; // ||K v - l M v|| / ||M v||
};

struct SolveOptions {
    int count = 6;
    std::uint64_t seed = 42;
    // Problems at or below this dof use a dense Cholesky reduction;
    // larger ones use shift-invert Lanczos with full reorthogonalization.
    int dense_cutoff = 6000;
    // Shift for the sparse path; defaults to -potential - 1 via solve_lowest.
    double shift = -1.0;
    double residual_tol = 1e-8;
    // Rank-one deflation direction (e.g. the constant vector); empty = none.
    Eigen::VectorXd deflate;
};

// `count` smallest eigenpairs of K v = lambda M v.
EigenResult solve_lowest(const SpMat& K, const SpMat& M, int count);
EigenResult solve_lowest(const SpMat& K, const SpMat& M, const SolveOptions& opts);

// Mesh + potential for an n = 2 catalog model at a refinement level.
// Hemisphere models: octahedron subdivision `refine`; torus models: an
// 8 x 4 chart grid doubled `refine` times (refine 4 = 128 x 64).
std::pair<Mesh, double> model_mesh(const Model& m, int refine);

struct FemIndex {
    EigenResult eigen;
    int num_negative = 0;      // gap-aware strong count
    int num_negative_weak = 0; // after deflating constants
    double epsilon_gap = 0.0;
};

// Gap-aware Morse index of an n = 2 model: eigenvalues below -eps_gap with
// eps_gap = max(1e-3, estimated discretization error).  Throws GapTooSmall
// when some computed eigenvalue falls in the ambiguous band
// (-3 eps_gap, -eps_gap).
FemIndex fem_index(const Model& m, int refine);

struct ConvergenceRow {
    int refine = 0;
    int dof = 0;
    double h = 0.0;
    double lambda1 = 0.0;      // first computed eigenvalue (constant mode)
    double err_first = 0.0;    // error of the first nonconstant eigenvalue
    double err_second = 0.0;   // error of the next distinct eigenvalue
    double order = 0.0;        // observed order vs previous row (0 on first)
};

// Eigenvalue convergence under refinement against the closed-form spectrum.
// The constant mode is reproduced exactly by P1 elements at every level, so
// rates are measured on the first nonconstant eigenvalues.
std::vector<ConvergenceRow> convergence_study(const Model& m, const std::vector<int>& refinements);

// Least-squares slope of log(err) vs log(h) over the rows.
double observed_order(const std::vector<ConvergenceRow>& rows);

// --- mesh / matrix I O -------------------------------------------------------

// OFF with a "# periodic x <length>" comment annotation on flat charts.
void write_off(std::ostream& os, const Mesh& mesh);
Mesh read_off(std::istream& is);
void write_off_file(const std::string& path, const Mesh& mesh);
Mesh read_off_file(const std::string& path);

// Matrix Market coordinate format (general symmetric storage).
void write_matrix_market(std::ostream& os, const SpMat& m);

} // namespace hemispec::fem
