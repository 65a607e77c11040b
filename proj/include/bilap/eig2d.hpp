#pragma once

#include <string>
#include <vector>

#include "bilap/core.hpp"

namespace bilap {

// largest symmetric block handed to a solver
inline constexpr int kDefaultMaxUnknowns = 4096;

struct Grid2D {
    int nx = 0, ny = 0;
    double hx = 0, hy = 0;
    DomainSpec dom = DomainSpec::square(1.0);
    int size() const { return nx * ny; }
    int index(int i, int j) const { return j * nx + i; }
};

// rejects grids whose largest reflection sector exceeds max_unknowns
Grid2D make_grid(const DomainSpec& dom, int nx, int ny, int max_unknowns = kDefaultMaxUnknowns);

// number of unknowns in the largest of the four reflection sectors
int max_sector_size(int nx, int ny);

Spectrum laplacian_spectrum_exact(const DomainSpec& dom, int count);
Spectrum navier1_spectrum_exact(const DomainSpec& dom, int count);
// Neumann Laplacian: pi^2 (m^2/Lx^2 + n^2/Ly^2), m, n >= 0
Spectrum neumann_laplacian_spectrum_exact(const DomainSpec& dom, int count);

// closed-form eigenvalues of the 5-point Dirichlet Laplacian, sorted
std::vector<double> discrete_laplacian_spectrum(const Grid2D& g, int count);

enum class Storage { Dense, Banded };

class DiscreteOperator {
public:
    // row-major n x n
    static DiscreteOperator dense(int n, std::vector<double> a, std::string tag);
    // lower band, column-major, ab[(i-j) + j(kd+1)] = A(i,j) for 0 <= i-j <= kd
    static DiscreteOperator banded(int n, int kd, std::vector<double> ab, std::string tag);

    int dimension() const { return n_; }
    Storage storage() const { return storage_; }
    int bandwidth() const { return kd_; }
    const std::string& tag() const { return tag_; }
    const std::vector<double>& data() const { return a_; }

    double get(int i, int j) const;
    std::vector<double> to_dense() const;
    std::vector<double> apply(const std::vector<double>& x) const;
    double max_abs() const;
    bool is_symmetric(double rel_tol = 1e-12) const;

private:
    int n_ = 0, kd_ = 0;
    Storage storage_ = Storage::Dense;
    std::vector<double> a_;
    std::string tag_;
};

DiscreteOperator assemble_clamped_bilaplacian(const Grid2D& g);
DiscreteOperator assemble_dirichlet_laplacian(const Grid2D& g);

// clamped beam on [0,L] with n interior nodes
DiscreteOperator assemble_clamped_beam(int n, double L = 1.0);

struct EigenPairs {
    int n = 0;
    std::vector<double> values;
    std::vector<double> vectors;  // column-major n x values.size(), empty if not requested
    double vec(int row, int col) const { return vectors[static_cast<std::size_t>(col) * n + row]; }
};

// first nonzero component of every vector is made positive
void normalize_signs(EigenPairs& e);

EigenPairs smallest_eigs(const DiscreteOperator& op, int k, bool want_vectors = true,
                         int max_unknowns = kDefaultMaxUnknowns);

// full dense decomposition: Householder tridiagonalization + implicit QL
EigenPairs dense_symmetric_eigen(std::vector<double> a, int n, bool want_vectors);

enum class FdOperator { DirichletLaplacian, ClampedBilaplacian };

std::string fd_operator_name(FdOperator op);

// symmetric block of op restricted to reflection sector (sx, sy), each +1 or -1
DiscreteOperator sector_operator(const Grid2D& g, FdOperator op, int sx, int sy);

// k smallest eigenpairs of the full grid operator, solved sector by sector;
// vectors live on the interior nodes (row-major, x fastest)
EigenPairs grid_smallest_eigs(const Grid2D& g, FdOperator op, int k, bool want_vectors);

// memoized values-only solve
Spectrum fd_spectrum(const Grid2D& g, FdOperator op, int count);
int fd_memo_hits();
// preload or inspect the memo (used by the on-disk cache)
void fd_memo_seed(const Grid2D& g, FdOperator op, std::vector<double> values);
std::vector<double> fd_memo_values(const Grid2D& g, FdOperator op);

struct FormEnergies {
    double grad = 0, lap = 0, hessian = 0;
};

// energies of the grid function divided by its discrete L2 norm squared.
// v has g.size() entries (zero boundary implied) or (nx+2)(ny+2) entries
// (boundary nodes included).
FormEnergies form_energies(const std::vector<double>& v, const Grid2D& g);

struct RichardsonEstimate {
    std::vector<double> h, values;
    double limit = 0;
    double band = 0;  // 3x the last refinement gap
    double observed_order = 0;  // NaN when not determinable
    double lower() const { return limit - band; }
    double upper() const { return limit + band; }
};

RichardsonEstimate richardson(const std::vector<double>& h, const std::vector<double>& values);

// per-mode Richardson estimates on n x n grids (nx = ny = n)
std::vector<RichardsonEstimate> fd_extrapolated(const DomainSpec& dom, FdOperator op, const std::vector<int>& grids,
                                                int count);

std::vector<BoundReport> comparison_report(const DomainSpec& dom, int k_max, const std::vector<int>& grids,
                                           int j_max_1d = 50);

}  // namespace bilap
