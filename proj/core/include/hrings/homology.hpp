#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "hrings/triangulation.hpp"

namespace hrings {

// Dense matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : r_(rows), c_(cols), a_(rows * cols) {}
    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    mpz_class& at(int i, int j) { return a_[i * c_ + j]; }
    const mpz_class& at(int i, int j) const { return a_[i * c_ + j]; }

    IntMatrix mul(const IntMatrix& b) const;
    IntMatrix transpose() const;
    bool is_zero() const;
    bool operator==(const IntMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    void add_row(int dst, int src, const mpz_class& k);  // row dst += k * row src
    void add_col(int dst, int src, const mpz_class& k);
    void negate_row(int i);
    void negate_col(int j);

    std::string str() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<mpz_class> a_;
};

struct SnfResult {
    IntMatrix u, d, v;  // u * a * v == d
};

// Diagonalization with unimodular transforms; diagonal entries are
// nonnegative and form a divisibility chain. Pivot choice: smallest nonzero
// absolute value, ties broken by lowest (row, col).
SnfResult smith_normal_form(const IntMatrix& a);

// Exact recheck of u*a*v == d plus unimodularity and the divisibility chain.
bool verify_snf(const IntMatrix& a, const SnfResult& s);

mpz_class det(const IntMatrix& a);

struct AbelianGroupDesc {
    int free_rank = 0;
    std::vector<mpz_class> torsion;  // invariant factors > 1, divisibility chain
    bool operator==(const AbelianGroupDesc& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    std::string str() const;
};

// Chain complex of the closed triangulation: columns of d_k are the k-cell
// classes, rows the (k-1)-cell classes. Entry conventions follow the face
// orientation induced by even vertex orderings; see trunc.hpp.
struct BoundaryMaps {
    IntMatrix d1, d2, d3;
    int vertices = 0, edges = 0, faces = 0, tets = 0;
    // face orbit bookkeeping: lexicographically least slot of each orbit
    std::vector<FaceSlot> face_reps;
    std::vector<int> face_orbit_of_slot;  // per tet*4+face
};

BoundaryMaps boundary_matrices(const Triangulation& tri);
inline BoundaryMaps boundary_matrices(const HTriangulation& ht) {
    return boundary_matrices(ht.tri());
}

AbelianGroupDesc homology(const Triangulation& tri, int k);
inline AbelianGroupDesc homology(const HTriangulation& ht, int k) {
    return homology(ht.tri(), k);
}

// Canonical integer solution of a*x = b (free variables zero), or nullopt if
// no integer solution exists.
std::optional<std::vector<mpz_class>> solve_integer_linear(const IntMatrix& a,
                                                           const std::vector<mpz_class>& b);

// All integer solutions: particular + lattice spanned by kernel basis rows.
struct AffineLattice {
    std::vector<mpz_class> particular;
    std::vector<std::vector<mpz_class>> kernel_basis;
};
std::optional<AffineLattice> solve_integer_affine(const IntMatrix& a,
                                                  const std::vector<mpz_class>& b);

AbelianGroupDesc cokernel(const IntMatrix& a);  // Z^rows / column span

}  // namespace hrings
