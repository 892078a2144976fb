#include "hrings/homology.hpp"

#include <algorithm>
#include <sstream>

#include "hrings/tetra.hpp"

namespace hrings {

IntMatrix IntMatrix::mul(const IntMatrix& b) const {
    IntMatrix out(r_, b.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            const mpz_class& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < b.c_; ++j) out.at(i, j) += x * b.at(k, j);
        }
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix out(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) out.at(j, i) = at(i, j);
    return out;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

void IntMatrix::swap_rows(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < c_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < r_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMatrix::add_row(int dst, int src, const mpz_class& k) {
    for (int j = 0; j < c_; ++j) at(dst, j) += k * at(src, j);
}

void IntMatrix::add_col(int dst, int src, const mpz_class& k) {
    for (int i = 0; i < r_; ++i) at(i, dst) += k * at(i, src);
}

void IntMatrix::negate_row(int i) {
    for (int j = 0; j < c_; ++j) at(i, j) = -at(i, j);
}

void IntMatrix::negate_col(int j) {
    for (int i = 0; i < r_; ++i) at(i, j) = -at(i, j);
}

std::string IntMatrix::str() const {
    std::ostringstream out;
    for (int i = 0; i < r_; ++i) {
        for (int j = 0; j < c_; ++j) out << (j ? " " : "") << at(i, j).get_str();
        out << "\n";
    }
    return out.str();
}

SnfResult smith_normal_form(const IntMatrix& a) {
    SnfResult s{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols())};
    IntMatrix& d = s.d;
    const int r = a.rows(), c = a.cols();

    auto pivot_at = [&](int t) -> bool {
        // smallest nonzero |entry| in the trailing block, lowest (row,col) tie
        int pi = -1, pj = -1;
        mpz_class best;
        for (int i = t; i < r; ++i)
            for (int j = t; j < c; ++j) {
                if (d.at(i, j) == 0) continue;
                mpz_class v = abs(d.at(i, j));
                if (pi < 0 || v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) return false;
        d.swap_rows(t, pi);
        s.u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        s.v.swap_cols(t, pj);
        return true;
    };

    for (int t = 0; t < std::min(r, c); ++t) {
        if (!pivot_at(t)) break;
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < r; ++i) {
                if (d.at(i, t) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), d.at(i, t).get_mpz_t(), d.at(t, t).get_mpz_t());
                d.add_row(i, t, -q);
                s.u.add_row(i, t, -q);
                if (d.at(i, t) != 0) {
                    d.swap_rows(t, i);
                    s.u.swap_rows(t, i);
                    clean = false;
                }
            }
            for (int j = t + 1; j < c; ++j) {
                if (d.at(t, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), d.at(t, j).get_mpz_t(), d.at(t, t).get_mpz_t());
                d.add_col(j, t, -q);
                s.v.add_col(j, t, -q);
                if (d.at(t, j) != 0) {
                    d.swap_cols(t, j);
                    s.v.swap_cols(t, j);
                    clean = false;
                }
            }
            if (clean) {
                // enforce divisibility of the remaining block by the pivot
                for (int i = t + 1; i < r && clean; ++i)
                    for (int j = t + 1; j < c && clean; ++j)
                        if (d.at(i, j) % d.at(t, t) != 0) {
                            d.add_col(t, j, 1);
                            s.v.add_col(t, j, 1);
                            clean = false;
                        }
            }
        }
        if (d.at(t, t) < 0) {
            d.negate_row(t);
            s.u.negate_row(t);
        }
    }
    return s;
}

bool verify_snf(const IntMatrix& a, const SnfResult& s) {
    if (!(s.u.mul(a).mul(s.v) == s.d)) return false;
    mpz_class du = det(s.u), dv = det(s.v);
    if (abs(du) != 1 || abs(dv) != 1) return false;
    int m = std::min(s.d.rows(), s.d.cols());
    for (int i = 0; i < s.d.rows(); ++i)
        for (int j = 0; j < s.d.cols(); ++j)
            if (i != j && s.d.at(i, j) != 0) return false;
    for (int i = 0; i + 1 < m; ++i) {
        if (s.d.at(i, i) < 0) return false;
        if (s.d.at(i + 1, i + 1) != 0 && s.d.at(i, i) == 0) return false;
        if (s.d.at(i, i) != 0 && s.d.at(i + 1, i + 1) % s.d.at(i, i) != 0) return false;
    }
    return true;
}

mpz_class det(const IntMatrix& a) {
    // fraction-free Gaussian elimination (Bareiss)
    int n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("det: matrix not square");
    IntMatrix m = a;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
            }
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

std::string AbelianGroupDesc::str() const {
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i < free_rank; ++i) {
        out << (first ? "" : " + ") << "Z";
        first = false;
    }
    for (const auto& t : torsion) {
        out << (first ? "" : " + ") << "Z/" << t.get_str();
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

BoundaryMaps boundary_matrices(const Triangulation& tri) {
    BoundaryMaps bm;
    const int n = tri.tet_count();
    const auto& eorbs = tri.edge_orbits();
    bm.tets = n;
    bm.edges = static_cast<int>(eorbs.size());
    bm.vertices = tri.vertex_orbit_count();

    // Face orbits: slots paired two by two.
    bm.face_orbit_of_slot.assign(4 * n, -1);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            if (bm.face_orbit_of_slot[t * 4 + f] >= 0) continue;
            FaceSlot s{t, f};
            FaceSlot p = tri.glued_slot(s);
            int id = static_cast<int>(bm.face_reps.size());
            bm.face_orbit_of_slot[t * 4 + f] = id;
            bm.face_orbit_of_slot[p.tet * 4 + p.face] = id;
            bm.face_reps.push_back(std::min(s, p));
        }
    bm.faces = static_cast<int>(bm.face_reps.size());

    const auto& vids = tri.vertex_orbit_ids();
    bm.d1 = IntMatrix(bm.vertices, bm.edges);
    for (int e = 0; e < bm.edges; ++e) {
        const TetEdge& r = eorbs[e].rep;
        bm.d1.at(vids[r.tet * 4 + r.to], e) += 1;
        bm.d1.at(vids[r.tet * 4 + r.from], e) -= 1;
    }

    bm.d2 = IntMatrix(bm.edges, bm.faces);
    for (int fo = 0; fo < bm.faces; ++fo) {
        FaceSlot s = bm.face_reps[fo];
        auto cyc = face_cycle(s.face);
        for (int k = 0; k < 3; ++k) {
            int a = cyc[k], b = cyc[(k + 1) % 3];
            auto [cls, sign] = tri.edge_class_of(s.tet, a, b);
            bm.d2.at(cls, fo) += sign;
        }
    }

    bm.d3 = IntMatrix(bm.faces, bm.tets);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            int fo = bm.face_orbit_of_slot[t * 4 + f];
            FaceSlot rep = bm.face_reps[fo];
            // The rep slot's induced orientation is the orbit's; the partner
            // slot carries the opposite one (pairings reverse orientation).
            int sign = (rep.tet == t && rep.face == f) ? 1 : -1;
            bm.d3.at(fo, t) += sign;
        }
    return bm;
}

AbelianGroupDesc homology(const Triangulation& tri, int k) {
    BoundaryMaps bm = boundary_matrices(tri);
    auto dim = [&](int i) {
        switch (i) {
            case 0: return bm.vertices;
            case 1: return bm.edges;
            case 2: return bm.faces;
            default: return bm.tets;
        }
    };
    auto rank_and_factors = [&](const IntMatrix& m) {
        SnfResult s = smith_normal_form(m);
        int rank = 0;
        std::vector<mpz_class> factors;
        for (int i = 0; i < std::min(m.rows(), m.cols()); ++i)
            if (s.d.at(i, i) != 0) {
                ++rank;
                if (s.d.at(i, i) > 1) factors.push_back(s.d.at(i, i));
            }
        return std::make_pair(rank, factors);
    };

    IntMatrix dk;
    if (k == 0)
        dk = IntMatrix(0, bm.vertices);  // zero map out of C_0
    else
        dk = (k == 1 ? bm.d1 : (k == 2 ? bm.d2 : bm.d3));
    auto [rank_k, f_unused] = rank_and_factors(dk);
    (void)f_unused;

    AbelianGroupDesc out;
    if (k == 3) {
        out.free_rank = dim(3) - rank_k;
        return out;
    }
    IntMatrix dk1 = k == 0 ? bm.d1 : (k == 1 ? bm.d2 : bm.d3);
    auto [rank_k1, factors] = rank_and_factors(dk1);
    out.free_rank = dim(k) - rank_k - rank_k1;
    out.torsion = std::move(factors);
    return out;
}

std::optional<std::vector<mpz_class>> solve_integer_linear(const IntMatrix& a,
                                                           const std::vector<mpz_class>& b) {
    auto aff = solve_integer_affine(a, b);
    if (!aff) return std::nullopt;
    return aff->particular;
}

std::optional<AffineLattice> solve_integer_affine(const IntMatrix& a,
                                                  const std::vector<mpz_class>& b) {
    SnfResult s = smith_normal_form(a);
    const int r = a.rows(), c = a.cols();
    // a x = b  <=>  d y = u b, x = v y
    std::vector<mpz_class> ub(r);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) ub[i] += s.u.at(i, j) * b[j];
    }
    std::vector<mpz_class> y(c);
    int rank = 0;
    for (int i = 0; i < std::min(r, c); ++i)
        if (s.d.at(i, i) != 0) rank = i + 1;
    for (int i = 0; i < r; ++i) {
        if (i < rank) {
            if (ub[i] % s.d.at(i, i) != 0) return std::nullopt;
            y[i] = ub[i] / s.d.at(i, i);
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    AffineLattice out;
    out.particular.assign(c, 0);
    for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j)
            if (y[j] != 0) out.particular[i] += s.v.at(i, j) * y[j];
    for (int j = rank; j < c; ++j) {
        std::vector<mpz_class> col(c);
        for (int i = 0; i < c; ++i) col[i] = s.v.at(i, j);
        out.kernel_basis.push_back(std::move(col));
    }
    return out;
}

AbelianGroupDesc cokernel(const IntMatrix& a) {
    SnfResult s = smith_normal_form(a);
    AbelianGroupDesc out;
    int rank = 0;
    for (int i = 0; i < std::min(a.rows(), a.cols()); ++i)
        if (s.d.at(i, i) != 0) {
            ++rank;
            if (s.d.at(i, i) > 1) out.torsion.push_back(s.d.at(i, i));
        }
    out.free_rank = a.rows() - rank;
    return out;
}

}  // namespace hrings
