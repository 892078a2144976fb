#include "hrings/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace hrings {

namespace {

int first_nonzero(const std::vector<mpz_class>& r) {
    for (size_t i = 0; i < r.size(); ++i)
        if (r[i] != 0) return static_cast<int>(i);
    return -1;
}

}  // namespace

void Lattice::add_row(std::vector<mpz_class> row) {
    if (static_cast<int>(row.size()) != cols_)
        throw std::invalid_argument("Lattice: row width mismatch");
    // Incremental Hermite reduction against the existing echelon basis.
    for (size_t bi = 0; bi < rows_.size() && first_nonzero(row) >= 0;) {
        int p = pivots_[bi];
        int f = first_nonzero(row);
        if (f < p) break;
        if (f > p) {
            ++bi;
            continue;
        }
        mpz_class& bp = rows_[bi][p];
        if (row[p] % bp == 0) {
            mpz_class q = row[p] / bp;
            for (int j = 0; j < cols_; ++j) row[j] -= q * rows_[bi][j];
            ++bi;
        } else {
            // replace basis row by gcd combination, continue with remainder
            mpz_class g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), bp.get_mpz_t(),
                       row[p].get_mpz_t());
            std::vector<mpz_class> comb(cols_), rem(cols_);
            mpz_class c1 = bp / g, c2 = row[p] / g;
            for (int j = 0; j < cols_; ++j) {
                comb[j] = x * rows_[bi][j] + y * row[j];
                rem[j] = c1 * row[j] - c2 * rows_[bi][j];
            }
            rows_[bi] = std::move(comb);
            row = std::move(rem);
            ++bi;
        }
    }
    int f = first_nonzero(row);
    if (f >= 0) {
        auto it = std::lower_bound(pivots_.begin(), pivots_.end(), f);
        size_t pos = it - pivots_.begin();
        pivots_.insert(it, f);
        rows_.insert(rows_.begin() + pos, std::move(row));
    }
    normalize();
}

void Lattice::normalize() {
    // pivots positive, entries above each pivot reduced into [0, pivot)
    for (size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i][pivots_[i]] < 0)
            for (auto& x : rows_[i]) x = -x;
    for (size_t i = rows_.size(); i-- > 0;) {
        int p = pivots_[i];
        const mpz_class& pv = rows_[i][p];
        for (size_t u = 0; u < i; ++u) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), rows_[u][p].get_mpz_t(), pv.get_mpz_t());
            if (q != 0)
                for (int j = 0; j < cols_; ++j) rows_[u][j] -= q * rows_[i][j];
        }
    }
}

std::vector<mpz_class> Lattice::reduce(std::vector<mpz_class> v) const {
    for (size_t i = 0; i < rows_.size(); ++i) {
        int p = pivots_[i];
        if (v[p] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), v[p].get_mpz_t(), rows_[i][p].get_mpz_t());
        if (q != 0)
            for (int j = 0; j < cols_; ++j) v[j] -= q * rows_[i][j];
    }
    return v;
}

bool Lattice::contains(const std::vector<mpz_class>& v) const {
    auto r = reduce(v);
    return first_nonzero(r) < 0;
}

bool Lattice::contains_lattice(const Lattice& other) const {
    for (const auto& r : other.rows_)
        if (!contains(r)) return false;
    return true;
}

IntMatrix Lattice::as_matrix() const {
    IntMatrix m(static_cast<int>(rows_.size()), cols_);
    for (size_t i = 0; i < rows_.size(); ++i)
        for (int j = 0; j < cols_; ++j) m.at(static_cast<int>(i), j) = rows_[i][j];
    return m;
}

// ---- SignedAbelianGroup ----------------------------------------------------

SignedAbelianGroup::SignedAbelianGroup(
    std::vector<std::string> names, std::vector<std::pair<std::vector<long>, int>> relations)
    : names_(std::move(names)), lat_(static_cast<int>(names_.size()) + 1) {
    const int k = generator_count();
    std::vector<mpz_class> two(k + 1);
    two[k] = 2;
    lat_.add_row(std::move(two));
    for (const auto& [e, sign] : relations) {
        if (static_cast<int>(e.size()) != k)
            throw std::invalid_argument("relation width mismatch");
        std::vector<mpz_class> row(k + 1);
        for (int i = 0; i < k; ++i) row[i] = e[i];
        row[k] = (sign < 0) ? 1 : 0;
        lat_.add_row(std::move(row));
    }
}

SignedAbelianGroup SignedAbelianGroup::one_element() {
    SignedAbelianGroup g;
    g.trivial_ = true;
    return g;
}

std::vector<mpz_class> SignedAbelianGroup::to_vec(const SignedMonomial& m) const {
    std::vector<mpz_class> v(k() + 1);
    for (int i = 0; i < k(); ++i) v[i] = m.e[i];
    v[k()] = (m.sign < 0) ? 1 : 0;
    return v;
}

SignedMonomial SignedAbelianGroup::from_vec(const std::vector<mpz_class>& v) const {
    SignedMonomial m = SignedMonomial::one(k());
    for (int i = 0; i < k(); ++i) m.e[i] = static_cast<long>(v[i].get_si());
    mpz_class s = v[k()] % 2;
    m.sign = (s != 0) ? -1 : 1;
    return m;
}

SignedMonomial SignedAbelianGroup::normal_form(const SignedMonomial& m) const {
    if (trivial_) return SignedMonomial::one(0);
    return from_vec(lat_.reduce(to_vec(m)));
}

bool SignedAbelianGroup::equal(const SignedMonomial& a, const SignedMonomial& b) const {
    if (trivial_) return true;
    return lat_.contains(to_vec(a * b.inv()));
}

AbelianGroupDesc SignedAbelianGroup::invariants() const {
    if (trivial_) return {};
    return cokernel(lat_.as_matrix().transpose());
}

std::string SignedAbelianGroup::format(const SignedMonomial& m) const {
    if (trivial_) return "0=1";
    std::ostringstream out;
    if (m.sign < 0) out << "-";
    bool any = false;
    for (int i = 0; i < k(); ++i) {
        if (m.e[i] == 0) continue;
        if (any) out << " ";
        any = true;
        out << names_[i];
        if (m.e[i] != 1) out << "^" << m.e[i];
    }
    if (!any) out << "1";
    return out.str();
}

// ---- SkeletonHom ------------------------------------------------------------

SignedMonomial SkeletonHom::apply(const SignedMonomial& m) const {
    SignedMonomial out = SignedMonomial::one(dst->generator_count());
    out.sign = m.sign;
    for (size_t i = 0; i < m.e.size(); ++i)
        if (m.e[i] != 0) out = out * images[i].pow(m.e[i]);
    return out;
}

bool SkeletonHom::well_defined() const {
    if (src->is_one_element() || dst->is_one_element()) return true;
    const auto& L = dst->relation_lattice();
    for (const auto& row : src->relation_lattice().basis()) {
        // map the relation vector through the generator images
        SignedMonomial m = SignedMonomial::one(dst->generator_count());
        for (int i = 0; i < src->generator_count(); ++i) {
            long e = static_cast<long>(row[i].get_si());
            if (e != 0) m = m * images[i].pow(e);
        }
        if (row[src->generator_count()] % 2 != 0) m.sign = -m.sign;
        if (!L.contains(dst->to_vec(m))) return false;
    }
    return true;
}

Lattice SkeletonHom::image_lattice() const {
    Lattice L = dst->relation_lattice();
    for (const auto& im : images) L.add_row(dst->to_vec(im));
    // sign maps to sign
    std::vector<mpz_class> eps(dst->generator_count() + 1);
    eps[dst->generator_count()] = 1;
    Lattice full = L;
    // ε itself is in the image subgroup (f(-1) = -1), represented by the
    // sign basis vector; include it so the subgroup carries the sign.
    full.add_row(std::move(eps));
    return full;
}

AbelianGroupDesc SkeletonHom::cokernel_invariants() const {
    return cokernel(image_lattice().as_matrix().transpose());
}

bool SkeletonHom::in_image(const SignedMonomial& m) const {
    if (dst->is_one_element()) return true;
    return image_lattice().contains(dst->to_vec(m));
}

std::vector<std::vector<mpz_class>> SkeletonHom::kernel_preimage_basis() const {
    // x in Z^{ks+1} with M x ∈ L_H: solve [M^T | B^T] stacked as A (x; y) = 0
    const int ks = src->generator_count() + 1;
    const int kd = dst->generator_count() + 1;
    const auto& bh = dst->relation_lattice().basis();
    const int nb = static_cast<int>(bh.size());
    IntMatrix A(kd, ks + nb);
    for (int i = 0; i < kd; ++i) {
        for (int j = 0; j < ks; ++j) {
            // column j of the hom matrix: image of generator j (sign gen last)
            if (j < ks - 1) {
                const SignedMonomial& im = images[j];
                if (i < kd - 1)
                    A.at(i, j) = im.e[i];
                else
                    A.at(i, j) = (im.sign < 0) ? 1 : 0;
            } else {
                A.at(i, j) = (i == kd - 1) ? 1 : 0;
            }
        }
        for (int b = 0; b < nb; ++b) A.at(i, ks + b) = bh[b][i];
    }
    auto aff = solve_integer_affine(A, std::vector<mpz_class>(kd));
    std::vector<std::vector<mpz_class>> out;
    for (const auto& kb : aff->kernel_basis) {
        std::vector<mpz_class> x(kb.begin(), kb.begin() + ks);
        bool nonzero = false;
        for (const auto& v : x)
            if (v != 0) nonzero = true;
        if (nonzero) out.push_back(std::move(x));
    }
    return out;
}

std::vector<SignedMonomial> SkeletonHom::kernel_witnesses() const {
    std::vector<SignedMonomial> out;
    const auto& Ls = src->relation_lattice();
    for (const auto& x : kernel_preimage_basis()) {
        auto red = Ls.reduce(x);
        bool nz = false;
        for (const auto& v : red)
            if (v != 0) nz = true;
        if (nz) out.push_back(src->from_vec(red));
    }
    return out;
}

}  // namespace hrings
