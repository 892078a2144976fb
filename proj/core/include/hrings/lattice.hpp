#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "hrings/homology.hpp"

namespace hrings {

// Monomial ±(g_0^{e_0} ... g_{k-1}^{e_{k-1}}) over some generator context.
struct SignedMonomial {
    int sign = 1;
    std::vector<long> e;

    static SignedMonomial one(int k) { return {1, std::vector<long>(k, 0)}; }
    static SignedMonomial minus_one(int k) { return {-1, std::vector<long>(k, 0)}; }
    static SignedMonomial gen(int k, int i, long p = 1) {
        SignedMonomial m = one(k);
        m.e[i] = p;
        return m;
    }

    SignedMonomial operator*(const SignedMonomial& o) const {
        SignedMonomial out{sign * o.sign, e};
        for (size_t i = 0; i < e.size(); ++i) out.e[i] += o.e[i];
        return out;
    }
    SignedMonomial inv() const {
        SignedMonomial out{sign, e};
        for (auto& x : out.e) x = -x;
        return out;
    }
    SignedMonomial pow(long p) const {
        SignedMonomial out{(p % 2 == 0) ? 1 : sign, e};
        for (size_t i = 0; i < e.size(); ++i) out.e[i] = e[i] * p;
        return out;
    }
    bool operator==(const SignedMonomial& o) const { return sign == o.sign && e == o.e; }
};

// Row-style Hermite normal form of an integer lattice given by spanning rows.
class Lattice {
public:
    Lattice() = default;
    explicit Lattice(int cols) : cols_(cols) {}
    void add_row(std::vector<mpz_class> row);
    int cols() const { return cols_; }
    const std::vector<std::vector<mpz_class>>& basis() const { return rows_; }

    // Canonical representative of v modulo the lattice.
    std::vector<mpz_class> reduce(std::vector<mpz_class> v) const;
    bool contains(const std::vector<mpz_class>& v) const;
    bool contains_lattice(const Lattice& other) const;
    bool operator==(const Lattice& o) const {
        return contains_lattice(o) && o.contains_lattice(*this);
    }

    IntMatrix as_matrix() const;

private:
    void normalize();
    int cols_ = 0;
    std::vector<std::vector<mpz_class>> rows_;  // echelon, pivots positive, reduced above
    std::vector<int> pivots_;
};

// Finitely generated abelian group with a distinguished order-2 sign element:
// Z^k x {±1} modulo monomial relations. Generator k (the last lattice
// coordinate) is the sign exponent; the relation 2ε = 0 is built in. The unit
// skeleton of a ring presentation lives here.
class SignedAbelianGroup {
public:
    SignedAbelianGroup() = default;
    SignedAbelianGroup(std::vector<std::string> names,
                       std::vector<std::pair<std::vector<long>, int>> relations);
    // The one-element ring marker: every monomial equals every other (1 = 0).
    static SignedAbelianGroup one_element();

    bool is_one_element() const { return trivial_; }
    int generator_count() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const Lattice& relation_lattice() const { return lat_; }

    SignedMonomial normal_form(const SignedMonomial& m) const;
    bool equal(const SignedMonomial& a, const SignedMonomial& b) const;
    bool is_one(const SignedMonomial& m) const { return equal(m, SignedMonomial::one(k())); }
    bool is_minus_one(const SignedMonomial& m) const {
        return equal(m, SignedMonomial::minus_one(k()));
    }

    // Invariants of the underlying group (the sign coordinate contributes a
    // Z/2 factor unless relations identify it with other generators).
    AbelianGroupDesc invariants() const;

    std::string format(const SignedMonomial& m) const;

    std::vector<mpz_class> to_vec(const SignedMonomial& m) const;
    SignedMonomial from_vec(const std::vector<mpz_class>& v) const;

private:
    int k() const { return generator_count(); }
    std::vector<std::string> names_;
    Lattice lat_;
    bool trivial_ = false;
};

// Homomorphism data between two signed groups: generator i of `src` maps to
// the monomial `images[i]` of `dst` (sign maps to sign).
struct SkeletonHom {
    const SignedAbelianGroup* src = nullptr;
    const SignedAbelianGroup* dst = nullptr;
    std::vector<SignedMonomial> images;

    SignedMonomial apply(const SignedMonomial& m) const;
    // True if every relation of src maps into dst's relation lattice.
    bool well_defined() const;

    // Lattice of the image subgroup (image vectors + dst relations).
    Lattice image_lattice() const;
    AbelianGroupDesc cokernel_invariants() const;
    bool in_image(const SignedMonomial& m) const;

    // Basis of { x : hom(x) ∈ dst relations }, i.e. the preimage of 1; the
    // kernel of the induced map is this modulo src relations.
    std::vector<std::vector<mpz_class>> kernel_preimage_basis() const;
    // Kernel witnesses: preimage basis vectors that are nontrivial in src.
    std::vector<SignedMonomial> kernel_witnesses() const;
};

}  // namespace hrings
