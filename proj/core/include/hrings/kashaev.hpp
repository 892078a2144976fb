#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "hrings/lattice.hpp"
#include "hrings/trunc.hpp"

namespace hrings {

// Generators (u_e, v_e) for every short edge class in S, with the hexagonal
// and triangular relation families read off the truncated complex. The ring
// itself is noncommutative; all computation happens in its abelianization.
struct KashaevPresentation {
    std::vector<int> gens;  // S orbit ids in display order
    struct Triangle {
        std::pair<int, int> cell;  // (tet, vertex)
        std::array<ShortEdge, 3> sides;  // cyclically oriented lifts
    };
    std::vector<Triangle> triangles;  // each yields a monomial and an additive relation
    struct HexPair {
        OrShort e, check;  // u_check = v_e and v_check = u_e
    };
    std::vector<HexPair> hex_pairs;  // only pairs with both classes in S
    bool abelian = true;
};

KashaevPresentation presentation(const TruncatedComplex& tc);

// Relations of the distinguished tetrahedron derived mechanically from the
// two triangular relation pairs of its knot-free corner triangles, rewritten
// through the hexagonal and orientation relations.
struct Lemma1Result {
    OrShort l, m, p;            // frame orientations
    // u_l = u_m
    // u_p = v_m^{-1} v_l, stored as a monomial over the u generators
    // v_p = 0
    std::vector<std::string> equations;  // the four instantiated relations
};

Lemma1Result lemma1(const TruncatedComplex& tc);

// Monomial fragment of R_H: one u generator per S class plus the sign,
// modulo triangular products, hexagonal/orientation consequences, and the
// Lemma-1 relations. v generators are not carried; they rewrite to u's.
class RhSkeleton {
public:
    RhSkeleton() = default;

    const SignedAbelianGroup& group() const { return group_; }
    bool one_element() const { return group_.is_one_element(); }
    int gen_of_orbit(int orbit) const { return orbit_gen_[orbit]; }
    int orbit_of_gen(int g) const { return gen_orbit_[g]; }
    int gen_count() const { return static_cast<int>(gen_orbit_.size()); }

    SignedMonomial u(OrShort e) const;  // generator monomial of an oriented class
    struct VImage {
        bool zero = false;
        SignedMonomial m;
    };
    // v_e rewritten into the u alphabet; zero exactly for the p classes.
    VImage v(OrShort e) const;

    SignedMonomial one() const { return SignedMonomial::one(gen_count()); }
    std::string format(const SignedMonomial& m) const { return group_.format(m); }

private:
    friend RhSkeleton rh_skeleton(const TruncatedComplex& tc, const KashaevPresentation& pres,
                                  const Lemma1Result& lem, bool degenerate);
    const TruncatedComplex* tc_ = nullptr;
    SignedAbelianGroup group_;
    std::vector<int> gen_orbit_, orbit_gen_;
};

RhSkeleton rh_skeleton(const TruncatedComplex& tc, const KashaevPresentation& pres,
                       const Lemma1Result& lem, bool degenerate = false);

// Monomial-level Tietze reduction: eliminate generators appearing with
// exponent ±1 in some monomial relation, preferring to keep low labels.
struct ReducedPresentation {
    std::vector<int> live;  // surviving gen indices (into the skeleton's gens)
    std::vector<std::pair<std::vector<long>, int>> relations;  // over live gens
    std::map<int, SignedMonomial> substitutions;  // eliminated gen -> monomial over live gens
    struct AdditiveRelation {
        std::vector<SignedMonomial> terms;  // over live gens; sums to zero
        std::pair<int, int> cell;
    };
    std::vector<AdditiveRelation> additive;  // those not discharged by cancellation
    std::vector<std::string> live_names;
};

ReducedPresentation simplify(const TruncatedComplex& tc, const KashaevPresentation& pres,
                             const RhSkeleton& skel, const Lemma1Result& lem);

// Numerical values of the generators, per S orbit id.
struct RhPoint {
    std::vector<std::complex<double>> u, v;  // indexed by orbit id
    std::vector<bool> defined;
};

struct Gl2Report {
    double max_triangle_dev = 0.0;
    double max_hexagon_dev = 0.0;
    bool pass(double tol) const { return max_triangle_dev < tol && max_hexagon_dev < tol; }
};

// Triangular faces: ordered product of the three short edge matrices
// [[u,v],[0,1]] is the identity. Hexagonal faces: the product around the
// boundary with the swap matrix [[0,1],[1,0]] inserted at each long edge is
// the identity.
Gl2Report gl2_verify(const TruncatedComplex& tc, const RhPoint& pt);

}  // namespace hrings
