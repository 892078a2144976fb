#pragma once

#include <map>
#include <string>
#include <vector>

#include "hrings/gluing.hpp"
#include "hrings/kashaev.hpp"
#include "hrings/trunc.hpp"

namespace hrings {

// Everything the ring pipeline derives from one H-triangulation.
struct RingModel {
    HTriangulation ht;
    TruncatedComplex tc;
    Triangulation ideal;
    CellCorrespondence corr;
    ShapeAssignment sa;
    GluingSystem gs;
    SignedAbelianGroup ri;
    KashaevPresentation pres;
    Lemma1Result lem;
    RhSkeleton rh;
    bool degenerate = false;

    int param_of_name(const std::string& name) const;
};

RingModel build_model(const HTriangulation& ht);

// ---- f ----------------------------------------------------------------------

// Generator images of f: R_I -> R_H; entry i is the image of parameter i as a
// monomial over the R_H skeleton generators.
struct FMap {
    std::vector<SignedMonomial> images;
};

// f at one long edge and one of its endpoints: v_i v_j^{-1} for the two short
// edges leaving the chosen endpoint, clockwise after the edge itself.
SignedMonomial f_of_edge(const RingModel& m, int htet, int a, int b, int endpoint);
// The equivalent computation through the opposite parallel edges: u_p u_q^{-1}.
SignedMonomial f_of_edge_u_form(const RingModel& m, int htet, int a, int b, int endpoint);

FMap f_map(const RingModel& m);
SignedMonomial f_apply(const RingModel& m, const FMap& f, const SignedMonomial& ri_monomial);

struct WellDefinedReport {
    std::vector<ValidationCheck> checks;
    int additive_deferred = 0;  // identities queued for numeric verification
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

WellDefinedReport verify_f(const RingModel& m, const FMap& f);

// ---- the inverse construction ------------------------------------------------

struct GOptions {
    bool alt_sigma = false;  // take the other lift where both avoid T^K
    bool alt_s = false;      // take the second parallel edge where available
    bool alt_sgn = false;    // shift the decomposition by a kernel vector
};

struct SgnDecomposition {
    int edge_class = -1;
    std::vector<mpz_class> coeff;  // per non-distinguished face orbit, σ-lift order
};

class HOneError : public TriError {
public:
    HOneError(std::string msg, int edge_class)
        : TriError(std::move(msg)), edge_class_(edge_class) {}
    int edge_class() const { return edge_class_; }

private:
    int edge_class_;
};

// Fixed choice data for the g construction.
struct GContext {
    std::vector<FaceSlot> sigma;          // per h-orbit index
    std::vector<int> h_index_of_face;     // face orbit -> σ column or -1
    std::vector<int> l_index_of_orbit;    // edge orbit -> row or -1 (K)
    std::vector<int> l_orbits;            // row -> edge orbit
    IntMatrix d2;                         // reduced boundary, K and F^K removed
    std::vector<OrShort> s_choice;        // per row: parallel short class of the
                                          // canonical orientation
};

GContext make_gcontext(const RingModel& m, const GOptions& opts = {});

// Word over the shape parameters with f(word) = u_from u_to^{-1}; `from` and
// `to` must be parallel.
SignedMonomial parallel_transport_word(const RingModel& m, const GContext& ctx, OrShort from,
                                       OrShort to);

SgnDecomposition sgn_decomposition(const RingModel& m, const GContext& ctx, int edge_class,
                                   const GOptions& opts = {});

struct GMap {
    std::vector<SignedMonomial> u_images;  // per S orbit, canonical orientation
    std::map<int, SgnDecomposition> sgn;   // per L row
    GOptions opts;
};

// Requires H_1(M,Z) = 0; throws HOneError otherwise.
GMap g_map(const RingModel& m, const GContext& ctx, const GOptions& opts = {});
SignedMonomial g_apply(const RingModel& m, const GMap& g, const SignedMonomial& rh_monomial);

// ---- reports ------------------------------------------------------------------

struct IsoReport {
    std::vector<ValidationCheck> checks;
    bool iso_confirmed = false;
    bool trivial = false;  // one-element case
};

IsoReport verify_iso(const RingModel& m, const FMap& f);

struct ImageKernelReport {
    AbelianGroupDesc cokernel;
    std::vector<SignedMonomial> kernel_witnesses;  // over R_I generators
    std::vector<bool> gen_in_image;                // per R_H generator
    bool injective_skeleton = false;
    bool surjective_skeleton = false;
};

ImageKernelReport image_kernel(const RingModel& m, const FMap& f);
SkeletonHom skeleton_hom(const RingModel& m, const FMap& f);

// ---- numerics -------------------------------------------------------------------

struct TransportReport {
    RhPoint point;
    double max_relation_dev = 0.0;   // triangular, hexagonal, orientation
    double max_f_additive_dev = 0.0; // f(z') (1 - f(z)) = 1 instances
    double max_f_value_dev = 0.0;    // f images reproduce the parameters
};

TransportReport numeric_transport(const RingModel& m, const GMap& g, const FMap& f,
                                  const std::vector<cplx>& params);

// Value of f(parameter) at a numerical R_H point.
cplx eval_f(const RingModel& m, const FMap& f, int param, const RhPoint& pt);

}  // namespace hrings
