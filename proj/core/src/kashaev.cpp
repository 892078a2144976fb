#include "hrings/kashaev.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hrings {

namespace {

// natural order: numeric runs compare as numbers ("2" < "16", "e1" < "e2")
bool natural_less(const std::string& a, const std::string& b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (isdigit(a[i]) && isdigit(b[j])) {
            size_t i2 = i, j2 = j;
            while (i2 < a.size() && isdigit(a[i2])) ++i2;
            while (j2 < b.size() && isdigit(b[j2])) ++j2;
            long long na = std::stoll(a.substr(i, i2 - i));
            long long nb = std::stoll(b.substr(j, j2 - j));
            if (na != nb) return na < nb;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    return a.size() < b.size();
}

std::array<ShortEdge, 3> triangle_sides(int tet, int v) {
    auto cyc = face_cycle(v);
    std::array<ShortEdge, 3> out;
    for (int k = 0; k < 3; ++k) {
        int x = cyc[k], y = cyc[(k + 1) % 3];
        out[k] = {tet, v, sixth(v, x, y), x};
    }
    return out;
}

}  // namespace

KashaevPresentation presentation(const TruncatedComplex& tc) {
    KashaevPresentation pres;
    pres.gens = tc.s_orbits();
    std::sort(pres.gens.begin(), pres.gens.end(), [&](int a, int b) {
        return natural_less(tc.short_name(a), tc.short_name(b));
    });
    for (auto [t, v] : tc.t_triangles()) {
        KashaevPresentation::Triangle tr;
        tr.cell = {t, v};
        tr.sides = triangle_sides(t, v);
        pres.triangles.push_back(tr);
    }
    std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> seen;
    for (int o : tc.s_orbits()) {
        for (int dir : {1, -1}) {
            OrShort e{o, dir};
            OrShort ch = tc.check_class(e);
            if (!tc.in_s(ch.id)) continue;
            auto a = std::make_pair(e.id, e.dir), b = std::make_pair(ch.id, ch.dir);
            auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
            if (seen.insert(key).second) pres.hex_pairs.push_back({e, ch});
        }
    }
    return pres;
}

// ---- Lemma 1 ---------------------------------------------------------------

namespace {

// Monomials over the frame alphabet u_l, v_l, u_m, v_m, u_p, v_p.
struct Sym {
    int sign = 1;
    std::array<int, 6> e{};
    Sym operator*(const Sym& o) const {
        Sym r{sign * o.sign, e};
        for (int i = 0; i < 6; ++i) r.e[i] += o.e[i];
        return r;
    }
    Sym inv() const {
        Sym r{sign, e};
        for (auto& x : r.e) x = -x;
        return r;
    }
    Sym pow(int p) const {
        Sym r{(p % 2 == 0) ? 1 : sign, e};
        for (auto& x : r.e) x *= p;
        return r;
    }
    bool is_one() const {
        if (sign != 1) return false;
        for (int x : e)
            if (x) return false;
        return true;
    }
    std::string str() const {
        static const char* nm[6] = {"u_l", "v_l", "u_m", "v_m", "u_p", "v_p"};
        std::ostringstream out;
        if (sign < 0) out << "-";
        bool any = false;
        for (int i = 0; i < 6; ++i) {
            if (!e[i]) continue;
            if (any) out << " ";
            any = true;
            out << nm[i];
            if (e[i] != 1) out << "^" << e[i];
        }
        if (!any) out << "1";
        return out.str();
    }
};

struct UV {
    Sym u, v;
};

UV reversal(const UV& x) {
    // u_rev = u^{-1}, v_rev = -u^{-1} v
    UV r;
    r.u = x.u.inv();
    Sym minus{-1, {}};
    r.v = minus * x.u.inv() * x.v;
    return r;
}

}  // namespace

Lemma1Result lemma1(const TruncatedComplex& tc) {
    const DistinguishedFrame& fr = tc.frame();
    Lemma1Result out;
    out.l = tc.short_class(fr.l);
    out.m = tc.short_class(fr.m);
    out.p = tc.short_class(fr.p);

    // Table of the eight framed lifts with their u,v images in the frame
    // alphabet; checks swap u and v, reversal follows the orientation rule.
    auto base = [](int ui, int vi) {
        UV r;
        r.u.e[ui] = 1;
        r.v.e[vi] = 1;
        return r;
    };
    std::vector<std::pair<ShortEdge, UV>> table;
    UV L = base(0, 1), M = base(2, 3), P = base(4, 5);
    table.push_back({fr.l, L});
    table.push_back({fr.m, M});
    table.push_back({fr.p, P});
    table.push_back({fr.p2, P});
    table.push_back({check_edge(fr.l), {L.v, L.u}});
    table.push_back({check_edge(fr.m), {M.v, M.u}});
    UV lrev = reversal(L), mrev = reversal(M);
    table.push_back({check_edge(reverse(fr.l)), {lrev.v, lrev.u}});
    table.push_back({check_edge(reverse(fr.m)), {mrev.v, mrev.u}});

    auto lookup = [&](const ShortEdge& e) -> UV {
        for (const auto& [le, uv] : table) {
            if (le == e) return uv;
            if (reverse(le) == e) return reversal(uv);
        }
        throw TriError("lemma1: side of the distinguished triangle is not a framed edge");
    };

    // The two knot-free corner triangles of the distinguished tetrahedron.
    std::array<Sym, 2> monomials;
    std::array<std::array<Sym, 3>, 2> additive;
    int idx = 0;
    for (int v : {fr.bl, fr.br}) {
        auto sides = triangle_sides(tc.distinguished().tet, v);
        UV a = lookup(sides[0]), b = lookup(sides[1]), c = lookup(sides[2]);
        monomials[idx] = a.u * b.u * c.u;
        additive[idx] = {a.u * b.u * c.v, a.u * b.v, a.v};
        out.equations.push_back("1 = " + monomials[idx].str());
        out.equations.push_back("0 = " + additive[idx][0].str() + " + " +
                                additive[idx][1].str() + " + " + additive[idx][2].str());
        ++idx;
    }

    // Solve each monomial relation for u_p.
    std::array<Sym, 2> w;
    for (int k = 0; k < 2; ++k) {
        int a = monomials[k].e[4];
        if (a != 1 && a != -1)
            throw TriError("lemma1: u_p does not appear with exponent ±1");
        Sym rest = monomials[k];
        rest.e[4] = 0;
        w[k] = rest.inv().pow(a == 1 ? 1 : -1);
        if (a == -1) w[k] = rest;  // u_p^{-1} R = 1  =>  u_p = R
    }
    // w0 / w1 must be a power of u_l u_m^{-1}: this forces u_l = u_m.
    Sym q = w[0] * w[1].inv();
    if (q.sign != 1 || q.e[1] || q.e[3] || q.e[4] || q.e[5] || q.e[0] != -q.e[2])
        throw TriError("lemma1: derivation failed, u_l = u_m does not follow");

    // With u_l = u_m the two values of u_p agree; fold u_l into u_m.
    Sym up = w[1];
    up.e[2] += up.e[0];
    up.e[0] = 0;
    if (up.sign != 1 || up.e[2] || up.e[4] || up.e[5] || up.e[1] != 1 || up.e[3] != -1)
        throw TriError("lemma1: u_p is not v_m^{-1} v_l");

    // Substitute into the additive relations; everything without a v_p factor
    // must cancel, leaving (unit) * v_p = 0.
    bool saw_vp = false;
    for (int k = 0; k < 2; ++k) {
        std::vector<Sym> free_terms;
        bool vp_here = false;
        for (Sym t : additive[k]) {
            if (t.e[4] != 0) {
                t = t * (up * Sym{1, {0, 0, 0, 0, -1, 0}}).pow(t.e[4]);
                t.e[4] = 0;
            }
            t.e[2] += t.e[0];
            t.e[0] = 0;
            if (t.e[5] != 0)
                vp_here = true;
            else
                free_terms.push_back(t);
        }
        if (vp_here) saw_vp = true;
        // cancellation check: the v_p-free part sums to zero
        for (size_t i = 0; i < free_terms.size(); ++i) {
            bool cancelled = false;
            for (size_t j = 0; j < free_terms.size(); ++j) {
                if (i == j) continue;
                if (free_terms[i].e == free_terms[j].e &&
                    free_terms[i].sign == -free_terms[j].sign)
                    cancelled = true;
            }
            if (!cancelled)
                throw TriError("lemma1: additive relation does not reduce to v_p = 0");
        }
    }
    if (!saw_vp) throw TriError("lemma1: v_p never appeared in the additive relations");
    return out;
}

// ---- skeleton ---------------------------------------------------------------

SignedMonomial RhSkeleton::u(OrShort e) const {
    int g = orbit_gen_[e.id];
    if (g < 0) throw TriError("skeleton: class is not an S generator");
    return SignedMonomial::gen(gen_count(), g, e.dir);
}

RhSkeleton::VImage RhSkeleton::v(OrShort e) const {
    if (tc_->is_p_type(e.id)) return {true, {}};
    OrShort c1 = tc_->check_class(e);
    if (tc_->in_s(c1.id)) return {false, u(c1)};
    OrShort c2 = tc_->check_class(e.rev());
    if (tc_->in_s(c2.id)) {
        // v_e = -u_e v_{ē} = -u_e u_{ě(ē)}
        SignedMonomial m = u(e) * u(c2);
        m.sign = -m.sign;
        return {false, m};
    }
    throw TriError("skeleton: v generator has no unit rewrite (non-unit element)");
}

RhSkeleton rh_skeleton(const TruncatedComplex& tc, const KashaevPresentation& pres,
                       const Lemma1Result& lem, bool degenerate) {
    RhSkeleton sk;
    sk.tc_ = &tc;
    if (degenerate) {
        sk.group_ = SignedAbelianGroup::one_element();
        return sk;
    }
    sk.gen_orbit_ = pres.gens;
    sk.orbit_gen_.assign(tc.short_orbit_count(), -1);
    std::vector<std::string> names;
    for (size_t i = 0; i < pres.gens.size(); ++i) {
        sk.orbit_gen_[pres.gens[i]] = static_cast<int>(i);
        names.push_back("u_" + tc.short_name(pres.gens[i]));
    }
    const int k = static_cast<int>(pres.gens.size());

    std::vector<std::pair<std::vector<long>, int>> rels;
    auto add = [&](const SignedMonomial& m) {
        rels.push_back({m.e, m.sign});
    };

    // triangular monomial relations
    for (const auto& tr : pres.triangles) {
        SignedMonomial m = SignedMonomial::one(k);
        for (const auto& s : tr.sides) m = m * sk.u(tc.short_class(s));
        add(m);
    }
    // hexagonal + orientation consequences: u_{ě(ē)} u_e u_{ě(e)}^{-1} = -1
    for (int o : tc.s_orbits()) {
        if (tc.is_p_type(o)) continue;
        OrShort e{o, 1};
        OrShort cp = tc.check_class(e), cm = tc.check_class(e.rev());
        if (!tc.in_s(cp.id) || !tc.in_s(cm.id)) continue;
        SignedMonomial m = sk.u(cm) * sk.u(e) * sk.u(cp).inv();
        m.sign = -m.sign;
        add(m);
    }
    // Lemma 1: u_l = u_m and u_p = v_m^{-1} v_l
    add(sk.u(lem.l) * sk.u(lem.m).inv());
    {
        OrShort vm = tc.check_class(lem.m), vl = tc.check_class(lem.l);
        if (!tc.in_s(vm.id) || !tc.in_s(vl.id))
            throw TriError("skeleton: frame checks are not in S");
        SignedMonomial m = sk.u(lem.p) * sk.u(vm) * sk.u(vl).inv();
        add(m);
    }
    sk.group_ = SignedAbelianGroup(names, rels);

    // Monomial consequences of the additive relations: whenever two of them
    // agree on all but one term, the leftover terms are equal units. Iterate
    // until the lattice is stable. A relation collapsing to a single unit
    // would make the ring one-element.
    std::vector<std::vector<SignedMonomial>> trinomials;
    for (const auto& tr : pres.triangles) {
        auto c1 = tc.short_class(tr.sides[0]);
        auto c2 = tc.short_class(tr.sides[1]);
        auto c3 = tc.short_class(tr.sides[2]);
        std::vector<SignedMonomial> terms;
        auto v3 = sk.v(c3);
        if (!v3.zero) terms.push_back(sk.u(c1) * sk.u(c2) * v3.m);
        auto v2 = sk.v(c2);
        if (!v2.zero) terms.push_back(sk.u(c1) * v2.m);
        auto v1 = sk.v(c1);
        if (!v1.zero) terms.push_back(v1.m);
        trinomials.push_back(std::move(terms));
    }
    auto collect = [&](const std::vector<SignedMonomial>& a,
                       const std::vector<SignedMonomial>& b, int bsign) {
        // net coefficients of a + bsign*b grouped by normal form
        std::vector<std::pair<SignedMonomial, int>> groups;
        auto push = [&](const SignedMonomial& t, int coef) {
            SignedMonomial nf = sk.group_.normal_form(t);
            coef *= nf.sign;
            nf.sign = 1;
            for (auto& [g, c] : groups)
                if (g.e == nf.e) {
                    c += coef;
                    return;
                }
            groups.push_back({nf, coef});
        };
        for (const auto& t : a) push(t, 1);
        for (const auto& t : b) push(t, bsign);
        groups.erase(std::remove_if(groups.begin(), groups.end(),
                                    [](const auto& g) { return g.second == 0; }),
                     groups.end());
        return groups;
    };
    bool changed = true;
    bool trivial = false;
    while (changed && !trivial) {
        changed = false;
        std::vector<std::pair<std::vector<long>, int>> found;
        auto inspect = [&](const std::vector<std::pair<SignedMonomial, int>>& groups) {
            if (groups.size() == 1 && (groups[0].second == 1 || groups[0].second == -1)) {
                trivial = true;  // a unit equals zero
                return;
            }
            if (groups.size() != 2) return;
            auto [m1, c1] = groups[0];
            auto [m2, c2] = groups[1];
            if ((c1 != 1 && c1 != -1) || c2 != -c1) return;
            SignedMonomial rel = m1 * m2.inv();
            if (c1 == c2) rel.sign = -rel.sign;  // never hit: c2 == -c1
            // c1 M1 - c1 M2 = 0  =>  M1 = M2
            if (!sk.group_.is_one(rel)) found.push_back({rel.e, rel.sign});
        };
        std::vector<SignedMonomial> empty;
        for (size_t i = 0; i < trinomials.size() && !trivial; ++i) {
            inspect(collect(trinomials[i], empty, 1));
            for (size_t j = i + 1; j < trinomials.size() && !trivial; ++j) {
                inspect(collect(trinomials[i], trinomials[j], -1));
                inspect(collect(trinomials[i], trinomials[j], 1));
            }
        }
        if (trivial) break;
        if (!found.empty()) {
            for (auto& r : found) rels.push_back(std::move(r));
            sk.group_ = SignedAbelianGroup(names, rels);
            changed = true;
        }
    }
    if (trivial) {
        sk.group_ = SignedAbelianGroup::one_element();
        return sk;
    }
    return sk;
}

// ---- simplify ---------------------------------------------------------------

ReducedPresentation simplify(const TruncatedComplex& tc, const KashaevPresentation& pres,
                             const RhSkeleton& skel, const Lemma1Result& lem) {
    (void)lem;
    ReducedPresentation out;
    const int k = skel.gen_count();
    // working relation rows over the full generator space, sign as the last slot
    std::vector<std::pair<std::vector<long>, int>> rows;
    for (const auto& r : skel.group().relation_lattice().basis()) {
        std::vector<long> e(k);
        bool skip = true;
        for (int i = 0; i < k; ++i) {
            e[i] = static_cast<long>(r[i].get_si());
            if (e[i]) skip = false;
        }
        if (skip) continue;  // pure sign row
        rows.push_back({std::move(e), r[k] % 2 != 0 ? -1 : 1});
    }

    std::vector<bool> live(k, true);
    std::map<int, SignedMonomial> subs;

    auto substitute = [&](SignedMonomial& m, int g, const SignedMonomial& val) {
        long p = m.e[g];
        if (!p) return;
        m.e[g] = 0;
        m = m * val.pow(p);
    };

    for (;;) {
        // eliminate the highest-index live generator that appears with ±1
        int best_g = -1, best_row = -1;
        for (size_t r = 0; r < rows.size(); ++r)
            for (int g = k - 1; g >= 0; --g)
                if (live[g] && (rows[r].first[g] == 1 || rows[r].first[g] == -1)) {
                    if (g > best_g) {
                        best_g = g;
                        best_row = static_cast<int>(r);
                    }
                    break;
                }
        if (best_g < 0) break;
        auto [re, rs] = rows[best_row];
        long a = re[best_g];
        // u_g = ( sign * prod_{i != g} u_i^{e_i} )^{-a}
        SignedMonomial val = SignedMonomial::one(k);
        val.sign = rs;
        for (int i = 0; i < k; ++i)
            if (i != best_g) val.e[i] = re[i];
        val = val.pow(-a);
        live[best_g] = false;
        rows.erase(rows.begin() + best_row);
        for (auto& [e, s] : rows) {
            long p = e[best_g];
            if (!p) continue;
            e[best_g] = 0;
            SignedMonomial vp = val.pow(p);
            for (int i = 0; i < k; ++i) e[i] += vp.e[i];
            s *= vp.sign;
        }
        for (auto& [g, m] : subs) substitute(m, best_g, val);
        subs[best_g] = val;
        // drop empty rows (keep sign-only rows: they witness 1 = -1)
        rows.erase(std::remove_if(rows.begin(), rows.end(),
                                  [](const auto& r) {
                                      if (r.second != 1) return false;
                                      for (long x : r.first)
                                          if (x) return false;
                                      return true;
                                  }),
                   rows.end());
    }

    for (int g = 0; g < k; ++g)
        if (live[g]) {
            out.live.push_back(g);
            out.live_names.push_back(skel.group().names()[g]);
        }
    // compact the remaining rows over the live generators
    for (const auto& [e, s] : rows) {
        std::vector<long> ce;
        for (int g : out.live) ce.push_back(e[g]);
        bool zero = std::all_of(ce.begin(), ce.end(), [](long x) { return x == 0; });
        if (zero && s == 1) continue;
        out.relations.push_back({std::move(ce), s});
    }
    out.substitutions = std::move(subs);

    // additive relations rewritten through the substitution table; drop the
    // ones whose terms cancel in the skeleton
    for (const auto& tr : pres.triangles) {
        auto c1 = tc.short_class(tr.sides[0]);
        auto c2 = tc.short_class(tr.sides[1]);
        auto c3 = tc.short_class(tr.sides[2]);
        std::vector<SignedMonomial> terms;
        auto v3 = skel.v(c3);
        if (!v3.zero) terms.push_back(skel.u(c1) * skel.u(c2) * v3.m);
        auto v2 = skel.v(c2);
        if (!v2.zero) terms.push_back(skel.u(c1) * v2.m);
        auto v1 = skel.v(c1);
        if (!v1.zero) terms.push_back(v1.m);
        // group by skeleton normal form
        std::vector<std::pair<SignedMonomial, int>> groups;  // abs monomial, net count
        for (const auto& t : terms) {
            SignedMonomial nf = skel.group().normal_form(t);
            int sgn = nf.sign;
            nf.sign = 1;
            bool found = false;
            for (auto& [g, c] : groups)
                if (g.e == nf.e) {
                    c += sgn;
                    found = true;
                }
            if (!found) groups.push_back({nf, sgn});
        }
        bool discharged = true;
        for (const auto& [g, c] : groups)
            if (c != 0) discharged = false;
        if (discharged) continue;
        ReducedPresentation::AdditiveRelation ar;
        ar.cell = tr.cell;
        for (SignedMonomial t : terms) {
            for (const auto& [g, m] : out.substitutions) substitute(t, g, m);
            ar.terms.push_back(t);
        }
        out.additive.push_back(std::move(ar));
    }
    return out;
}

// ---- GL(2) ------------------------------------------------------------------

namespace {

using Mat2 = std::array<std::complex<double>, 4>;

Mat2 mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

double dev_from_identity(const Mat2& m) {
    return std::max({std::abs(m[0] - 1.0), std::abs(m[1]), std::abs(m[2]),
                     std::abs(m[3] - 1.0)});
}

}  // namespace

Gl2Report gl2_verify(const TruncatedComplex& tc, const RhPoint& pt) {
    Gl2Report rep;
    auto uval = [&](const ShortEdge& e) {
        OrShort c = tc.short_class(e);
        std::complex<double> u = pt.u[c.id];
        return c.dir > 0 ? u : 1.0 / u;
    };
    auto vval = [&](const ShortEdge& e) {
        OrShort c = tc.short_class(e);
        if (c.dir > 0) return pt.v[c.id];
        return -pt.v[c.id] / pt.u[c.id];
    };
    auto mat = [&](const ShortEdge& e) -> Mat2 { return {uval(e), vval(e), 0.0, 1.0}; };
    const Mat2 swap{0.0, 1.0, 1.0, 0.0};

    for (auto [t, v] : tc.t_triangles()) {
        Mat2 m{1.0, 0.0, 0.0, 1.0};
        for (const auto& s : triangle_sides(t, v)) m = mul(m, mat(s));
        rep.max_triangle_dev = std::max(rep.max_triangle_dev, dev_from_identity(m));
    }
    const auto& d = tc.distinguished();
    for (int t = 0; t < tc.tri().tet_count(); ++t)
        for (int f = 0; f < 4; ++f) {
            if (tc.face_orbit_of({t, f}) == tc.fk_orbit()) continue;
            Mat2 m{1.0, 0.0, 0.0, 1.0};
            for (const auto& step : tc.hex_boundary(t, f)) {
                m = mul(m, swap);
                m = mul(m, mat(step.short_edge));
            }
            rep.max_hexagon_dev = std::max(rep.max_hexagon_dev, dev_from_identity(m));
        }
    (void)d;
    return rep;
}

}  // namespace hrings
