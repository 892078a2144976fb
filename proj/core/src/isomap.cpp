#include "hrings/isomap.hpp"

#include <algorithm>
#include <sstream>

namespace hrings {

int RingModel::param_of_name(const std::string& name) const {
    for (size_t i = 0; i < sa.names.size(); ++i)
        if (sa.names[i] == name) return static_cast<int>(i);
    throw TriError("unknown shape parameter: " + name);
}

RingModel build_model(const HTriangulation& ht) {
    RingModel m;
    m.ht = ht;
    m.tc = truncate(ht);
    auto [ideal, corr] = collapse(ht);
    m.ideal = std::move(ideal);
    m.corr = std::move(corr);
    m.sa = shape_assignment(m.ideal, m.corr.ideal_shape_labels);
    m.gs = gluing_system(m.ideal, m.sa);
    m.degenerate = m.gs.degenerate;
    m.ri = ri_skeleton(m.gs);
    m.pres = presentation(m.tc);
    m.lem = lemma1(m.tc);
    m.rh = rh_skeleton(m.tc, m.pres, m.lem, m.degenerate);
    return m;
}

// ---- f ------------------------------------------------------------------------

SignedMonomial f_of_edge(const RingModel& m, int htet, int a, int b, int endpoint) {
    int v = endpoint, bp = (endpoint == a) ? b : a;
    auto cd = other_two(v, bp);
    int c = cd[0], d = cd[1];
    if (even_tuple(v, bp, c, d)) std::swap(c, d);
    ShortEdge ei{htet, v, c, bp}, ej{htet, v, d, bp};
    auto vi = m.rh.v(m.tc.short_class(ei));
    auto vj = m.rh.v(m.tc.short_class(ej));
    if (vi.zero || vj.zero)
        throw TriError("f: image touches the zero element v_p");
    return vi.m * vj.m.inv();
}

SignedMonomial f_of_edge_u_form(const RingModel& m, int htet, int a, int b, int endpoint) {
    int v = endpoint, bp = (endpoint == a) ? b : a;
    auto cd = other_two(v, bp);
    int c = cd[0], d = cd[1];
    if (even_tuple(v, bp, c, d)) std::swap(c, d);
    ShortEdge ei{htet, v, c, bp}, ej{htet, v, d, bp};
    OrShort p = m.tc.check_class(m.tc.short_class(ei));
    OrShort q = m.tc.check_class(m.tc.short_class(ej));
    if (!m.tc.in_s(p.id) || !m.tc.in_s(q.id))
        throw TriError("f (u form): opposite edge is not in S");
    return m.rh.u(p) * m.rh.u(q).inv();
}

FMap f_map(const RingModel& m) {
    if (m.degenerate) return {};
    FMap f;
    for (int tau = 0; tau < m.sa.tets; ++tau) {
        int htet = m.corr.ideal_to_tet[tau];
        for (int q = 0; q < 3; ++q) {
            int b = q + 1;  // quad q contains edge {0, q+1}
            f.images.push_back(f_of_edge(m, htet, 0, b, 0));
        }
    }
    return f;
}

SignedMonomial f_apply(const RingModel& m, const FMap& f, const SignedMonomial& w) {
    SignedMonomial out = SignedMonomial::one(m.rh.gen_count());
    out.sign = w.sign;
    for (size_t i = 0; i < w.e.size(); ++i)
        if (w.e[i]) out = out * f.images[i].pow(w.e[i]);
    return out;
}

WellDefinedReport verify_f(const RingModel& m, const FMap& f) {
    WellDefinedReport rep;
    auto add = [&](std::string name, bool pass, std::string detail = "") {
        rep.checks.push_back({std::move(name), pass, std::move(detail)});
    };
    if (m.degenerate) {
        add("degenerate: both rings have one element", true);
        return rep;
    }
    const auto& G = m.rh.group();
    for (int tau = 0; tau < m.sa.tets; ++tau) {
        SignedMonomial prod = f.images[3 * tau] * f.images[3 * tau + 1] * f.images[3 * tau + 2];
        bool ok = G.is_minus_one(prod);
        add("tet " + std::to_string(tau) + ": f(q0) f(q1) f(q2) = -1", ok,
            ok ? "" : G.format(G.normal_form(prod)));
    }
    for (const auto& eq : m.gs.equations) {
        SignedMonomial img = SignedMonomial::one(m.rh.gen_count());
        for (size_t i = 0; i < eq.exponents.size(); ++i)
            if (eq.exponents[i]) img = img * f.images[i].pow(eq.exponents[i]);
        bool ok = G.is_one(img);
        add("edge class " + std::to_string(eq.orbit) + ": f respects the gluing equation", ok,
            ok ? "" : G.format(G.normal_form(img)));
    }
    rep.additive_deferred = 3 * m.sa.tets;  // f(z')(1 - f(z)) = 1 per quad chain
    return rep;
}

// ---- g machinery -----------------------------------------------------------------

GContext make_gcontext(const RingModel& m, const GOptions& opts) {
    GContext ctx;
    const auto& tc = m.tc;
    const int dtet = tc.distinguished().tet;

    ctx.h_index_of_face.assign(tc.face_orbit_count(), -1);
    for (int F : tc.h_orbits()) {
        FaceSlot s1 = tc.face_rep(F);
        FaceSlot s2 = tc.face_other_lift(s1);
        std::vector<FaceSlot> cands;
        if (s1.tet != dtet) cands.push_back(s1);
        if (s2.tet != dtet) cands.push_back(s2);
        if (cands.empty())
            throw TriError("no hexagonal lift outside the distinguished tetrahedron");
        std::sort(cands.begin(), cands.end());
        FaceSlot pick = cands.front();
        if (opts.alt_sigma && cands.size() > 1) pick = cands.back();
        ctx.h_index_of_face[F] = static_cast<int>(ctx.sigma.size());
        ctx.sigma.push_back(pick);
    }

    ctx.l_index_of_orbit.assign(tc.long_orbit_count(), -1);
    for (int id : tc.l_orbits()) {
        ctx.l_index_of_orbit[id] = static_cast<int>(ctx.l_orbits.size());
        ctx.l_orbits.push_back(id);
    }

    ctx.d2 = IntMatrix(static_cast<int>(ctx.l_orbits.size()), static_cast<int>(ctx.sigma.size()));
    for (size_t col = 0; col < ctx.sigma.size(); ++col) {
        FaceSlot s = ctx.sigma[col];
        for (const auto& step : tc.hex_boundary(s.tet, s.face)) {
            OrLong cls = tc.long_class(step.long_edge);
            int row = ctx.l_index_of_orbit[cls.id];
            if (row < 0) throw TriError("distinguished edge on a non-distinguished face");
            ctx.d2.at(row, static_cast<int>(col)) += cls.dir;
        }
    }

    // s: a parallel short edge class for each long edge class.
    for (int id : ctx.l_orbits) {
        std::vector<OrShort> cands;
        for (int o : tc.s_orbits())
            for (int dir : {1, -1}) {
                OrShort e{o, dir};
                if (tc.parallel_long_of(e) == OrLong{id, 1}) cands.push_back(e);
            }
        if (cands.empty()) throw TriError("long edge class without a parallel short edge");
        std::sort(cands.begin(), cands.end(), [](const OrShort& a, const OrShort& b) {
            return a.id != b.id ? a.id < b.id : a.dir > b.dir;
        });
        OrShort pick = cands.front();
        if (opts.alt_s && cands.size() > 1) pick = cands[1];
        ctx.s_choice.push_back(pick);
    }
    return ctx;
}

SignedMonomial parallel_transport_word(const RingModel& m, const GContext& ctx, OrShort from,
                                       OrShort to) {
    (void)ctx;
    const auto& tc = m.tc;
    const int np = 3 * m.sa.tets;
    if (from == to) return SignedMonomial::one(np);
    if (!tc.parallel(from, to)) throw TriError("parallel transport: edges are not parallel");

    ShortEdge x0 = check_edge(tc.short_rep(from));
    ShortEdge x1 = check_edge(tc.short_rep(to));
    OrShort c0 = tc.short_class(x0), c1 = tc.short_class(x1);
    auto fan = tc.wedge_fan(x0);
    const int K = static_cast<int>(fan.size());

    std::vector<int> p0, p1;
    for (int k = 0; k < K; ++k) {
        OrShort ek = tc.short_class(fan[k].enter);
        if (ek == c0) p0.push_back(k);
        if (ek == c1) p1.push_back(k);
    }
    if (p0.empty() || p1.empty())
        throw TriError("parallel transport: target not found on the endpoint disk");

    // Consuming wedges a..k-1 forward telescopes to v_enter_a v_enter_k^{-1};
    // a route the other way round is the inverse of the forward word.
    int best_len = -1, best_a = -1, best_inv = 0;
    auto consider = [&](int a, int k, int invert) {
        int len = (k - a + K) % K;
        for (int j = 0; j < len; ++j)
            if (fan[(a + j) % K].in_distinguished) return;
        if (best_len < 0 || len < best_len ||
            (len == best_len && (invert < best_inv || (invert == best_inv && a < best_a)))) {
            best_len = len;
            best_a = a;
            best_inv = invert;
        }
    };
    for (int a : p0)
        for (int k : p1) consider(a, k, 0);
    for (int a : p1)
        for (int k : p0) consider(a, k, 1);
    if (best_len < 0)
        throw TriError("parallel transport: every path crosses the distinguished tetrahedron");

    SignedMonomial w = SignedMonomial::one(np);
    for (int j = 0; j < best_len; ++j) {
        const auto& wd = fan[(best_a + j) % K];
        int tau = m.corr.tet_to_ideal[wd.tet];
        w.e[3 * tau + quad_of_edge(wd.v, wd.b)] += 1;
    }
    return best_inv ? w.inv() : w;
}

SgnDecomposition sgn_decomposition(const RingModel& m, const GContext& ctx, int edge_class,
                                   const GOptions& opts) {
    int row = ctx.l_index_of_orbit[edge_class];
    if (row < 0) throw TriError("sgn: the distinguished edge class has no decomposition");
    std::vector<mpz_class> b(ctx.l_orbits.size());
    b[row] = 1;
    auto aff = solve_integer_affine(ctx.d2, b);
    if (!aff)
        throw HOneError("sgn: no integer decomposition; H_1 obstruction at edge class " +
                            std::to_string(edge_class),
                        edge_class);
    SgnDecomposition out;
    out.edge_class = edge_class;
    out.coeff = aff->particular;
    if (opts.alt_sgn && !aff->kernel_basis.empty()) {
        for (size_t i = 0; i < out.coeff.size(); ++i) out.coeff[i] += aff->kernel_basis[0][i];
    }
    return out;
}

GMap g_map(const RingModel& m, const GContext& ctx, const GOptions& opts) {
    const auto& tc = m.tc;
    const int np = 3 * m.sa.tets;
    GMap g;
    g.opts = opts;

    // m_{s(A)} per long edge class row
    std::vector<SignedMonomial> msA;
    for (size_t row = 0; row < ctx.l_orbits.size(); ++row) {
        SgnDecomposition sgn =
            sgn_decomposition(m, ctx, ctx.l_orbits[row], opts);
        SignedMonomial word = SignedMonomial::one(np);
        for (size_t col = 0; col < ctx.sigma.size(); ++col) {
            if (sgn.coeff[col] == 0) continue;
            long c = static_cast<long>(sgn.coeff[col].get_si());
            FaceSlot F = ctx.sigma[col];
            for (const auto& step : tc.hex_boundary(F.tet, F.face)) {
                OrLong cls = tc.long_class(step.long_edge);
                OrShort sA = ctx.s_choice[ctx.l_index_of_orbit[cls.id]];
                if (cls.dir < 0) sA = sA.rev();
                OrShort rFE = tc.short_class(tc.r_map(F, step.long_edge));
                SignedMonomial mfe = parallel_transport_word(m, ctx, sA, rFE);
                word = word * mfe.pow(c);
            }
        }
        g.sgn.emplace(static_cast<int>(row), std::move(sgn));
        msA.push_back(std::move(word));
    }

    // extend to every S class through the corollary words
    g.u_images.assign(tc.short_orbit_count(), SignedMonomial::one(np));
    for (int o : tc.s_orbits()) {
        if (tc.is_p_type(o)) continue;  // handled through the Lemma-1 relation
        OrShort e{o, 1};
        OrLong A = tc.parallel_long_of(e);
        int row = ctx.l_index_of_orbit[A.id];
        if (row < 0)
            throw TriError("g: short edge parallel only to the distinguished edge class");
        OrShort sA = ctx.s_choice[row];
        if (A.dir < 0) sA = sA.rev();
        SignedMonomial w = parallel_transport_word(m, ctx, e, sA);
        g.u_images[o] = w * msA[row].pow(A.dir);
    }
    // p is parallel only to K; its image is forced by u_p = v_m^{-1} v_l
    {
        auto g_of = [&](OrShort e) { return g.u_images[e.id].pow(e.dir); };
        OrShort vm = tc.check_class(m.lem.m), vl = tc.check_class(m.lem.l);
        SignedMonomial up = g_of(vm).inv() * g_of(vl);
        g.u_images[m.lem.p.id] = up.pow(m.lem.p.dir);
    }
    return g;
}

SignedMonomial g_apply(const RingModel& m, const GMap& g, const SignedMonomial& w) {
    SignedMonomial out = SignedMonomial::one(3 * m.sa.tets);
    out.sign = w.sign;
    for (size_t i = 0; i < w.e.size(); ++i)
        if (w.e[i]) out = out * g.u_images[m.rh.orbit_of_gen(static_cast<int>(i))].pow(w.e[i]);
    return out;
}

// ---- verification -------------------------------------------------------------

IsoReport verify_iso(const RingModel& m, const FMap& f) {
    IsoReport rep;
    auto add = [&](std::string name, bool pass, std::string detail = "") {
        rep.checks.push_back({std::move(name), pass, std::move(detail)});
    };
    if (m.degenerate) {
        rep.trivial = true;
        rep.iso_confirmed = true;
        add("one-element rings on both sides; isomorphism is trivial", true);
        return rep;
    }

    GContext ctx = make_gcontext(m, {});
    GMap g;
    try {
        g = g_map(m, ctx, {});
    } catch (const HOneError& e) {
        add("H_1(M,Z) = 0 (g construction)", false, e.what());
        rep.iso_confirmed = false;
        return rep;
    }

    bool fog_ok = true, gof_ok = true;
    std::string detail;
    for (int gi = 0; gi < m.rh.gen_count(); ++gi) {
        int orbit = m.rh.orbit_of_gen(gi);
        SignedMonomial img = f_apply(m, f, g.u_images[orbit]);
        if (!m.rh.group().equal(img, SignedMonomial::gen(m.rh.gen_count(), gi))) {
            fog_ok = false;
            detail = "f(g(u)) != u at " + m.rh.group().names()[gi];
        }
    }
    add("f ∘ g = id on R_H generators", fog_ok, detail);
    detail.clear();
    for (int pi = 0; pi < 3 * m.sa.tets; ++pi) {
        SignedMonomial back = g_apply(m, g, f.images[pi]);
        if (!m.ri.equal(back, SignedMonomial::gen(3 * m.sa.tets, pi))) {
            gof_ok = false;
            detail = "g(f(z)) != z at " + m.sa.names[pi];
        }
    }
    add("g ∘ f = id on R_I generators", gof_ok, detail);

    // choice independence: each alternative must give skeleton-equal images
    struct Alt {
        const char* name;
        GOptions opts;
    };
    const Alt alts[] = {{"sgn", {false, false, true}},
                        {"sigma", {true, false, false}},
                        {"s", {false, true, false}}};
    for (const auto& [name, opts] : alts) {
        GContext ctx2 = make_gcontext(m, opts);
        GMap g2 = g_map(m, ctx2, opts);
        bool same = true;
        std::string d2;
        for (int o : m.tc.s_orbits())
            if (!m.ri.equal(g.u_images[o], g2.u_images[o])) {
                same = false;
                d2 = "image of u_" + m.tc.short_name(o) + " changed";
            }
        add(std::string("g independent of the ") + name + " choice", same, d2);
    }

    rep.iso_confirmed = rep.checks.size() && fog_ok && gof_ok;
    for (const auto& c : rep.checks)
        if (!c.pass) rep.iso_confirmed = false;
    return rep;
}

SkeletonHom skeleton_hom(const RingModel& m, const FMap& f) {
    SkeletonHom hom;
    hom.src = &m.ri;
    hom.dst = &m.rh.group();
    hom.images = f.images;
    return hom;
}

ImageKernelReport image_kernel(const RingModel& m, const FMap& f) {
    ImageKernelReport rep;
    SkeletonHom hom = skeleton_hom(m, f);
    rep.cokernel = hom.cokernel_invariants();
    rep.kernel_witnesses = hom.kernel_witnesses();
    rep.gen_in_image.resize(m.rh.gen_count());
    bool all_in = true;
    for (int gi = 0; gi < m.rh.gen_count(); ++gi) {
        rep.gen_in_image[gi] = hom.in_image(SignedMonomial::gen(m.rh.gen_count(), gi));
        all_in = all_in && rep.gen_in_image[gi];
    }
    rep.surjective_skeleton = all_in;
    rep.injective_skeleton = rep.kernel_witnesses.empty();
    return rep;
}

// ---- numerics -------------------------------------------------------------------

TransportReport numeric_transport(const RingModel& m, const GMap& g, const FMap& f,
                                  const std::vector<cplx>& params) {
    const auto& tc = m.tc;
    TransportReport rep;
    auto eval_ri = [&](const SignedMonomial& w) {
        cplx v = w.sign < 0 ? -1.0 : 1.0;
        for (size_t i = 0; i < w.e.size(); ++i)
            if (w.e[i]) v *= std::pow(params[i], static_cast<double>(w.e[i]));
        return v;
    };

    RhPoint pt;
    pt.u.assign(tc.short_orbit_count(), 0.0);
    pt.v.assign(tc.short_orbit_count(), 0.0);
    pt.defined.assign(tc.short_orbit_count(), false);
    for (int o : tc.s_orbits()) {
        pt.u[o] = eval_ri(g.u_images[o]);
        pt.defined[o] = true;
    }
    for (int o : tc.s_orbits()) {
        if (tc.is_p_type(o)) {
            pt.v[o] = 0.0;  // the Lemma value
            continue;
        }
        OrShort ch = tc.check_class({o, 1});
        if (!tc.in_s(ch.id)) throw TriError("numeric transport: missing v derivation path");
        pt.v[o] = ch.dir > 0 ? pt.u[ch.id] : 1.0 / pt.u[ch.id];
    }

    auto uval = [&](const ShortEdge& e) {
        OrShort c = tc.short_class(e);
        return c.dir > 0 ? pt.u[c.id] : 1.0 / pt.u[c.id];
    };
    auto vval = [&](const ShortEdge& e) {
        OrShort c = tc.short_class(e);
        return c.dir > 0 ? pt.v[c.id] : -pt.v[c.id] / pt.u[c.id];
    };
    auto track = [&](double& slot, cplx dev) { slot = std::max(slot, std::abs(dev)); };

    // triangular relations, both families
    for (auto [t, v] : tc.t_triangles()) {
        auto cyc = face_cycle(v);
        std::array<ShortEdge, 3> s;
        for (int k = 0; k < 3; ++k) {
            int x = cyc[k], y = cyc[(k + 1) % 3];
            s[k] = {t, v, sixth(v, x, y), x};
        }
        track(rep.max_relation_dev, uval(s[0]) * uval(s[1]) * uval(s[2]) - 1.0);
        track(rep.max_relation_dev,
              uval(s[0]) * uval(s[1]) * vval(s[2]) + uval(s[0]) * vval(s[1]) + vval(s[0]));
    }
    // hexagonal relations: v_{ě(e)} = u_e for every oriented S class with ě in S
    for (int o : tc.s_orbits())
        for (int dir : {1, -1}) {
            OrShort e{o, dir};
            OrShort ch = tc.check_class(e);
            if (!tc.in_s(ch.id)) continue;
            cplx vch = ch.dir > 0 ? pt.v[ch.id] : -pt.v[ch.id] / pt.u[ch.id];
            cplx ue = dir > 0 ? pt.u[o] : 1.0 / pt.u[o];
            track(rep.max_relation_dev, vch - ue);
        }

    // f additive identities per tetrahedron: q1 (1 - q2) = 1 and its cycle
    for (int tau = 0; tau < m.sa.tets; ++tau) {
        cplx f0 = eval_f(m, f, 3 * tau, pt), f1 = eval_f(m, f, 3 * tau + 1, pt),
             f2 = eval_f(m, f, 3 * tau + 2, pt);
        track(rep.max_f_additive_dev, f1 * (1.0 - f2) - 1.0);
        track(rep.max_f_additive_dev, f0 * (1.0 - f1) - 1.0);
        track(rep.max_f_additive_dev, f2 * (1.0 - f0) - 1.0);
    }
    // f image values reproduce the parameters
    for (int pi = 0; pi < 3 * m.sa.tets; ++pi)
        track(rep.max_f_value_dev, eval_f(m, f, pi, pt) - params[pi]);

    rep.point = std::move(pt);
    return rep;
}

cplx eval_f(const RingModel& m, const FMap& f, int param, const RhPoint& pt) {
    const SignedMonomial& w = f.images[param];
    cplx v = w.sign < 0 ? -1.0 : 1.0;
    for (size_t i = 0; i < w.e.size(); ++i)
        if (w.e[i]) v *= std::pow(pt.u[m.rh.orbit_of_gen(static_cast<int>(i))],
                                  static_cast<double>(w.e[i]));
    return v;
}

}  // namespace hrings
