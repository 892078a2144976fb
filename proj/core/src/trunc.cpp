#include "hrings/trunc.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace hrings {

namespace {

int key(int tet, int v, int f) { return tet * 16 + v * 4 + f; }

// Source vertex of the boundary-induced traversal of short edge (v,f) inside
// hexagon f: the predecessor of v in the face cycle of f.
int hex_induced_src(int v, int f) {
    auto cyc = face_cycle(f);
    for (int k = 0; k < 3; ++k)
        if (cyc[(k + 1) % 3] == v) return cyc[k];
    throw std::logic_error("hex_induced_src: vertex not on face");
}

// Canonical source of (v,f): the traversal induced by the corner triangle's
// cyclic order (the link of v in the oriented tetrahedron).
int triangle_induced_src(int v, int f) {
    auto corners = other_two(v, f);
    auto cyc = face_cycle(v);
    int x = corners[0], y = corners[1];
    for (int k = 0; k < 3; ++k) {
        if (cyc[k] == x && cyc[(k + 1) % 3] == y) return x;
        if (cyc[k] == y && cyc[(k + 1) % 3] == x) return y;
    }
    throw std::logic_error("triangle_induced_src: corners not cyclically adjacent");
}

}  // namespace

std::string ShortEdge::str() const {
    std::ostringstream out;
    out << "t" << tet << "(v" << vertex << ";f" << face << ";" << src << "->" << dst() << ")";
    return out.str();
}

TruncatedComplex truncate(const HTriangulation& ht) { return TruncatedComplex::build(ht); }

TruncatedComplex TruncatedComplex::build(const HTriangulation& ht) {
    ValidationReport rep = validate_particular(ht);
    if (!rep.all_pass()) {
        std::string why;
        for (const auto& c : rep.checks)
            if (!c.pass) why += (why.empty() ? "" : "; ") + c.name;
        throw TriError("not a particular H-triangulation: " + why);
    }

    TruncatedComplex tc;
    tc.ht_ = ht;
    const Triangulation& tri = tc.ht_.tri();
    const Distinguished& d = tc.ht_.distinguished();
    const int n = tri.tet_count();

    // Short edge orbits: each lift (t,v,f) is glued to exactly one partner
    // through the pairing of face f.
    tc.short_orbit_of_.assign(16 * n, -1);
    tc.short_align_src_.assign(16 * n, -1);
    auto partner_of = [&](int t, int v, int f, int s) -> ShortEdge {
        FaceSlot dst = tri.glued_slot({t, f});
        const Perm4& pi = tri.glued_perm({t, f});
        return {dst.tet, pi[v], dst.face, pi[s]};
    };
    for (int t = 0; t < n; ++t)
        for (int v = 0; v < 4; ++v)
            for (int f = 0; f < 4; ++f) {
                if (v == f || tc.short_orbit_of_[key(t, v, f)] >= 0) continue;
                int id = tc.short_count_++;
                ShortEdge rep0{t, v, f, triangle_induced_src(v, f)};
                ShortEdge mate = partner_of(t, v, f, rep0.src);
                tc.short_orbit_of_[key(t, v, f)] = id;
                tc.short_orbit_of_[key(mate.tet, mate.vertex, mate.face)] = id;
                tc.short_align_src_[key(t, v, f)] = rep0.src;
                tc.short_align_src_[key(mate.tet, mate.vertex, mate.face)] = mate.src;
                tc.short_reps_.push_back(rep0);
            }

    // Apply file labels: they fix both the name and the reference orientation.
    tc.short_names_.assign(tc.short_count_, "");
    for (const auto& l : tc.ht_.short_labels) {
        if (l.tet < 0 || l.tet >= n) throw TriError("label short: tet out of range");
        int k = key(l.tet, l.vertex, l.face);
        int id = tc.short_orbit_of_[k];
        if (!tc.short_names_[id].empty())
            throw TriError("short edge class labelled twice: " + l.name);
        tc.short_names_[id] = l.name;
        if (tc.short_align_src_[k] != l.src) {
            // flip the orbit's reference orientation
            for (int t = 0; t < n; ++t)
                for (int v = 0; v < 4; ++v)
                    for (int f = 0; f < 4; ++f)
                        if (v != f && tc.short_orbit_of_[key(t, v, f)] == id) {
                            int& s = tc.short_align_src_[key(t, v, f)];
                            s = sixth(v, f, s);
                        }
        }
        tc.short_reps_[id] = {l.tet, l.vertex, l.face, l.src};
    }
    {
        int auto_id = 0;
        std::map<std::string, int> seen;
        for (int i = 0; i < tc.short_count_; ++i) {
            if (tc.short_names_[i].empty()) tc.short_names_[i] = "s" + std::to_string(auto_id++);
            if (seen.count(tc.short_names_[i]))
                throw TriError("duplicate short edge label: " + tc.short_names_[i]);
            seen[tc.short_names_[i]] = i;
        }
    }

    // S membership and the p-type classes (the only S classes inside F^K).
    int x = -1, y = -1;
    for (int f = 0; f < 4; ++f)
        if (f != d.va && f != d.vb) (x < 0 ? x : y) = f;
    tc.in_s_.assign(tc.short_count_, true);
    tc.p_type_.assign(tc.short_count_, false);
    for (int v : {d.va, d.vb})
        for (int f = 0; f < 4; ++f) {
            if (f == v || f == d.va + d.vb - v) continue;  // (va,vb) side stays in S
            tc.in_s_[tc.short_orbit_of_[key(d.tet, v, f)]] = false;
        }
    tc.p_type_[tc.short_orbit_of_[key(d.tet, x, y)]] = true;
    for (int i = 0; i < tc.short_count_; ++i)
        if (tc.in_s_[i]) tc.s_orbits_.push_back(i);

    // Long edges.
    tc.k_orbit_ = tri.edge_class_of(d.tet, d.va, d.vb).first;
    for (int i = 0; i < static_cast<int>(tri.edge_orbits().size()); ++i)
        if (i != tc.k_orbit_) tc.l_orbits_.push_back(i);

    // Hexagonal face orbits.
    tc.face_orbit_of_slot_.assign(4 * n, -1);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            if (tc.face_orbit_of_slot_[t * 4 + f] >= 0) continue;
            FaceSlot s{t, f};
            FaceSlot p = tri.glued_slot(s);
            int id = static_cast<int>(tc.face_reps_.size());
            tc.face_orbit_of_slot_[t * 4 + f] = id;
            tc.face_orbit_of_slot_[p.tet * 4 + p.face] = id;
            tc.face_reps_.push_back(std::min(s, p));
        }
    tc.fk_orbit_ = tc.face_orbit_of_slot_[d.tet * 4 + x];
    for (int i = 0; i < static_cast<int>(tc.face_reps_.size()); ++i)
        if (i != tc.fk_orbit_) tc.h_orbits_.push_back(i);

    for (int t = 0; t < n; ++t)
        for (int v = 0; v < 4; ++v)
            if (!(t == d.tet && (v == d.va || v == d.vb))) tc.t_triangles_.push_back({t, v});

    // Distinguished frame, fig-2 style.
    DistinguishedFrame& fr = tc.frame_;
    fr.t = d.va;
    fr.a = d.vb;
    fr.bl = std::min(x, y);
    fr.br = std::max(x, y);
    fr.l = {d.tet, fr.t, fr.a, fr.bl};
    fr.m = {d.tet, fr.a, fr.t, fr.bl};
    fr.p = {d.tet, fr.bl, fr.br, fr.a};
    fr.p2 = {d.tet, fr.br, fr.bl, fr.a};
    fr.i1 = {d.tet, fr.br, fr.a, fr.bl};
    fr.i2 = {d.tet, fr.br, fr.t, fr.bl};
    fr.j1 = {d.tet, fr.bl, fr.a, fr.br};
    fr.j2 = {d.tet, fr.bl, fr.t, fr.br};
    fr.c = {d.tet, fr.bl, fr.br};
    fr.a1 = {d.tet, fr.bl, fr.t};
    fr.a2 = {d.tet, fr.bl, fr.a};
    return tc;
}

OrShort TruncatedComplex::short_class(const ShortEdge& e) const {
    int k = key(e.tet, e.vertex, e.face);
    return {short_orbit_of_[k], e.src == short_align_src_[k] ? 1 : -1};
}

ShortEdge TruncatedComplex::short_rep(OrShort c) const {
    ShortEdge e = short_reps_[c.id];
    return c.dir > 0 ? e : reverse(e);
}

ShortEdge TruncatedComplex::short_partner(const ShortEdge& e) const {
    FaceSlot dst = tri().glued_slot({e.tet, e.face});
    const Perm4& pi = tri().glued_perm({e.tet, e.face});
    return {dst.tet, pi[e.vertex], dst.face, pi[e.src]};
}

std::optional<int> TruncatedComplex::short_orbit_by_name(const std::string& name) const {
    for (int i = 0; i < short_count_; ++i)
        if (short_names_[i] == name) return i;
    return std::nullopt;
}

OrShort TruncatedComplex::check_class(OrShort e) const {
    return short_class(check_edge(short_rep(e)));
}

int TruncatedComplex::long_orbit_count() const {
    return static_cast<int>(tri().edge_orbits().size());
}

OrLong TruncatedComplex::long_class(const LongEdge& e) const {
    auto [id, sign] = tri().edge_class_of(e.tet, e.from, e.to);
    return {id, sign};
}

LongEdge TruncatedComplex::long_rep(OrLong c) const {
    const TetEdge& r = tri().edge_orbits()[c.id].rep;
    return c.dir > 0 ? LongEdge{r.tet, r.from, r.to} : LongEdge{r.tet, r.to, r.from};
}

std::array<TruncatedComplex::HexStep, 3> TruncatedComplex::hex_boundary(int tet,
                                                                        int face) const {
    auto cyc = face_cycle(face);
    std::array<HexStep, 3> out;
    for (int k = 0; k < 3; ++k) {
        int a = cyc[k], b = cyc[(k + 1) % 3];
        out[k].long_edge = {tet, a, b};
        out[k].short_edge = {tet, b, face, a};
    }
    return out;
}

OrLong TruncatedComplex::parallel_long_of(OrShort e) const {
    ShortEdge lift = short_rep(e);
    auto corners = other_two(lift.vertex, lift.face);
    int xx = corners[0], yy = corners[1];
    bool e_induced = lift.src == hex_induced_src(lift.vertex, lift.face);
    // boundary-induced direction of the opposite long edge {xx,yy} in this hexagon
    auto cyc = face_cycle(lift.face);
    int from = xx, to = yy;
    for (int k = 0; k < 3; ++k)
        if (cyc[k] == yy && cyc[(k + 1) % 3] == xx) {
            from = yy;
            to = xx;
        }
    // parallel means exactly one of {e, E} runs with the hexagon boundary
    LongEdge ind{lift.tet, from, to};
    OrLong cls = long_class(ind);
    return e_induced ? cls.rev() : cls;
}

bool TruncatedComplex::parallel_short_long(OrShort e, OrLong E) const {
    return parallel_long_of(e) == E;
}

bool TruncatedComplex::parallel(OrShort e, OrShort e2) const {
    return parallel_long_of(e) == parallel_long_of(e2);
}

ShortEdge TruncatedComplex::r_map(FaceSlot hexagon, const LongEdge& e_induced) const {
    if (e_induced.tet != hexagon.tet)
        throw TriError("r_map: long edge not in the hexagon's tetrahedron");
    auto cyc = face_cycle(hexagon.face);
    bool on_boundary = false;
    for (int k = 0; k < 3; ++k)
        if (cyc[k] == e_induced.from && cyc[(k + 1) % 3] == e_induced.to) on_boundary = true;
    if (!on_boundary)
        throw TriError("r_map: edge is not boundary-induced on the given hexagon");
    auto faces = other_two(e_induced.from, e_induced.to);
    int fprime = faces[0] == hexagon.face ? faces[1] : faces[0];
    // the partner hexagon traverses the edge backwards, so the parallel short
    // edge is the boundary-induced one there
    return {hexagon.tet, hexagon.face, fprime, hex_induced_src(hexagon.face, fprime)};
}

std::vector<TruncatedComplex::Wedge> TruncatedComplex::wedge_fan(const ShortEdge& at) const {
    const int dtet = ht_.distinguished().tet;
    std::vector<Wedge> fan;
    // wedge shorts at corner (v,b): (v,c,b) and (v,d,b); the one written
    // first in f(z) = v_i v_j^{-1} has (v,b,c,d) odd
    auto make_wedge = [&](int tet, int v, int b) {
        auto cd = other_two(v, b);
        int c = cd[0], dd = cd[1];
        if (even_tuple(v, b, c, dd)) std::swap(c, dd);
        Wedge w;
        w.tet = tet;
        w.v = v;
        w.b = b;
        w.enter = {tet, v, c, b};
        w.exit = {tet, v, dd, b};
        w.in_distinguished = tet == dtet;
        return w;
    };
    Wedge w0 = make_wedge(at.tet, at.vertex, at.src);
    Wedge w = w0;
    do {
        fan.push_back(w);
        ShortEdge nxt = short_partner(w.exit);
        Wedge wn = make_wedge(nxt.tet, nxt.vertex, nxt.src);
        if (!(wn.enter == nxt))
            throw TriError("wedge fan: orientation flips around the edge class");
        w = wn;
    } while (!(w.tet == w0.tet && w.v == w0.v && w.b == w0.b));
    return fan;
}

std::pair<Triangulation, CellCorrespondence> collapse(const HTriangulation& ht) {
    ValidationReport rep = validate_particular(ht);
    if (!rep.all_pass()) throw TriError("collapse requires a particular H-triangulation");
    const Triangulation& tri = ht.tri();
    const Distinguished& d = ht.distinguished();
    const int n = tri.tet_count();
    if (n < 2)
        throw TriError("collapse leaves no tetrahedra: the whole triangulation is the "
                       "distinguished tetrahedron");

    FaceSlot sa{d.tet, d.va}, sb{d.tet, d.vb};
    FaceSlot pa = tri.glued_slot(sa), pb = tri.glued_slot(sb);
    Perm4 qa = tri.glued_perm(sa), qb = tri.glued_perm(sb);
    if (pa.tet == d.tet || pb.tet == d.tet)
        throw TriError("collapse: the non-book faces of the distinguished tetrahedron must "
                       "be glued to other tetrahedra");

    CellCorrespondence corr;
    corr.dist_tet = d.tet;
    corr.tet_to_ideal.assign(n, -1);
    for (int t = 0; t < n; ++t)
        if (t != d.tet) {
            corr.tet_to_ideal[t] = static_cast<int>(corr.ideal_to_tet.size());
            corr.ideal_to_tet.push_back(t);
        }

    std::vector<FacePairing> pairings;
    for (const auto& p : tri.pairings()) {
        if (p.src.tet == d.tet || p.dst.tet == d.tet) continue;
        FacePairing q = p;
        q.src.tet = corr.tet_to_ideal[p.src.tet];
        q.dst.tet = corr.tet_to_ideal[p.dst.tet];
        pairings.push_back(q);
    }
    // Contracting K identifies the two non-book faces of T^K through the
    // transposition exchanging the ends of K.
    FacePairing bridge;
    bridge.src = {corr.tet_to_ideal[pa.tet], pa.face};
    bridge.dst = {corr.tet_to_ideal[pb.tet], pb.face};
    bridge.perm = qb.after(Perm4::transposition(d.va, d.vb)).after(qa.inverse());
    pairings.push_back(bridge);

    Triangulation ideal = Triangulation::from_pairings(n - 1, std::move(pairings));
    for (const auto& l : ht.shape_labels)
        corr.ideal_shape_labels.push_back(
            {corr.tet_to_ideal[l.tet], l.a, l.b, l.name});
    return {std::move(ideal), std::move(corr)};
}

}  // namespace hrings
