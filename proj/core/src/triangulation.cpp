#include "hrings/triangulation.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace hrings {

namespace {

// Weighted union-find: parity-carrying for oriented edge classes.
struct SignedUF {
    std::vector<int> parent;
    std::vector<int> rel;  // sign of element relative to its parent
    explicit SignedUF(int n) : parent(n), rel(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
    std::pair<int, int> find(int x) {
        if (parent[x] == x) return {x, 1};
        auto [r, s] = find(parent[x]);
        parent[x] = r;
        rel[x] *= s;
        return {r, rel[x]};
    }
    // Returns false if merging creates a sign conflict.
    bool merge(int x, int y, int sign_xy) {
        auto [rx, sx] = find(x);
        auto [ry, sy] = find(y);
        if (rx == ry) return sx == sign_xy * sy;
        parent[ry] = rx;
        rel[ry] = sx * sign_xy * sy;
        return true;
    }
};

struct UF {
    std::vector<int> parent;
    explicit UF(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void merge(int x, int y) { parent[find(y)] = find(x); }
};

int edge_key(int tet, int a, int b) { return tet * 16 + a * 4 + b; }

}  // namespace

Triangulation Triangulation::from_pairings(int n, std::vector<FacePairing> pairings) {
    if (n <= 0) throw TriError("tetrahedron count must be positive");
    if (static_cast<int>(pairings.size()) != 2 * n)
        throw TriError("expected " + std::to_string(2 * n) + " glue lines, found " +
                       std::to_string(pairings.size()));

    // Canonical direction: src < dst.
    for (auto& p : pairings) {
        if (p.dst < p.src) {
            std::swap(p.src, p.dst);
            p.perm = p.perm.inverse();
        }
    }
    std::sort(pairings.begin(), pairings.end(),
              [](const FacePairing& a, const FacePairing& b) { return a.src < b.src; });

    Triangulation t;
    t.n_ = n;
    t.partner_.resize(4 * n);
    t.perm_.resize(4 * n);
    std::vector<bool> used(4 * n, false);

    for (const auto& p : pairings) {
        for (FaceSlot s : {p.src, p.dst}) {
            if (s.tet < 0 || s.tet >= n || s.face < 0 || s.face > 3)
                throw TriError("face slot out of range: tet " + std::to_string(s.tet) +
                               " face " + std::to_string(s.face));
        }
        if (p.src == p.dst) throw TriError("face glued to itself: tet " +
                                           std::to_string(p.src.tet) + " face " +
                                           std::to_string(p.src.face));
        if (p.perm[p.src.face] != p.dst.face)
            throw TriError("permutation does not send the vertex opposite the source face "
                           "to the vertex opposite the destination face");
        for (FaceSlot s : {p.src, p.dst}) {
            if (used[s.tet * 4 + s.face])
                throw TriError("face slot paired twice: tet " + std::to_string(s.tet) +
                               " face " + std::to_string(s.face));
            used[s.tet * 4 + s.face] = true;
        }
        t.partner_[t.index(p.src)] = p.dst;
        t.perm_[t.index(p.src)] = p.perm;
        t.partner_[t.index(p.dst)] = p.src;
        t.perm_[t.index(p.dst)] = p.perm.inverse();
    }
    for (int i = 0; i < 4 * n; ++i)
        if (!used[i])
            throw TriError("unpaired face: tet " + std::to_string(i / 4) + " face " +
                           std::to_string(i % 4));
    t.pairings_ = std::move(pairings);
    return t;
}

bool Triangulation::all_pairings_odd() const {
    for (const auto& p : pairings_)
        if (!p.perm.is_odd()) return false;
    return true;
}

bool Triangulation::connected() const {
    UF uf(n_);
    for (const auto& p : pairings_) uf.merge(p.src.tet, p.dst.tet);
    for (int t = 1; t < n_; ++t)
        if (uf.find(t) != uf.find(0)) return false;
    return true;
}

void Triangulation::compute_orbits() const {
    if (orbits_done_) return;

    // Edge classes with orientation parity.
    SignedUF euf(16 * n_);
    auto transport = [&](int tet, int a, int b, int f) {
        FaceSlot dst = partner_[tet * 4 + f];
        const Perm4& pi = perm_[tet * 4 + f];
        int a2 = pi[a], b2 = pi[b];
        int sign = (a2 < b2) ? 1 : -1;
        int x = edge_key(tet, std::min(a, b), std::max(a, b));
        int y = edge_key(dst.tet, std::min(a2, b2), std::max(a2, b2));
        // orientation min->max on both sides; a->b maps to a2->b2
        if (!euf.merge(x, y, sign))
            throw TriError("edge identified with itself reversed: tet " + std::to_string(tet) +
                           " edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
    };
    for (int tet = 0; tet < n_; ++tet)
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                for (int f = 0; f < 4; ++f)
                    if (f != a && f != b) transport(tet, a, b, f);

    edge_class_.assign(16 * n_, -1);
    edge_sign_.assign(16 * n_, 0);
    edge_orbits_.clear();
    std::vector<int> root_to_orbit(16 * n_, -1);
    for (int tet = 0; tet < n_; ++tet)
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                auto [r, s] = euf.find(edge_key(tet, a, b));
                int id = root_to_orbit[r];
                if (id < 0) {
                    id = static_cast<int>(edge_orbits_.size());
                    root_to_orbit[r] = id;
                    edge_orbits_.push_back({});
                }
                edge_orbits_[id].members.push_back({tet, a, b, s});
                edge_class_[edge_key(tet, a, b)] = id;
                edge_class_[edge_key(tet, b, a)] = id;
                edge_sign_[edge_key(tet, a, b)] = s;
                edge_sign_[edge_key(tet, b, a)] = -s;
            }
    // Normalize: reference = lex-least member, oriented so its sign is +1.
    for (auto& orb : edge_orbits_) {
        std::sort(orb.members.begin(), orb.members.end(),
                  [](const EdgeOrbit::Member& x, const EdgeOrbit::Member& y) {
                      return std::tie(x.tet, x.a, x.b) < std::tie(y.tet, y.a, y.b);
                  });
        const auto& m0 = orb.members.front();
        if (m0.sign < 0) {
            orb.rep = {m0.tet, m0.b, m0.a};
            for (auto& m : orb.members) {
                int k = edge_key(m.tet, m.a, m.b);
                edge_sign_[k] = -edge_sign_[k];
                edge_sign_[edge_key(m.tet, m.b, m.a)] = -edge_sign_[edge_key(m.tet, m.b, m.a)];
            }
        } else {
            orb.rep = {m0.tet, m0.a, m0.b};
        }
        for (auto& m : orb.members) m.sign = edge_sign_[edge_key(m.tet, m.a, m.b)];
    }

    // Vertex orbits.
    UF vuf(4 * n_);
    for (int tet = 0; tet < n_; ++tet)
        for (int f = 0; f < 4; ++f)
            for (int v = 0; v < 4; ++v)
                if (v != f) {
                    FaceSlot dst = partner_[tet * 4 + f];
                    vuf.merge(tet * 4 + v, dst.tet * 4 + perm_[tet * 4 + f][v]);
                }
    vertex_ids_.assign(4 * n_, -1);
    vertex_count_ = 0;
    for (int i = 0; i < 4 * n_; ++i) {
        int r = vuf.find(i);
        if (vertex_ids_[r] < 0) vertex_ids_[r] = vertex_count_++;
        vertex_ids_[i] = vertex_ids_[r];
    }

    // Corner orbits: (tet,v,b) glued through the two faces containing both.
    UF cuf(16 * n_);
    for (int tet = 0; tet < n_; ++tet)
        for (int v = 0; v < 4; ++v)
            for (int b = 0; b < 4; ++b) {
                if (v == b) continue;
                for (int f = 0; f < 4; ++f) {
                    if (f == v || f == b) continue;
                    FaceSlot dst = partner_[tet * 4 + f];
                    const Perm4& pi = perm_[tet * 4 + f];
                    cuf.merge(tet * 16 + v * 4 + b, dst.tet * 16 + pi[v] * 4 + pi[b]);
                }
            }
    corner_ids_.assign(16 * n_, -1);
    corner_count_ = 0;
    for (int tet = 0; tet < n_; ++tet)
        for (int v = 0; v < 4; ++v)
            for (int b = 0; b < 4; ++b) {
                if (v == b) continue;
                int i = tet * 16 + v * 4 + b;
                int r = cuf.find(i);
                if (corner_ids_[r] < 0) corner_ids_[r] = corner_count_++;
                corner_ids_[i] = corner_ids_[r];
            }

    orbits_done_ = true;
}

const std::vector<EdgeOrbit>& Triangulation::edge_orbits() const {
    compute_orbits();
    return edge_orbits_;
}

std::pair<int, int> Triangulation::edge_class_of(int tet, int a, int b) const {
    compute_orbits();
    return {edge_class_[edge_key(tet, a, b)], edge_sign_[edge_key(tet, a, b)]};
}

int Triangulation::vertex_orbit_count() const {
    compute_orbits();
    return vertex_count_;
}

const std::vector<int>& Triangulation::vertex_orbit_ids() const {
    compute_orbits();
    return vertex_ids_;
}

const std::vector<int>& Triangulation::corner_orbit_ids() const {
    compute_orbits();
    return corner_ids_;
}

int Triangulation::corner_orbit_count() const {
    compute_orbits();
    return corner_count_;
}

// ---- file format ----------------------------------------------------------

namespace {

struct Parsed {
    int n = -1;
    std::vector<FacePairing> pairings;
    std::optional<Distinguished> dist;
    std::vector<ShortEdgeLabel> short_labels;
    std::vector<ShapeLabel> shape_labels;
};

Parsed parse_lines(const std::string& text) {
    Parsed out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        auto want_int = [&](const char* what) {
            long long v;
            if (!(ls >> v))
                throw TriError(std::string("syntax error: expected ") + what, lineno);
            return static_cast<int>(v);
        };
        if (kw == "tets") {
            if (out.n >= 0) throw TriError("duplicate tets line", lineno);
            out.n = want_int("tetrahedron count");
        } else if (kw == "glue") {
            FacePairing p;
            p.src.tet = want_int("source tet");
            p.src.face = want_int("source face");
            p.dst.tet = want_int("destination tet");
            p.dst.face = want_int("destination face");
            std::string ps;
            if (!(ls >> ps) || ps.size() != 4)
                throw TriError("syntax error: expected 4-digit permutation", lineno);
            for (char c : ps)
                if (c < '0' || c > '3')
                    throw TriError("syntax error: permutation digits must be 0-3", lineno);
            try {
                p.perm = Perm4::from_images(ps[0] - '0', ps[1] - '0', ps[2] - '0', ps[3] - '0');
            } catch (const std::invalid_argument& e) {
                throw TriError(e.what(), lineno);
            }
            out.pairings.push_back(p);
        } else if (kw == "distinguished") {
            if (out.dist) throw TriError("duplicate distinguished line", lineno);
            Distinguished d;
            d.tet = want_int("tet");
            d.va = want_int("vertex");
            d.vb = want_int("vertex");
            d.face = want_int("face");
            if (d.va == d.vb || d.va < 0 || d.va > 3 || d.vb < 0 || d.vb > 3 ||
                d.face < 0 || d.face > 3 || d.face == d.va || d.face == d.vb)
                throw TriError("distinguished marking is not an edge with an adjacent face",
                               lineno);
            if (d.va > d.vb) std::swap(d.va, d.vb);
            out.dist = d;
        } else if (kw == "label") {
            std::string kind;
            ls >> kind;
            if (kind == "short") {
                ShortEdgeLabel l;
                l.tet = want_int("tet");
                l.vertex = want_int("vertex");
                l.face = want_int("face");
                l.src = want_int("source vertex");
                if (!(ls >> l.name)) throw TriError("label short: missing name", lineno);
                if (l.vertex == l.face || l.src == l.vertex || l.src == l.face ||
                    l.vertex < 0 || l.vertex > 3 || l.face < 0 || l.face > 3 || l.src < 0 ||
                    l.src > 3)
                    throw TriError("label short: indices do not name an oriented short edge",
                                   lineno);
                out.short_labels.push_back(l);
            } else if (kind == "shape") {
                ShapeLabel l;
                l.tet = want_int("tet");
                l.a = want_int("vertex");
                l.b = want_int("vertex");
                if (!(ls >> l.name)) throw TriError("label shape: missing name", lineno);
                if (l.a == l.b || l.a < 0 || l.a > 3 || l.b < 0 || l.b > 3)
                    throw TriError("label shape: indices do not name an edge", lineno);
                out.shape_labels.push_back(l);
            } else {
                throw TriError("unknown label kind '" + kind + "'", lineno);
            }
        } else {
            throw TriError("unknown directive '" + kw + "'", lineno);
        }
    }
    if (out.n < 0) throw TriError("missing tets line");
    return out;
}

}  // namespace

HTriangulation parse_htriangulation(const std::string& text) {
    Parsed p = parse_lines(text);
    if (!p.dist) throw TriError("missing distinguished marking");
    Triangulation tri = Triangulation::from_pairings(p.n, std::move(p.pairings));
    for (const auto& l : p.short_labels)
        if (l.tet < 0 || l.tet >= tri.tet_count())
            throw TriError("label short: tet out of range");
    for (const auto& l : p.shape_labels) {
        if (l.tet < 0 || l.tet >= tri.tet_count()) throw TriError("label shape: tet out of range");
        if (l.tet == p.dist->tet)
            throw TriError("label shape: shape parameters live outside the distinguished "
                           "tetrahedron");
    }
    if (p.dist->tet < 0 || p.dist->tet >= tri.tet_count())
        throw TriError("distinguished tet out of range");
    HTriangulation ht(std::move(tri), *p.dist);
    ht.short_labels = std::move(p.short_labels);
    ht.shape_labels = std::move(p.shape_labels);
    return ht;
}

Triangulation parse_itriangulation(const std::string& text) {
    Parsed p = parse_lines(text);
    if (p.dist) throw TriError("ideal triangulation must not carry a distinguished marking");
    return Triangulation::from_pairings(p.n, std::move(p.pairings));
}

std::string serialize(const Triangulation& tri) {
    std::ostringstream out;
    out << "tets " << tri.tet_count() << "\n";
    for (const auto& p : tri.pairings())
        out << "glue " << p.src.tet << " " << p.src.face << " " << p.dst.tet << " "
            << p.dst.face << " " << p.perm.str() << "\n";
    return out.str();
}

std::string serialize(const HTriangulation& ht) {
    std::ostringstream out;
    out << serialize(ht.tri());
    const auto& d = ht.distinguished();
    out << "distinguished " << d.tet << " " << d.va << " " << d.vb << " " << d.face << "\n";
    for (const auto& l : ht.short_labels)
        out << "label short " << l.tet << " " << l.vertex << " " << l.face << " " << l.src
            << " " << l.name << "\n";
    for (const auto& l : ht.shape_labels)
        out << "label shape " << l.tet << " " << l.a << " " << l.b << " " << l.name << "\n";
    return out.str();
}

HTriangulation read_htriangulation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TriError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_htriangulation(ss.str());
}

// ---- validation -----------------------------------------------------------

ValidationReport validate_particular(const HTriangulation& ht) {
    ValidationReport rep;
    const Triangulation& tri = ht.tri();
    const Distinguished& d = ht.distinguished();
    auto add = [&](std::string name, bool pass, std::string detail = "") {
        rep.checks.push_back({std::move(name), pass, std::move(detail)});
    };

    add("connected", tri.connected());
    add("orientation-reversing pairings", tri.all_pairings_odd(),
        tri.all_pairings_odd() ? "" : "some vertex permutation is even");

    bool edges_ok = true;
    std::string edge_detail;
    try {
        tri.edge_orbits();
    } catch (const TriError& e) {
        edges_ok = false;
        edge_detail = e.what();
    }
    add("orientable edge classes", edges_ok, edge_detail);

    int v = edges_ok ? tri.vertex_orbit_count() : -1;
    add("one vertex orbit", edges_ok && v == 1,
        edges_ok ? "vertex orbit count = " + std::to_string(v) : "skipped");

    // Closed book: the two faces of `tet` adjacent to K are glued to each
    // other by the transposition exchanging their opposite vertices.
    int x = -1, y = -1;
    for (int f = 0; f < 4; ++f)
        if (f != d.va && f != d.vb) (x < 0 ? x : y) = f;
    bool book = false;
    std::string book_detail;
    FaceSlot sx{d.tet, x};
    FaceSlot px = tri.glued_slot(sx);
    if (!(px.tet == d.tet && px.face == y)) {
        book_detail = "faces adjacent to K are not glued to each other";
    } else if (tri.glued_perm(sx) != Perm4::transposition(x, y)) {
        book_detail = "self-gluing does not fix K pointwise";
    } else {
        book = true;
    }
    add("closed-book distinguished tetrahedron", book, book_detail);
    if (d.face != x && d.face != y)
        add("distinguished face adjacent to K", false, "face does not contain K");

    if (book && edges_ok) {
        auto [kc, ks] = tri.edge_class_of(d.tet, d.va, d.vb);
        (void)ks;
        add("K has a single preimage", tri.edge_orbits()[kc].degree() == 1);
        // K lies in exactly one face orbit (the two book faces), which comes
        // from a single tetrahedron: both hold by the book structure.
        add("K in a single face orbit", true);
        add("distinguished face from a single tetrahedron", true);
    }

    if (edges_ok && v == 1) {
        // Vertex link must be a sphere: corners - short edges + triangles = 2,
        // with 12n short edge lifts glued in pairs.
        int n = tri.tet_count();
        int chi = tri.corner_orbit_count() - 6 * n + 4 * n;
        add("vertex link is a sphere", chi == 2,
            chi == 2 ? "" : "link Euler characteristic = " + std::to_string(chi));
    }
    return rep;
}

ValidationReport validate_ideal(const Triangulation& tri) {
    ValidationReport rep;
    auto add = [&](std::string name, bool pass, std::string detail = "") {
        rep.checks.push_back({std::move(name), pass, std::move(detail)});
    };
    add("connected", tri.connected());
    add("orientation-reversing pairings", tri.all_pairings_odd());
    bool edges_ok = true;
    std::string edge_detail;
    try {
        tri.edge_orbits();
    } catch (const TriError& e) {
        edges_ok = false;
        edge_detail = e.what();
    }
    add("orientable edge classes", edges_ok, edge_detail);
    if (edges_ok) {
        int v = tri.vertex_orbit_count();
        add("one vertex (the knot point)", v == 1, "vertex orbit count = " + std::to_string(v));
        int n = tri.tet_count();
        int chi = tri.corner_orbit_count() - 6 * n + 4 * n;
        add("vertex link is a torus", chi == 0,
            chi == 0 ? "" : "link Euler characteristic = " + std::to_string(chi));
    }
    return rep;
}

}  // namespace hrings
