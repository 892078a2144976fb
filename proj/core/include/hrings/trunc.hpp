#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hrings/tetra.hpp"
#include "hrings/triangulation.hpp"

namespace hrings {

// Oriented short edge of a truncated tetrahedron: the side of the corner
// triangle at `vertex` bordering the hexagonal face `face`, running from the
// corner on long edge {vertex,src} to the corner on long edge {vertex,dst},
// dst = 6-vertex-face-src.
struct ShortEdge {
    int tet = 0, vertex = 0, face = 0, src = 0;
    int dst() const { return sixth(vertex, face, src); }
    bool operator==(const ShortEdge& o) const {
        return tet == o.tet && vertex == o.vertex && face == o.face && src == o.src;
    }
    std::string str() const;
};

inline ShortEdge reverse(ShortEdge e) { return {e.tet, e.vertex, e.face, e.dst()}; }

// The unique short edge of the same hexagon whose terminal point, together
// with e's terminal point, bounds a long edge.
inline ShortEdge check_edge(ShortEdge e) {
    return {e.tet, sixth(e.vertex, e.face, e.src), e.face, e.src};
}

struct LongEdge {
    int tet = 0, from = 0, to = 0;  // oriented
    bool operator==(const LongEdge& o) const {
        return tet == o.tet && from == o.from && to == o.to;
    }
};

// Orbit-level oriented cells: orbit index plus direction against the orbit's
// reference orientation.
struct OrShort {
    int id = -1;
    int dir = 1;
    bool operator==(const OrShort& o) const { return id == o.id && dir == o.dir; }
    OrShort rev() const { return {id, -dir}; }
};
struct OrLong {
    int id = -1;
    int dir = 1;
    bool operator==(const OrLong& o) const { return id == o.id && dir == o.dir; }
    OrLong rev() const { return {id, -dir}; }
};

// Oriented labels of the truncated distinguished tetrahedron.
struct DistinguishedFrame {
    ShortEdge l, m, p, p2, i1, i2, j1, j2;
    LongEdge c, a1, a2;
    int t = 0, a = 0, bl = 0, br = 0;  // vertex roles: K = {t,a}, book faces {bl,br}
};

// Bijection between the cells of the H-triangulation away from the
// distinguished tetrahedron and the cells of the collapsed ideal
// triangulation. Tetrahedra are renumbered by deleting the distinguished one.
struct CellCorrespondence {
    int dist_tet = -1;
    std::vector<int> tet_to_ideal;  // -1 for the distinguished tetrahedron
    std::vector<int> ideal_to_tet;
    std::vector<ShapeLabel> ideal_shape_labels;  // re-anchored to ideal tets
};

class TruncatedComplex {
public:
    static TruncatedComplex build(const HTriangulation& ht);

    const HTriangulation& ht() const { return ht_; }
    const Triangulation& tri() const { return ht_.tri(); }
    const Distinguished& distinguished() const { return ht_.distinguished(); }

    // ---- short edge classes ----
    int short_orbit_count() const { return short_count_; }
    // Orbit and direction of an oriented lift.
    OrShort short_class(const ShortEdge& e) const;
    // Reference lift of the orbit, oriented by `dir`.
    ShortEdge short_rep(OrShort c) const;
    // Partner lift of the given lift (the other member of its orbit).
    ShortEdge short_partner(const ShortEdge& e) const;
    const std::string& short_name(int orbit) const { return short_names_[orbit]; }
    std::optional<int> short_orbit_by_name(const std::string& name) const;

    bool in_s(int orbit) const { return in_s_[orbit]; }           // disjoint from K
    bool is_p_type(int orbit) const { return p_type_[orbit]; }    // lifts inside F^K
    const std::vector<int>& s_orbits() const { return s_orbits_; }

    OrShort check_class(OrShort e) const;    // orbit-level ě
    OrShort reverse_class(OrShort e) const { return e.rev(); }

    // ---- long edge classes (= edge orbits of the triangulation) ----
    int long_orbit_count() const;
    int k_orbit() const { return k_orbit_; }  // orbit of the distinguished edge
    OrLong long_class(const LongEdge& e) const;
    LongEdge long_rep(OrLong c) const;
    const std::vector<int>& l_orbits() const { return l_orbits_; }  // without K

    // ---- hexagonal faces ----
    int face_orbit_count() const { return static_cast<int>(face_reps_.size()); }
    int face_orbit_of(FaceSlot s) const { return face_orbit_of_slot_[s.tet * 4 + s.face]; }
    FaceSlot face_rep(int orbit) const { return face_reps_[orbit]; }
    FaceSlot face_other_lift(FaceSlot s) const { return tri().glued_slot(s); }
    int fk_orbit() const { return fk_orbit_; }
    const std::vector<int>& h_orbits() const { return h_orbits_; }  // without F^K

    // Triangular faces disjoint from K, as (tet, vertex) pairs.
    const std::vector<std::pair<int, int>>& t_triangles() const { return t_triangles_; }

    // Boundary cycle of hexagon (tet,f): three (long, short) pairs in the
    // traversal order induced by the face orientation.
    struct HexStep {
        LongEdge long_edge;
        ShortEdge short_edge;  // the short edge following the long one
    };
    std::array<HexStep, 3> hex_boundary(int tet, int face) const;

    // ---- parallelism ----
    // The oriented long edge class parallel to e (via either lift).
    OrLong parallel_long_of(OrShort e) const;
    bool parallel_short_long(OrShort e, OrLong E) const;
    bool parallel(OrShort e, OrShort e2) const;

    // r(F,E): E an oriented long lift on the boundary of hexagon lift F,
    // carrying F's induced orientation; result is the short edge of the
    // partner hexagon lift of E's tetrahedron, disjoint from E and parallel
    // to it. Throws if E is not on the boundary of F.
    ShortEdge r_map(FaceSlot hexagon, const LongEdge& e_induced) const;

    const DistinguishedFrame& frame() const { return frame_; }

    // ---- wedge fans for parallel transport ----
    struct Wedge {
        int tet, v, b;        // corner (v,b); the wedge turns around edge {v,b}
        ShortEdge enter, exit;  // oriented away from the corner; f(z) = v_enter v_exit^{-1}
        bool in_distinguished;
    };
    // Cyclic fan of wedges around the corner orbit of `at`, starting with the
    // wedge entered at `at`. `at` must point away from its corner.
    std::vector<Wedge> wedge_fan(const ShortEdge& at) const;

private:
    HTriangulation ht_;
    int short_count_ = 0;
    std::vector<int> short_orbit_of_;    // per tet*16+v*4+f
    std::vector<int> short_align_src_;   // src aligning the lift with the orbit orientation
    std::vector<ShortEdge> short_reps_;
    std::vector<std::string> short_names_;
    std::vector<bool> in_s_, p_type_;
    std::vector<int> s_orbits_;
    int k_orbit_ = -1;
    std::vector<int> l_orbits_;
    std::vector<FaceSlot> face_reps_;
    std::vector<int> face_orbit_of_slot_;
    int fk_orbit_ = -1;
    std::vector<int> h_orbits_;
    std::vector<std::pair<int, int>> t_triangles_;
    DistinguishedFrame frame_;
};

TruncatedComplex truncate(const HTriangulation& ht);

// Contracts the distinguished edge: deletes T^K, identifies its two non-book
// faces with each other, and renumbers. The two long edge classes in the
// boundary of F^K merge into a single ideal edge class.
std::pair<Triangulation, CellCorrespondence> collapse(const HTriangulation& ht);

}  // namespace hrings
