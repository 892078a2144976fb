#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hrings/perm.hpp"

namespace hrings {

// Errors raised while reading or assembling triangulation data.
class TriError : public std::runtime_error {
public:
    TriError(std::string msg, int line = 0) : std::runtime_error(std::move(msg)), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct FaceSlot {
    int tet = 0;
    int face = 0;  // face i is opposite vertex i
    bool operator==(const FaceSlot& o) const { return tet == o.tet && face == o.face; }
    bool operator<(const FaceSlot& o) const {
        return tet != o.tet ? tet < o.tet : face < o.face;
    }
};

// One face identification. `perm` maps vertices of src's tetrahedron to
// vertices of dst's tetrahedron and must send src.face to dst.face.
struct FacePairing {
    FaceSlot src, dst;
    Perm4 perm;
};

// Oriented edge of one tetrahedron, running from vertex `from` to vertex `to`.
struct TetEdge {
    int tet = 0;
    int from = 0;
    int to = 0;
    bool operator==(const TetEdge& o) const {
        return tet == o.tet && from == o.from && to == o.to;
    }
};

// Class of tetrahedron edges identified by the face pairings. `members` lists
// every unoriented edge of the class together with the sign relating its
// (min,max) orientation to the orbit's reference orientation.
struct EdgeOrbit {
    TetEdge rep;  // reference orientation, lexicographically least member
    struct Member {
        int tet;
        int a, b;  // a < b
        int sign;  // +1 if a->b agrees with the orbit orientation
    };
    std::vector<Member> members;
    int degree() const { return static_cast<int>(members.size()); }
};

// Gluing data of n tetrahedra: 2n face pairings covering all 4n face slots.
class Triangulation {
public:
    Triangulation() = default;
    static Triangulation from_pairings(int n, std::vector<FacePairing> pairings);

    int tet_count() const { return n_; }
    const std::vector<FacePairing>& pairings() const { return pairings_; }

    // Partner slot of (tet,face) and the vertex map toward it.
    FaceSlot glued_slot(FaceSlot s) const { return partner_[index(s)]; }
    const Perm4& glued_perm(FaceSlot s) const { return perm_[index(s)]; }

    bool all_pairings_odd() const;
    bool connected() const;

    // Edge classes. Throws TriError if some class cannot carry a consistent
    // orientation (an edge identified with itself reversed).
    const std::vector<EdgeOrbit>& edge_orbits() const;
    // Index of the orbit of (tet,{a,b}) and the sign of a->b in it.
    std::pair<int, int> edge_class_of(int tet, int a, int b) const;

    int vertex_orbit_count() const;
    // Orbit id of each (tet, vertex), indexed tet*4+v.
    const std::vector<int>& vertex_orbit_ids() const;

    // Truncated 0-cells: corner (tet,v,b) is the end of edge {v,b} on the
    // vertex-v side. Indexed tet*16 + v*4 + b (entries with v==b unused).
    const std::vector<int>& corner_orbit_ids() const;
    int corner_orbit_count() const;

private:
    int index(FaceSlot s) const { return s.tet * 4 + s.face; }
    void compute_orbits() const;

    int n_ = 0;
    std::vector<FacePairing> pairings_;
    std::vector<FaceSlot> partner_;
    std::vector<Perm4> perm_;

    mutable bool orbits_done_ = false;
    mutable std::vector<EdgeOrbit> edge_orbits_;
    mutable std::vector<int> edge_class_;  // per tet*16+a*4+b (a!=b), orbit id
    mutable std::vector<int> edge_sign_;   // sign of a->b wrt orbit orientation
    mutable std::vector<int> vertex_ids_;
    mutable int vertex_count_ = 0;
    mutable std::vector<int> corner_ids_;
    mutable int corner_count_ = 0;
};

// Marking of the distinguished cells: K = edge {va,vb} of `tet`, and `face`
// names one of the two faces of `tet` containing K.
struct Distinguished {
    int tet = 0;
    int va = 0, vb = 0;
    int face = 0;
};

struct ShortEdgeLabel {
    int tet, vertex, face, src;  // oriented short edge, see trunc.hpp
    std::string name;
};

struct ShapeLabel {
    int tet, a, b;  // H-triangulation edge; names the ideal shape parameter
    std::string name;
};

class HTriangulation {
public:
    HTriangulation() = default;
    HTriangulation(Triangulation tri, Distinguished d) : tri_(std::move(tri)), dist_(d) {}

    const Triangulation& tri() const { return tri_; }
    const Distinguished& distinguished() const { return dist_; }

    std::vector<ShortEdgeLabel> short_labels;
    std::vector<ShapeLabel> shape_labels;

private:
    Triangulation tri_;
    Distinguished dist_;
};

// ---- file format ----------------------------------------------------------

HTriangulation parse_htriangulation(const std::string& text);
Triangulation parse_itriangulation(const std::string& text);
std::string serialize(const HTriangulation& ht);
std::string serialize(const Triangulation& tri);

HTriangulation read_htriangulation_file(const std::string& path);

// ---- validation -----------------------------------------------------------

struct ValidationCheck {
    std::string name;
    bool pass;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Checks that `ht` is a particular H-triangulation: one vertex orbit, all
// pairings orientation-reversing, consistently orientable edge classes, and
// the distinguished tetrahedron glued to itself as a closed book along the
// two faces adjacent to K.
ValidationReport validate_particular(const HTriangulation& ht);

// Pseudomanifold checks for a collapse output: all faces paired (structural),
// orientation-reversing pairings, one vertex whose link has Euler
// characteristic zero.
ValidationReport validate_ideal(const Triangulation& tri);

}  // namespace hrings
