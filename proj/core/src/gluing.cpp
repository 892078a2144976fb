#include "hrings/gluing.hpp"

#include <sstream>

namespace hrings {

ShapeAssignment shape_assignment(const Triangulation& ideal,
                                 const std::vector<ShapeLabel>& labels) {
    ShapeAssignment sa;
    sa.tets = ideal.tet_count();
    sa.names.assign(3 * sa.tets, "");
    for (const auto& l : labels) {
        if (l.tet < 0 || l.tet >= sa.tets) throw TriError("shape label: tet out of range");
        std::string& slot = sa.names[sa.param_id(l.tet, l.a, l.b)];
        if (!slot.empty() && slot != l.name)
            throw TriError("shape label: quad labelled twice with different names");
        slot = l.name;
    }
    for (int t = 0; t < sa.tets; ++t)
        for (int q = 0; q < 3; ++q)
            if (sa.names[3 * t + q].empty())
                sa.names[3 * t + q] = "x" + std::to_string(t) + "q" + std::to_string(q);
    return sa;
}

GluingSystem gluing_system(const Triangulation& ideal, const ShapeAssignment& sa) {
    GluingSystem gs;
    gs.ideal = ideal;
    gs.sa = sa;
    const auto& orbits = ideal.edge_orbits();
    for (int i = 0; i < static_cast<int>(orbits.size()); ++i) {
        EdgeEquation eq;
        eq.orbit = i;
        eq.exponents.assign(3 * sa.tets, 0);
        for (const auto& m : orbits[i].members) eq.exponents[sa.param_id(m.tet, m.a, m.b)] += 1;
        if (orbits[i].degree() == 1) {
            gs.degenerate = true;
            gs.degenerate_orbit = i;
        }
        gs.equations.push_back(std::move(eq));
    }
    return gs;
}

std::string GluingSystem::equation_str(const EdgeEquation& eq) const {
    std::ostringstream out;
    bool any = false;
    for (size_t i = 0; i < eq.exponents.size(); ++i) {
        if (eq.exponents[i] == 0) continue;
        if (any) out << " ";
        any = true;
        out << sa.names[i];
        if (eq.exponents[i] != 1) out << "^" << eq.exponents[i];
    }
    if (!any) out << "1";
    out << " = 1";
    return out.str();
}

SignedAbelianGroup ri_skeleton(const GluingSystem& gs) {
    if (gs.degenerate) return SignedAbelianGroup::one_element();
    std::vector<std::pair<std::vector<long>, int>> rels;
    for (const auto& eq : gs.equations) rels.push_back({eq.exponents, +1});
    for (int t = 0; t < gs.sa.tets; ++t) {
        std::vector<long> row(3 * gs.sa.tets, 0);
        row[3 * t] = row[3 * t + 1] = row[3 * t + 2] = 1;
        rels.push_back({row, -1});
    }
    return SignedAbelianGroup(gs.sa.names, std::move(rels));
}

std::vector<cplx> derive_params(const GluingSystem& gs, const std::vector<cplx>& primary) {
    std::vector<cplx> out(3 * gs.sa.tets);
    for (int t = 0; t < gs.sa.tets; ++t) {
        cplx z = primary[t];
        out[3 * t + 2] = z;
        out[3 * t + 1] = 1.0 / (1.0 - z);
        out[3 * t + 0] = 1.0 - 1.0 / z;
    }
    return out;
}

double residual(const GluingSystem& gs, const std::vector<cplx>& params) {
    double worst = 0.0;
    auto track = [&](cplx v) { worst = std::max(worst, std::abs(v)); };
    for (const auto& eq : gs.equations) {
        cplx prod = 1.0;
        for (size_t i = 0; i < eq.exponents.size(); ++i)
            if (eq.exponents[i] != 0) prod *= std::pow(params[i], eq.exponents[i]);
        track(prod - 1.0);
    }
    for (int t = 0; t < gs.sa.tets; ++t) {
        cplx q0 = params[3 * t], q1 = params[3 * t + 1], q2 = params[3 * t + 2];
        track(q0 * q1 * q2 + 1.0);
        track(q1 * (1.0 - q2) - 1.0);
        track(q0 * (1.0 - q1) - 1.0);
        track(q2 * (1.0 - q0) - 1.0);
    }
    return worst;
}

}  // namespace hrings
