#pragma once

#include <json.hpp>

#include <sstream>
#include <string>

#include "padicdyn/decomposition.hpp"
#include "padicdyn/induced.hpp"
#include "padicdyn/lift.hpp"

namespace padicdyn {

using json = nlohmann::json;

namespace io_detail {

inline json int_to_json(const Int& x) {
    if (x >= 0 && x <= Int(UINT64_MAX)) return to_u64(x);
    return x.str();
}

inline Int int_from_json(const json& j) {
    if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    return Int(j.get<std::string>());
}

inline json ball_to_json(const Ball& b) {
    return json{{"center", int_to_json(b.center)}, {"level", b.level}};
}

inline Ball ball_from_json(const json& j, const Int& p) {
    return Ball(int_from_json(j.at("center")), j.at("level").get<unsigned>(), p);
}

}  // namespace io_detail

inline json decomposition_to_json(const Decomposition& dec) {
    using namespace io_detail;
    json out;
    out["prime"] = to_u64(dec.prime);
    out["poly"] = format_poly(dec.poly);
    out["max_level"] = dec.max_level;
    out["A"] = json::array();
    for (const auto& orb : dec.A) {
        json points = json::array();
        for (const Int& pt : orb.points) points.push_back(int_to_json(pt));
        out["A"].push_back(
            {{"period", orb.period},
             {"points", points},
             {"nature", orb.nature == OrbitNature::Attracting ? "attracting" : "indifferent"}});
    }
    out["B"] = json::array();
    for (const auto& comp : dec.B) {
        json balls = json::array();
        for (const Ball& b : comp.balls) balls.push_back(ball_to_json(b));
        json merged = json::array();
        for (const Ball& b : comp.merged_form) merged.push_back(ball_to_json(b));
        json seq = json::array();
        for (const Int& s : comp.structure_sequence) seq.push_back(int_to_json(s));
        out["B"].push_back({{"balls", balls},
                            {"k", comp.k},
                            {"d", comp.d},
                            {"growth_start", comp.growth_start},
                            {"structure_sequence", seq},
                            {"merged", merged}});
    }
    out["C"] = json::array();
    for (const auto& ca : dec.C) {
        json target;
        switch (ca.kind) {
            case TargetKind::Orbit: target = {{"kind", "orbit"}, {"index", ca.index}}; break;
            case TargetKind::Component: target = {{"kind", "component"}, {"index", ca.index}}; break;
            case TargetKind::Undecided: target = {{"kind", "undecided"}, {"index", ca.index}}; break;
            case TargetKind::Unresolved: target = {{"kind", "unresolved"}}; break;
        }
        out["C"].push_back({{"ball", ball_to_json(ca.ball)}, {"target", target}});
    }
    out["undecided"] = json::array();
    for (const auto& u : dec.undecided)
        out["undecided"].push_back({{"ball", ball_to_json(u.ball)}, {"diagnostic", u.diagnostic}});
    return out;
}

/// Re-parse a decomposition JSON payload (forest and diagnostics are not part
/// of the wire format).
inline Decomposition decomposition_from_json(const json& in) {
    using namespace io_detail;
    Decomposition dec;
    dec.prime = Int(in.at("prime").get<std::uint64_t>());
    dec.max_level = in.at("max_level").get<unsigned>();
    dec.poly = parse_poly(in.at("poly").get<std::string>(), dec.prime);
    for (const auto& j : in.at("A")) {
        PeriodicOrbitApprox orb;
        orb.period = j.at("period").get<std::uint64_t>();
        for (const auto& pt : j.at("points")) orb.points.push_back(int_from_json(pt));
        orb.nature = j.at("nature").get<std::string>() == "attracting" ? OrbitNature::Attracting
                                                                       : OrbitNature::Indifferent;
        dec.A.push_back(std::move(orb));
    }
    for (const auto& j : in.at("B")) {
        MinimalComponent comp;
        for (const auto& b : j.at("balls")) comp.balls.push_back(ball_from_json(b, dec.prime));
        comp.k = j.at("k").get<std::uint64_t>();
        comp.d = j.at("d").get<std::uint64_t>();
        comp.growth_start = j.at("growth_start").get<unsigned>();
        for (const auto& s : j.at("structure_sequence"))
            comp.structure_sequence.push_back(int_from_json(s));
        if (j.contains("merged"))
            for (const auto& b : j.at("merged")) comp.merged_form.push_back(ball_from_json(b, dec.prime));
        dec.B.push_back(std::move(comp));
    }
    for (const auto& j : in.at("C")) {
        CAssign ca;
        ca.ball = ball_from_json(j.at("ball"), dec.prime);
        const auto& t = j.at("target");
        std::string kind = t.at("kind").get<std::string>();
        if (kind == "orbit") ca.kind = TargetKind::Orbit;
        else if (kind == "component") ca.kind = TargetKind::Component;
        else if (kind == "undecided") ca.kind = TargetKind::Undecided;
        else ca.kind = TargetKind::Unresolved;
        if (t.contains("index")) ca.index = t.at("index").get<std::size_t>();
        dec.C.push_back(ca);
    }
    for (const auto& j : in.at("undecided")) {
        UndecidedRegion u;
        u.ball = ball_from_json(j.at("ball"), dec.prime);
        u.diagnostic = j.at("diagnostic").get<std::string>();
        dec.undecided.push_back(std::move(u));
    }
    return dec;
}

/// Value equality on the wire-format fields.
inline bool decomposition_wire_equal(const Decomposition& a, const Decomposition& b) {
    if (a.prime != b.prime || a.max_level != b.max_level) return false;
    if (a.A.size() != b.A.size() || a.B.size() != b.B.size() || a.C.size() != b.C.size() ||
        a.undecided.size() != b.undecided.size())
        return false;
    for (std::size_t i = 0; i < a.A.size(); ++i)
        if (a.A[i].period != b.A[i].period || a.A[i].points != b.A[i].points ||
            a.A[i].nature != b.A[i].nature)
            return false;
    for (std::size_t i = 0; i < a.B.size(); ++i)
        if (a.B[i].balls != b.B[i].balls || a.B[i].k != b.B[i].k || a.B[i].d != b.B[i].d ||
            a.B[i].growth_start != b.B[i].growth_start ||
            a.B[i].structure_sequence != b.B[i].structure_sequence)
            return false;
    for (std::size_t i = 0; i < a.C.size(); ++i)
        if (!(a.C[i].ball == b.C[i].ball) || a.C[i].kind != b.C[i].kind ||
            (a.C[i].kind != TargetKind::Unresolved && a.C[i].index != b.C[i].index))
            return false;
    for (std::size_t i = 0; i < a.undecided.size(); ++i)
        if (!(a.undecided[i].ball == b.undecided[i].ball) ||
            a.undecided[i].diagnostic != b.undecided[i].diagnostic)
            return false;
    return true;
}

inline json lift_node_to_json(const LiftNode& node, const Int& p) {
    json j;
    json pts = json::array();
    for (const Int& x : node.cycle.points) pts.push_back(io_detail::int_to_json(x));
    j["level"] = node.cycle.level;
    j["points"] = pts;
    j["behavior"] = behavior_str(node.behavior);
    j["a"] = io_detail::int_to_json(node.data.a_mod_level(p));
    j["b"] = io_detail::int_to_json(node.data.b_mod_level(p));
    j["A"] = node.data.A.str();
    j["B"] = node.data.B.str();
    if (node.fate) j["fate"] = node.fate->str();
    j["children"] = json::array();
    for (const LiftNode& ch : node.children) j["children"].push_back(lift_node_to_json(ch, p));
    return j;
}

namespace io_detail {
inline std::string dot_node_id(const LiftNode& n) {
    return "n" + std::to_string(n.cycle.level) + "_" + n.cycle.points.front().str();
}

inline const char* fate_shape(const Fate& f) {
    switch (f.kind) {
        case FateKind::MinimalForever: return "box";
        case FateKind::SplitsForever: return "doubleoctagon";
        case FateKind::AttractingOrbit: return "octagon";
        case FateKind::Undecided: return "diamond";
    }
    return "ellipse";
}

inline void dot_emit(std::ostream& os, const LiftNode& n) {
    std::string id = dot_node_id(n);
    std::string label = n.cycle.str() + "\\n" + behavior_str(n.behavior) + "\\nA=" +
                        n.data.A.str() + " B=" + n.data.B.str();
    const char* shape = "ellipse";
    if (n.children.empty() && n.fate) {
        shape = fate_shape(*n.fate);
        label += "\\n" + n.fate->str();
    }
    os << "  \"" << id << "\" [shape=" << shape << ", label=\"" << label << "\"];\n";
    for (const LiftNode& ch : n.children) {
        os << "  \"" << id << "\" -> \"" << dot_node_id(ch) << "\";\n";
        dot_emit(os, ch);
    }
}
}  // namespace io_detail

/// DOT rendering of a lift tree: behavior tags as node labels, fates as leaf
/// shapes, stable node ids (level, smallest residue).
inline std::string lift_tree_dot(const LiftNode& root) {
    std::ostringstream os;
    os << "digraph lift_tree {\n  node [fontname=\"monospace\"];\n";
    io_detail::dot_emit(os, root);
    os << "}\n";
    return os.str();
}

inline std::string forest_dot(const std::vector<LiftNode>& roots) {
    std::ostringstream os;
    os << "digraph lift_forest {\n  node [fontname=\"monospace\"];\n";
    for (const LiftNode& r : roots) io_detail::dot_emit(os, r);
    os << "}\n";
    return os.str();
}

/// DOT rendering of the functional graph of f_n (small n only).
inline std::string functional_graph_dot(const FunctionalGraph& g) {
    std::ostringstream os;
    os << "digraph f_n {\n  node [fontname=\"monospace\", shape=circle];\n";
    for (std::uint64_t r = 0; r < g.size(); ++r) {
        if (g.on_cycle(r)) os << "  \"" << r << "\" [style=bold];\n";
        os << "  \"" << r << "\" -> \"" << g.successor[r] << "\";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace padicdyn
