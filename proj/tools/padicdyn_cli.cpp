// padicdyn: minimal decompositions of p-adic polynomial dynamical systems.
//
// Subcommands: decompose, classify, lift-tree, periods, verify-quadratic,
// oracle-check.  Exit codes: 0 success, 1 verification mismatch, 2 usage or
// precondition error, 3 resource budget exceeded.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <random>
#include <string>

#include "padicdyn/padicdyn.hpp"

using namespace padicdyn;

namespace {

std::uint64_t budget_from_env() {
    const char* env = std::getenv("PADIC_BUDGET");
    if (!env) return default_budget();
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || v == 0) throw precondition_error("PADIC_BUDGET must be a positive integer");
    return v;
}

std::vector<Int> parse_cycle_points(const std::string& text) {
    std::vector<Int> pts;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) pts.emplace_back(tok);
    if (pts.empty()) throw precondition_error("empty cycle");
    return pts;
}

std::string nature_str(OrbitNature n) {
    return n == OrbitNature::Attracting ? "attracting" : "indifferent";
}

void print_decomposition_text(const Decomposition& dec, std::ostream& os) {
    os << "minimal decomposition of " << pretty_poly(dec.poly) << " over Z_" << dec.prime.str()
       << " at max_level " << dec.max_level << "\n";
    os << "A: " << dec.A.size() << " periodic orbit(s)\n";
    for (const auto& orb : dec.A) {
        os << "  period " << orb.period << " " << nature_str(orb.nature) << ", points mod "
           << dec.prime.str() << "^" << dec.max_level << ":";
        for (const Int& pt : orb.points) os << " " << pt.str();
        os << "\n";
    }
    os << "B: " << dec.B.size() << " minimal component(s)\n";
    for (const auto& comp : dec.B) {
        os << "  ";
        for (std::size_t i = 0; i < comp.merged_form.size(); ++i)
            os << (i ? " u " : "") << comp.merged_form[i].str(dec.prime);
        os << "   (k=" << comp.k << ", d=" << comp.d << ", grows from level " << comp.growth_start
           << ")\n";
    }
    os << "C: " << dec.C.size() << " basin ball(s)\n";
    for (const auto& ca : dec.C) {
        os << "  " << ca.ball.str(dec.prime) << " -> ";
        switch (ca.kind) {
            case TargetKind::Orbit: os << "orbit " << ca.index; break;
            case TargetKind::Component: os << "component " << ca.index; break;
            case TargetKind::Undecided: os << "undecided region " << ca.index; break;
            case TargetKind::Unresolved: os << "unresolved"; break;
        }
        os << "\n";
    }
    os << "undecided: " << dec.undecided.size() << " ball(s)\n";
    for (const auto& u : dec.undecided)
        os << "  " << u.ball.str(dec.prime) << "  [" << u.diagnostic << "]\n";
}

int run_decompose(const std::string& prime, const std::string& poly, unsigned max_level,
                  const std::string& format, unsigned oracle_depth, std::uint64_t budget) {
    Int p(prime);
    IntPoly f = parse_poly(poly, p);
    Decomposition dec = minimal_decomposition(f, max_level, budget);
    if (format == "json") {
        std::cout << decomposition_to_json(dec).dump(2) << "\n";
    } else if (format == "dot") {
        std::cout << forest_dot(dec.forest);
    } else {
        print_decomposition_text(dec, std::cout);
    }
    if (oracle_depth > 0) {
        std::size_t failures = 0;
        for (std::size_t i = 0; i < dec.B.size(); ++i) {
            unsigned n_max = dec.B[i].level() + oracle_depth;
            if (!is_minimal_bruteforce(f, dec.B[i], n_max, budget)) {
                ++failures;
                std::cerr << "oracle: component " << i << " failed transitivity\n";
            }
        }
        std::string err = verify_partition(dec, budget);
        if (!err.empty()) {
            ++failures;
            std::cerr << "oracle: partition check failed: " << err << "\n";
        }
        std::cerr << "oracle cross-check: " << dec.B.size() << " component(s), "
                  << (failures ? "FAIL" : "ok") << "\n";
        if (failures) return 1;
    }
    return 0;
}

int run_classify(const std::string& prime, const std::string& poly, unsigned level,
                 const std::string& cycle_text) {
    Int p(prime);
    IntPoly f = parse_poly(poly, p);
    Cycle c;
    c.level = level;
    c.points = parse_cycle_points(cycle_text);
    for (Int& pt : c.points) pt = mod_floor(pt, ppow(p, level));
    c.canonicalize();
    CycleData d = compute_cycle_data(f, c);
    std::cout << "cycle " << c.str() << " of " << pretty_poly(f) << " mod " << p.str() << "^"
              << level << "\n";
    std::cout << "a_n = " << d.a_mod_level(p).str() << " (mod " << p.str() << "^" << level
              << "), b_n = " << d.b_mod_level(p).str() << ", A_n = " << d.A.str()
              << ", B_n = " << d.B.str() << "\n";
    if (d.exact_periodic) {
        std::cout << "exact periodic orbit:";
        for (const Int& z : d.exact_orbit) std::cout << " " << z.str();
        std::cout << "\n";
    }
    Behavior b = classify(f, d);
    std::cout << "behavior: " << behavior_str(b) << "\n";
    return 0;
}

int run_lift_tree(const std::string& prime, const std::string& poly, unsigned max_level,
                  const std::string& cycle_text, unsigned level, const std::string& format,
                  std::uint64_t budget) {
    Int p(prime);
    IntPoly f = parse_poly(poly, p);
    std::vector<LiftNode> roots;
    if (!cycle_text.empty()) {
        Cycle c;
        c.level = level;
        c.points = parse_cycle_points(cycle_text);
        for (Int& pt : c.points) pt = mod_floor(pt, ppow(p, level));
        c.canonicalize();
        roots.push_back(build_lift_tree(f, c, max_level));
    } else {
        FunctionalGraph g = find_cycles(f, 2, budget);
        for (const Cycle& c : g.cycles) roots.push_back(build_lift_tree(f, c, max_level));
    }
    if (format == "dot") {
        std::cout << forest_dot(roots);
    } else if (format == "json") {
        json arr = json::array();
        for (const LiftNode& r : roots) arr.push_back(lift_node_to_json(r, p));
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const LiftNode& r : roots) {
            struct Walk {
                static void go(const LiftNode& n, unsigned depth, const Int& p) {
                    std::cout << std::string(2 * depth, ' ') << n.cycle.str() << "  "
                              << behavior_str(n.behavior) << "  A=" << n.data.A.str()
                              << " B=" << n.data.B.str();
                    if (n.fate && n.children.empty()) std::cout << "  => " << n.fate->str();
                    std::cout << "\n";
                    for (const LiftNode& ch : n.children) go(ch, depth + 1, p);
                }
            };
            Walk::go(r, 0, p);
        }
    }
    return 0;
}

int run_periods(const std::string& prime, const std::string& poly) {
    Int p(prime);
    auto periods = possible_periods(p);
    for (std::size_t i = 0; i < periods.size(); ++i)
        std::cout << (i ? " " : "") << periods[i];
    std::cout << "\n";
    if (!poly.empty() && p == 2) {
        IntPoly f = parse_poly(poly, p);
        bool perm = period4_precondition_p2(f);
        std::cout << "f_1 is " << (perm ? "" : "not ") << "a permutation of Z/2Z: period-4 orbits "
                  << (perm ? "not excluded" : "impossible") << "\n";
    }
    return 0;
}

int run_verify_quadratic(const std::string& a_text, const std::string& b_text,
                         const std::string& c_text, unsigned max_level, std::uint64_t budget) {
    Int a(a_text), b(b_text), c(c_text);
    QuadNormalForm nf = normal_form_2adic(a, b, c);
    IntPoly f({c, b, a}, 2);
    std::cout << "input: " << pretty_poly(f) << "\n";
    std::cout << "normal form: " << nf.describe() << "\n";
    std::cout << "conjugacy: h(x) = " << nf.conjugacy.scale.str() << "*x + "
              << nf.conjugacy.shift.str() << "\n";
    if (!nf.branch_note.empty()) std::cout << "note: " << nf.branch_note << "\n";
    unsigned check_level = std::min(max_level, nf.precision == kExactPrecision ? max_level
                                                                               : nf.precision - 8);
    bool conj_ok = conjugate_check(f, nf.poly(), nf.conjugacy, check_level);
    std::cout << "conjugacy replay at level " << check_level << ": " << (conj_ok ? "ok" : "FAILED")
              << "\n";
    if (!conj_ok) return 1;

    std::string why;
    auto fx = fixture_for(nf, &why);
    if (!why.empty() && fx) std::cout << "note: " << why << "\n";
    if (!fx) {
        std::cout << "no fixture family applies: " << why << "\n";
        return 2;
    }
    std::cout << "fixture family: " << family_name(fx->family) << ", parameter "
              << fx->param.str() << ", on " << pretty_poly(fx->poly) << "\n";
    FixtureReport rep = verify_against_engine(*fx, max_level, budget);
    std::cout << "engine vs closed form: " << rep.components_compared << " component(s), "
              << rep.orbits_compared << " orbit(s): " << (rep.match ? "MATCH" : "MISMATCH")
              << "\n";
    for (const auto& m : rep.mismatches) std::cout << "  ! " << m << "\n";
    return rep.match ? 0 : 1;
}

int run_oracle_check(const std::string& prime, const std::string& poly, unsigned level,
                     std::uint64_t k_max, unsigned count, std::uint64_t seed, int degree,
                     const std::string& format, std::uint64_t budget) {
    Int p(prime);
    std::vector<IntPoly> polys;
    if (!poly.empty()) {
        polys.push_back(parse_poly(poly, p));
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> coeff(-50, 50);
        while (polys.size() < count) {
            std::vector<Int> cs;
            for (int i = 0; i < degree; ++i) cs.emplace_back(coeff(rng));
            int lead = coeff(rng);
            if (lead == 0) lead = 1;
            cs.emplace_back(lead);
            polys.emplace_back(std::move(cs), p);
        }
    }
    std::uint64_t km = k_max ? k_max : possible_periods(p).back();
    auto allowed = possible_periods(p);
    bool all_ok = true;
    for (const IntPoly& f : polys) {
        BasinReport basins = basin_bruteforce(f, p, level, budget);
        auto pts = periodic_points_bruteforce(f, p, level, km, budget);
        std::set<std::uint64_t> periods;
        for (const auto& [r, k] : pts) periods.insert(k);
        bool ok = true;
        for (std::uint64_t k : periods)
            if (!std::binary_search(allowed.begin(), allowed.end(), k)) ok = false;
        all_ok = all_ok && ok;
        std::cout << pretty_poly(f) << ": " << basins.cycles.size() << " cycle(s) mod "
                  << p.str() << "^" << level << ", persistent periods {";
        bool first = true;
        for (std::uint64_t k : periods) {
            std::cout << (first ? "" : ",") << k;
            first = false;
        }
        std::cout << "} " << (ok ? "within" : "OUTSIDE") << " the admissible set\n";
        if (format == "dot" && polys.size() == 1) {
            FunctionalGraph g = find_cycles(f, std::min(level, 4u), budget);
            std::cout << functional_graph_dot(g);
        }
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimal decomposition of p-adic polynomial dynamical systems"};
    app.require_subcommand(1);

    std::string prime = "2", poly, cycle_text, format = "text";
    std::string qa = "1", qb = "0", qc = "0";
    unsigned max_level = 0, level = 2, oracle_depth = 0;
    std::uint64_t budget = 0, k_max = 0, seed = 1;
    unsigned count = 10;
    int degree = 2;

    auto* dec = app.add_subcommand("decompose", "compute the decomposition Z_p = A u B u C");
    dec->add_option("--prime", prime, "prime p")->required();
    dec->add_option("--poly", poly, "coefficients, ascending degree (e.g. 0,1,1 for x^2+x)")
        ->required();
    dec->add_option("--max-level", max_level, "level budget");
    dec->add_option("--format", format, "text | json | dot")
        ->check(CLI::IsMember({"text", "json", "dot"}));
    dec->add_option("--oracle-depth", oracle_depth, "brute-force cross-check depth beyond each component");
    dec->add_option("--budget", budget, "enumeration budget (residues)");

    auto* cls = app.add_subcommand("classify", "linearization data and behavior of a cycle");
    cls->add_option("--prime", prime)->required();
    cls->add_option("--poly", poly)->required();
    cls->add_option("--level", level, "level n")->required();
    cls->add_option("--cycle", cycle_text, "cycle points x1,..,xk")->required();

    auto* lt = app.add_subcommand("lift-tree", "materialized lift tree of a cycle (or all level-2 cycles)");
    lt->add_option("--prime", prime)->required();
    lt->add_option("--poly", poly)->required();
    lt->add_option("--max-level", max_level);
    lt->add_option("--cycle", cycle_text, "root cycle points (default: all level-2 cycles)");
    lt->add_option("--level", level, "root cycle level");
    lt->add_option("--format", format)->check(CLI::IsMember({"text", "json", "dot"}));
    lt->add_option("--budget", budget);

    auto* per = app.add_subcommand("periods", "admissible periods of periodic orbits");
    per->add_option("--prime", prime)->required();
    per->add_option("--poly", poly, "with p=2: also report the period-4 permutation precondition");

    auto* vq = app.add_subcommand("verify-quadratic",
                                  "normal form, conjugacy replay, closed-form fixture match (p=2)");
    vq->add_option("--a", qa)->required();
    vq->add_option("--b", qb)->required();
    vq->add_option("--c", qc)->required();
    vq->add_option("--max-level", max_level);
    vq->add_option("--budget", budget);

    auto* oc = app.add_subcommand("oracle-check", "standalone brute-force suite");
    oc->add_option("--prime", prime)->required();
    oc->add_option("--poly", poly, "single polynomial (default: random suite)");
    oc->add_option("--level", level, "enumeration level")->required();
    oc->add_option("--k-max", k_max, "period cap (default: max admissible)");
    oc->add_option("--count", count, "random suite size");
    oc->add_option("--seed", seed, "random seed");
    oc->add_option("--degree", degree, "random polynomial degree");
    oc->add_option("--format", format)->check(CLI::IsMember({"text", "dot"}));
    oc->add_option("--budget", budget);

    CLI11_PARSE(app, argc, argv);

    try {
        if (budget == 0) budget = budget_from_env();
        if (dec->parsed()) {
            Int p(prime);
            if (max_level == 0) max_level = p == 2 ? 16 : (p == 3 ? 8 : 6);
            return run_decompose(prime, poly, max_level, format, oracle_depth, budget);
        }
        if (cls->parsed()) return run_classify(prime, poly, level, cycle_text);
        if (lt->parsed()) {
            Int p(prime);
            if (max_level == 0) max_level = p == 2 ? 16 : (p == 3 ? 8 : 6);
            if (cycle_text.empty()) level = 2;
            return run_lift_tree(prime, poly, max_level, cycle_text, level, format, budget);
        }
        if (per->parsed()) return run_periods(prime, poly);
        if (vq->parsed()) {
            if (max_level == 0) max_level = 14;
            return run_verify_quadratic(qa, qb, qc, max_level, budget);
        }
        if (oc->parsed())
            return run_oracle_check(prime, poly, level, k_max, count, seed, degree, format, budget);
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const precision_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const integrity_error& e) {
        std::cerr << "integrity error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
