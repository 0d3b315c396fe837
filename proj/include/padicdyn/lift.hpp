#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padicdyn/classify.hpp"
#include "padicdyn/components.hpp"
#include "padicdyn/errors.hpp"
#include "padicdyn/induced.hpp"
#include "padicdyn/poly.hpp"

namespace padicdyn {

enum class FateKind { MinimalForever, SplitsForever, AttractingOrbit, Undecided };

/// Eventual fate of a cycle's region, as certified by the lift propositions.
/// MinimalForever is only ever asserted when a proposition guarantees
/// perpetual growth, never from finite observation.
struct Fate {
    FateKind kind = FateKind::Undecided;

    // MinimalForever
    unsigned growth_start = 0;
    std::uint64_t component_count = 0;
    bool materialized = false;

    // SplitsForever / AttractingOrbit
    std::size_t orbit_index = static_cast<std::size_t>(-1);
    std::uint64_t orbit_period = 0;

    // Undecided
    unsigned deepest_level = 0;
    std::string reason;

    std::string str() const {
        switch (kind) {
            case FateKind::MinimalForever:
                return "minimal forever (growth from level " + std::to_string(growth_start) + ", " +
                       std::to_string(component_count) + " component(s)" +
                       (materialized ? "" : ", beyond resolution") + ")";
            case FateKind::SplitsForever:
                return "splits forever (indifferent orbit of period " +
                       std::to_string(orbit_period) + ")";
            case FateKind::AttractingOrbit:
                return "attracting orbit (period " + std::to_string(orbit_period) + ")";
            case FateKind::Undecided:
                return "undecided at level " + std::to_string(deepest_level) + ": " + reason;
        }
        return "?";
    }
};

/// A node of the lift tree: a cycle, its data and behavior, its fate, and
/// the lifts the engine actually materialized (empty when the fate was
/// decided without descent).
struct LiftNode {
    Cycle cycle;
    CycleData data;
    Behavior behavior;
    std::optional<Fate> fate;
    std::vector<LiftNode> children;
};

/// Everything one root cycle contributes to the decomposition.
struct AnalyzeReport {
    std::vector<MinimalComponent> components;
    std::vector<PeriodicOrbitApprox> orbits;
    std::vector<UndecidedRegion> undecided;
    std::vector<std::pair<Ball, std::size_t>> basin_balls;  // ball -> orbit index
    std::vector<std::string> diagnostics;
    LiftNode tree;
};

namespace detail {

enum class ChainKind { Exact, SplitSelfSimilar, WeakSplit, PartialSplit };

class LiftAnalyzer {
public:
    LiftAnalyzer(const IntPoly& f, unsigned max_level, std::uint64_t ball_budget)
        : f_(f), p_(f.prime), max_level_(max_level), ball_budget_(ball_budget) {
        if (max_level_ < 2) throw precondition_error("max_level must be at least 2");
        f_.require_level(std::min(max_level_, f_.known_precision));
        if (max_level_ > f_.known_precision)
            throw precision_error("max_level exceeds the polynomial's known precision");
    }

    AnalyzeReport run(const Cycle& root) {
        AnalyzeReport rep;
        rep_ = &rep;
        rep.tree = analyze(root, 0);
        rep_ = nullptr;
        return rep;
    }

private:
    const IntPoly& f_;
    Int p_;
    unsigned max_level_;
    std::uint64_t ball_budget_;
    std::uint64_t balls_emitted_ = 0;
    AnalyzeReport* rep_ = nullptr;

    bool can_materialize(unsigned level) const { return level + 1 <= max_level_; }

    void note(const std::string& msg) { rep_->diagnostics.push_back(msg); }

    void charge_balls(std::uint64_t n) {
        balls_emitted_ += n;
        if (balls_emitted_ > ball_budget_)
            throw resource_error("lift engine exceeded the ball budget of " +
                                 std::to_string(ball_budget_));
    }

    std::size_t emit_component(const Cycle& c) {
        charge_balls(c.length());
        rep_->components.push_back(make_component(ball_set_of(c, p_), p_));
        return rep_->components.size() - 1;
    }

    void emit_undecided(const Cycle& c, const std::string& why) {
        charge_balls(c.length());
        for (const Ball& b : ball_set_of(c, p_))
            rep_->undecided.push_back(UndecidedRegion{b, why});
    }

    LiftResult lift_checked(const Cycle& c, bool allow_tails) {
        LiftResult lr = lift_cycle(f_, c);
        if (!allow_tails && !lr.tail_residues.empty())
            throw integrity_error("unexpected tail residues while lifting " + c.str());
        return lr;
    }

    // -- orbit construction ------------------------------------------------

    std::size_t emit_attracting_orbit(const Cycle& c, const CycleData& d) {
        PeriodicOrbitApprox orb;
        orb.period = c.length();
        orb.found_level = c.level;
        orb.region = ball_set_of(c, p_);
        Int pmax = ppow(p_, max_level_);
        if (d.exact_periodic) {
            for (const Int& z : d.exact_orbit) orb.points.push_back(mod_floor(z, pmax));
            orb.derivative_valuation = vp(d.exact_a, p_);
        } else {
            Int work = pmax * ppow(p_, 4);
            Int y = c.points.front();
            std::uint64_t blocks = max_level_ - c.level + 4;
            y = iterate_int_mod(f_, c.length() * blocks, y, work);
            Int z = mod_floor(y, pmax);
            for (std::uint64_t i = 0; i < c.length(); ++i) {
                orb.points.push_back(z);
                z = eval_int_mod(f_, z, pmax);
            }
            if (z != orb.points.front())
                throw integrity_error("attracting orbit failed to close modulo p^max_level");
            IntPoly fp = derivative(f_);
            Int a = 1;
            for (const Int& pt : orb.points) a = a * eval_int_mod(fp, pt, work) % work;
            orb.derivative_valuation = vp(mod_floor(a, work), p_);
        }
        std::rotate(orb.points.begin(), std::min_element(orb.points.begin(), orb.points.end()),
                    orb.points.end());
        orb.nature = OrbitNature::Attracting;
        if (orb.derivative_valuation == Valuation::finite(0))
            throw integrity_error("grows-tails orbit has unit derivative");
        rep_->orbits.push_back(std::move(orb));
        return rep_->orbits.size() - 1;
    }

    std::size_t emit_indifferent_orbit(const Cycle& bottom, const CycleData& bottom_data,
                                       unsigned found_level, const std::vector<Ball>& region) {
        PeriodicOrbitApprox orb;
        orb.period = bottom.length();
        orb.found_level = found_level;
        orb.region = region;
        Int pmax = ppow(p_, max_level_);
        if (bottom_data.exact_periodic) {
            for (const Int& z : bottom_data.exact_orbit) orb.points.push_back(mod_floor(z, pmax));
        } else {
            for (const Int& x : bottom.points) orb.points.push_back(mod_floor(x, pmax));
        }
        std::rotate(orb.points.begin(), std::min_element(orb.points.begin(), orb.points.end()),
                    orb.points.end());
        orb.nature = OrbitNature::Indifferent;
        orb.derivative_valuation = vp(mod_floor(bottom_data.a_mod, ppow(p_, bottom_data.work_precision)), p_);
        if (!(orb.derivative_valuation == Valuation::finite(0)))
            throw integrity_error("split-forever orbit does not have unit derivative");
        rep_->orbits.push_back(std::move(orb));
        return rep_->orbits.size() - 1;
    }

    // -- behaviors ---------------------------------------------------------

    static bool is_grow(const Behavior& b) {
        if (std::holds_alternative<BehaviorTwo>(b)) {
            BehaviorTwo t = std::get<BehaviorTwo>(b);
            return t == BehaviorTwo::StronglyGrows || t == BehaviorTwo::WeaklyGrows;
        }
        return std::get<BehaviorOdd>(b).kind == OddKind::Grows;
    }

    static bool is_split(const Behavior& b) {
        if (std::holds_alternative<BehaviorTwo>(b)) {
            BehaviorTwo t = std::get<BehaviorTwo>(b);
            return t == BehaviorTwo::StronglySplits || t == BehaviorTwo::WeaklySplits;
        }
        return std::get<BehaviorOdd>(b).kind == OddKind::Splits;
    }

    // -- the recursion -----------------------------------------------------

    LiftNode analyze(const Cycle& c, unsigned growth_count) {
        LiftNode node;
        node.cycle = c;
        node.data = compute_cycle_data(f_, c);
        if (p_ == 2 && c.level < 2)
            throw precondition_error("2-adic analysis starts at level 2; lift level-1 cycles first");
        node.behavior = classify(f_, node.data);

        const unsigned n = c.level;
        if (std::holds_alternative<BehaviorTwo>(node.behavior)) {
            switch (std::get<BehaviorTwo>(node.behavior)) {
                case BehaviorTwo::GrowsTails: handle_grows_tails(node); break;
                case BehaviorTwo::StronglyGrows: handle_grow_forever(node); break;
                case BehaviorTwo::WeaklyGrows: handle_weak_grow(node, growth_count); break;
                case BehaviorTwo::StronglySplits:
                case BehaviorTwo::WeaklySplits: split_dispatch(node, growth_count); break;
            }
            return node;
        }

        const BehaviorOdd beh = std::get<BehaviorOdd>(node.behavior);
        switch (beh.kind) {
            case OddKind::GrowsTails: handle_grows_tails(node); break;
            case OddKind::Grows:
                if (n >= 2 || p_ > 3) {
                    handle_grow_forever(node);
                } else {
                    // p = 3, n = 1: Prop 2.6(3) decides the level-1 -> 2 step.
                    if (growth_test_p3_level1(f_, c)) {
                        handle_grow_forever(node);
                    } else {
                        LiftResult lr = lift_checked(c, false);
                        if (lr.cycles.size() != 1 || lr.cycles[0].length() != 3 * c.length())
                            throw integrity_error("level-1 growing cycle did not lift to one 3k-cycle");
                        node.children.push_back(analyze(lr.cycles[0], growth_count + 1));
                        node.fate = node.children.front().fate;
                    }
                }
                break;
            case OddKind::Splits: split_dispatch(node, growth_count); break;
            case OddKind::PartiallySplits: begin_chain(node, ChainKind::PartialSplit, growth_count); break;
        }
        return node;
    }

    void handle_grows_tails(LiftNode& node) {
        std::size_t idx = emit_attracting_orbit(node.cycle, node.data);
        const PeriodicOrbitApprox& orb = rep_->orbits[idx];
        for (const Ball& b : ball_set_of(node.cycle, p_)) {
            auto pieces = ball_minus_points(b, orb.points, max_level_, p_);
            charge_balls(pieces.size());
            for (const Ball& piece : pieces) rep_->basin_balls.emplace_back(piece, idx);
        }
        Fate fate;
        fate.kind = FateKind::AttractingOrbit;
        fate.orbit_index = idx;
        fate.orbit_period = node.cycle.length();
        node.fate = fate;
    }

    /// Perpetual growth certified at the node's own level.
    void handle_grow_forever(LiftNode& node) {
        Fate fate;
        fate.kind = FateKind::MinimalForever;
        fate.growth_start = node.cycle.level;
        fate.component_count = 1;
        if (can_materialize(node.cycle.level)) {
            emit_component(node.cycle);
            fate.materialized = true;
            node.fate = fate;
            materialize_grow_chain(node, fate);
        } else {
            emit_undecided(node.cycle, "minimal component certified at level " +
                                           std::to_string(node.cycle.level) +
                                           ", at the resolution boundary");
            fate.materialized = false;
            node.fate = fate;
        }
    }

    /// Walk the single growing lift down to max_level, re-verifying that the
    /// growth persists (same region, so no further components are emitted).
    void materialize_grow_chain(LiftNode& head, const Fate& fate) {
        LiftNode* cur = &head;
        while (cur->cycle.level < max_level_) {
            LiftResult lr = lift_checked(cur->cycle, false);
            std::uint64_t expect = to_u64(p_) * cur->cycle.length();
            if (lr.cycles.size() != 1 || lr.cycles[0].length() != expect)
                throw integrity_error("growing cycle did not lift to a single cycle of length pk: " +
                                      cur->cycle.str());
            LiftNode child;
            child.cycle = std::move(lr.cycles[0]);
            child.data = compute_cycle_data(f_, child.cycle);
            child.behavior = classify(f_, child.data);
            if (!is_grow(child.behavior))
                throw integrity_error("lift of a growing cycle stopped growing: " +
                                      child.cycle.str());
            child.fate = fate;
            cur->children.push_back(std::move(child));
            cur = &cur->children.back();
        }
    }

    void handle_weak_grow(LiftNode& node, unsigned growth_count) {
        // Prop 3.1: the lift of a weakly growing cycle strongly splits.
        const unsigned n = node.cycle.level;
        if (growth_count >= 1)
            note("weak growth after an earlier growth contradicts Lemma: " + node.cycle.str());
        if (n + 1 > max_level_) {
            Fate fate;
            fate.kind = FateKind::Undecided;
            fate.deepest_level = n;
            fate.reason = "weakly growing at the level budget";
            emit_undecided(node.cycle, fate.reason);
            node.fate = fate;
            return;
        }
        LiftResult lr = lift_checked(node.cycle, false);
        if (lr.cycles.size() != 1 || lr.cycles[0].length() != 2 * node.cycle.length())
            throw integrity_error("weakly growing cycle did not lift to a single 2k-cycle");
        LiftNode child = analyze(lr.cycles[0], growth_count + 1);
        if (!std::holds_alternative<BehaviorTwo>(child.behavior) ||
            std::get<BehaviorTwo>(child.behavior) != BehaviorTwo::StronglySplits)
            note("lift of weakly growing cycle is not strongly splitting: " + lr.cycles[0].str());
        node.fate = child.fate;
        node.children.push_back(std::move(child));
    }

    void split_dispatch(LiftNode& node, unsigned growth_count) {
        const CycleData& d = node.data;
        const unsigned n = node.cycle.level;
        if (d.exact_periodic) {
            begin_chain(node, ChainKind::Exact, growth_count);
            return;
        }
        if (p_ == 2 && std::get<BehaviorTwo>(node.behavior) == BehaviorTwo::WeaklySplits) {
            begin_chain(node, ChainKind::WeakSplit, growth_count);
            return;
        }
        std::uint64_t minAn = d.A.capped(n);
        if (d.B < minAn) {
            materialize_case1(node, static_cast<unsigned>(d.B.value()), growth_count);
        } else if (d.A.is_finite() && d.A <= d.B && d.A < std::uint64_t(n)) {
            begin_chain(node, ChainKind::SplitSelfSimilar, growth_count);
        } else {
            descend_case3(node, growth_count);
        }
    }

    /// Prop 2.7(1) / 3.2(1): descendants split at levels n .. n+B-1 and all
    /// lifts at level n+B grow forever, giving p^B minimal components.
    void materialize_case1(LiftNode& node, unsigned B, unsigned growth_count) {
        const unsigned n = node.cycle.level;
        const unsigned target = n + B;
        Fate fate;
        fate.kind = FateKind::MinimalForever;
        fate.growth_start = target;
        Int count = ppow(p_, B);
        fate.component_count = count <= Int(UINT64_MAX) ? to_u64(count) : UINT64_MAX;
        if (!can_materialize(target)) {
            emit_undecided(node.cycle, "case 1 split: " + count.str() +
                                           " minimal components certified at level " +
                                           std::to_string(target) + ", beyond the level budget " +
                                           std::to_string(max_level_));
            fate.materialized = false;
            node.fate = fate;
            return;
        }
        split_down(node, B, growth_count);
        fate.materialized = true;
        node.fate = fate;
    }

    void split_down(LiftNode& nd, unsigned remaining, unsigned growth_count) {
        LiftResult lr = lift_checked(nd.cycle, false);
        if (Int(lr.cycles.size()) != p_)
            throw integrity_error("case 1 split produced " + std::to_string(lr.cycles.size()) +
                                  " lifts instead of p");
        for (const Cycle& child : lr.cycles) {
            LiftNode cn;
            cn.cycle = child;
            cn.data = compute_cycle_data(f_, child);
            cn.behavior = classify(f_, cn.data);
            if (remaining == 1) {
                if (!is_grow(cn.behavior))
                    throw integrity_error("case 1 split: lift at the growth level does not grow: " +
                                          child.str() + " is " + behavior_str(cn.behavior));
                handle_grow_forever(cn);
            } else {
                if (!is_split(cn.behavior))
                    throw integrity_error("case 1 split: intermediate lift does not split: " +
                                          child.str());
                if (cn.data.B.is_finite() && nd.data.B.is_finite() &&
                    cn.data.B.value() + 1 != nd.data.B.value())
                    note("case 1 bookkeeping: B did not decrement by one at " + child.str());
                split_down(cn, remaining - 1, growth_count);
                Fate fate;
                fate.kind = FateKind::MinimalForever;
                fate.growth_start = nd.cycle.level + remaining;
                fate.component_count = to_u64(ppow(p_, remaining - 1));
                fate.materialized = true;
                cn.fate = fate;
            }
            nd.children.push_back(std::move(cn));
        }
    }

    /// Prop 2.7(3) / 3.2(3): nothing conclusive yet; compute the lifts and
    /// recurse on each.
    void descend_case3(LiftNode& node, unsigned growth_count) {
        const unsigned n = node.cycle.level;
        if (n + 1 > max_level_) {
            Fate fate;
            fate.kind = FateKind::Undecided;
            fate.deepest_level = n;
            fate.reason = "splitting with A >= n, B >= n (A=" + node.data.A.str() +
                          ", B=" + node.data.B.str() + ") at the level budget";
            emit_undecided(node.cycle, fate.reason);
            node.fate = fate;
            return;
        }
        LiftResult lr = lift_checked(node.cycle, false);
        if (Int(lr.cycles.size()) != p_)
            throw integrity_error("splitting cycle did not produce p lifts");
        for (const Cycle& child : lr.cycles) node.children.push_back(analyze(child, growth_count));
        node.fate = aggregate_fate(node);
    }

    Fate aggregate_fate(const LiftNode& node) const {
        Fate fate;
        const Fate* chain = nullptr;
        const Fate* undecided = nullptr;
        unsigned max_start = 0;
        std::uint64_t count = 0;
        bool all_mat = true;
        for (const LiftNode& ch : node.children) {
            if (!ch.fate) continue;
            switch (ch.fate->kind) {
                case FateKind::SplitsForever:
                    if (!chain) chain = &*ch.fate;
                    break;
                case FateKind::Undecided:
                    if (!undecided) undecided = &*ch.fate;
                    break;
                case FateKind::MinimalForever:
                    max_start = std::max(max_start, ch.fate->growth_start);
                    count += ch.fate->component_count;
                    all_mat = all_mat && ch.fate->materialized;
                    break;
                case FateKind::AttractingOrbit:
                    // splits never produce grows-tails children
                    break;
            }
        }
        if (chain) {
            fate = *chain;
            return fate;
        }
        if (undecided) {
            fate.kind = FateKind::Undecided;
            fate.deepest_level = undecided->deepest_level;
            fate.reason = "descendant undecided: " + undecided->reason;
            return fate;
        }
        fate.kind = FateKind::MinimalForever;
        fate.growth_start = max_start;
        fate.component_count = count;
        fate.materialized = all_mat;
        return fate;
    }

    // -- chains (S3/S4): a periodic orbit sits inside -----------------------

    void begin_chain(LiftNode& node, ChainKind kind, unsigned growth_count) {
        std::vector<Ball> region = ball_set_of(node.cycle, p_);
        std::size_t orbit = walk_chain(node, kind, growth_count, node.cycle.level, region);
        (void)orbit;
    }

    /// Walk the self-similar descendant chain to max_level, analyzing the
    /// sibling lifts along the way; the nested cycles converge to the
    /// periodic orbit.  Returns the orbit index.
    std::size_t walk_chain(LiftNode& node, ChainKind kind, unsigned growth_count,
                           unsigned found_level, const std::vector<Ball>& region) {
        const unsigned n = node.cycle.level;
        if (n >= max_level_) {
            std::size_t idx = emit_indifferent_orbit(node.cycle, node.data, found_level, region);
            Fate fate;
            fate.kind = FateKind::SplitsForever;
            fate.orbit_index = idx;
            fate.orbit_period = node.cycle.length();
            node.fate = fate;
            return idx;
        }

        bool partial = kind == ChainKind::PartialSplit;
        LiftResult lr = lift_checked(node.cycle, false);
        std::size_t cont_pos = select_continuation(node, lr, kind);

        LiftNode cont;
        cont.cycle = lr.cycles[cont_pos];
        cont.data = compute_cycle_data(f_, cont.cycle);
        cont.behavior = classify(f_, cont.data);
        ChainKind next_kind = cont.data.exact_periodic ? ChainKind::Exact : kind;
        check_chain_invariant(node, cont, kind);

        for (std::size_t i = 0; i < lr.cycles.size(); ++i) {
            if (i == cont_pos) continue;
            node.children.push_back(analyze(lr.cycles[i], growth_count));
        }
        if (partial) partial_split_consistency(node, lr, cont_pos);

        std::size_t idx = walk_chain(cont, next_kind, growth_count, found_level, region);
        node.children.push_back(std::move(cont));
        std::sort(node.children.begin(), node.children.end(),
                  [](const LiftNode& a, const LiftNode& b) {
                      return a.cycle.points.front() < b.cycle.points.front();
                  });
        Fate fate;
        fate.kind = FateKind::SplitsForever;
        fate.orbit_index = idx;
        fate.orbit_period = node.cycle.length();
        node.fate = fate;
        return idx;
    }

    std::size_t select_continuation(const LiftNode& node, const LiftResult& lr, ChainKind kind) {
        const std::size_t k = node.cycle.length();
        std::vector<std::size_t> matches;
        switch (kind) {
            case ChainKind::Exact: {
                Int z = node.data.exact_orbit.front();
                Int pn1 = ppow(p_, node.cycle.level + 1);
                Int zm = mod_floor(z, pn1);
                for (std::size_t i = 0; i < lr.cycles.size(); ++i)
                    for (const Int& pt : lr.cycles[i].points)
                        if (pt == zm) matches.push_back(i);
                break;
            }
            case ChainKind::SplitSelfSimilar: {
                // One lift keeps B >= A; the others drop to B = A-1 (case 1).
                std::uint64_t A = node.data.A.value();
                for (std::size_t i = 0; i < lr.cycles.size(); ++i) {
                    CycleData cd = compute_cycle_data(f_, lr.cycles[i]);
                    if (cd.B >= Valuation::finite(A)) matches.push_back(i);
                }
                break;
            }
            case ChainKind::WeakSplit: {
                // Prop 3.3: one lift weakly splits, the other weakly grows.
                for (std::size_t i = 0; i < lr.cycles.size(); ++i) {
                    CycleData cd = compute_cycle_data(f_, lr.cycles[i]);
                    bool odd = !cd.exact_periodic && mod_floor(cd.b_mod, 2) == 1;
                    if (!odd) matches.push_back(i);
                }
                break;
            }
            case ChainKind::PartialSplit: {
                for (std::size_t i = 0; i < lr.cycles.size(); ++i)
                    if (lr.cycles[i].length() == k) matches.push_back(i);
                break;
            }
        }
        if (matches.size() != 1)
            throw integrity_error("chain continuation not unique (" + std::to_string(matches.size()) +
                                  " candidates) under " + node.cycle.str());
        return matches.front();
    }

    void check_chain_invariant(const LiftNode& parent, const LiftNode& cont, ChainKind kind) {
        switch (kind) {
            case ChainKind::Exact:
                if (!cont.data.exact_periodic)
                    note("exact chain continuation lost exactness at " + cont.cycle.str());
                break;
            case ChainKind::SplitSelfSimilar:
                if (!cont.data.exact_periodic && cont.data.A.is_finite() &&
                    parent.data.A.is_finite() && cont.data.A.value() != parent.data.A.value())
                    note("case 2 chain: A changed along the self-similar lift at " +
                         cont.cycle.str());
                break;
            case ChainKind::WeakSplit:
                if (mod_floor(cont.data.a_mod, 4) != 3)
                    note("weak chain continuation is not weakly splitting at " + cont.cycle.str());
                break;
            case ChainKind::PartialSplit:
                if (std::holds_alternative<BehaviorOdd>(cont.behavior) &&
                    std::get<BehaviorOdd>(cont.behavior).kind != OddKind::PartiallySplits &&
                    !cont.data.exact_periodic)
                    note("partial chain continuation stopped partially splitting at " +
                         cont.cycle.str());
                break;
        }
    }

    /// Prop 2.8 remark: min{A_{n+1}(x), nd} depends only on the lifting
    /// cycle.  Verified per point on the kd-lifts when cheap.
    void partial_split_consistency(const LiftNode& node, const LiftResult& lr,
                                   std::size_t cont_pos) {
        const std::uint64_t nd =
            node.cycle.level * std::get<BehaviorOdd>(node.behavior).d;
        for (std::size_t i = 0; i < lr.cycles.size(); ++i) {
            if (i == cont_pos) continue;
            const Cycle& c = lr.cycles[i];
            if (c.length() * c.length() > 4096) continue;
            std::optional<std::uint64_t> expected;
            for (const Int& pt : c.points) {
                Int a = compute_an(f_, c, pt);
                std::uint64_t capped = vp(mod_floor(a - 1, ppow(p_, c.level)), p_).capped(nd);
                if (!expected) expected = capped;
                else if (*expected != capped)
                    note("partial split: min{A_{n+1}, nd} varies across " + c.str());
            }
        }
    }
};

}  // namespace detail

/// Analyze one cycle to the level budget: components, orbits, basins,
/// undecided regions and the materialized lift tree.
inline AnalyzeReport analyze_cycle(const IntPoly& f, const Cycle& c, unsigned max_level,
                                   std::uint64_t ball_budget = default_budget()) {
    detail::LiftAnalyzer az(f, max_level, ball_budget);
    return az.run(c);
}

/// The eventual fate of a cycle per the lift propositions.
inline Fate predict_fate(const IntPoly& f, const Cycle& c, unsigned max_level) {
    AnalyzeReport rep = analyze_cycle(f, c, max_level);
    if (rep.tree.fate) return *rep.tree.fate;
    Fate fate;
    fate.kind = FateKind::Undecided;
    fate.deepest_level = max_level;
    fate.reason = "no fate assigned";
    return fate;
}

/// Materialized recursion of predict_fate for inspection and DOT output.
inline LiftNode build_lift_tree(const IntPoly& f, const Cycle& c, unsigned max_level) {
    return analyze_cycle(f, c, max_level).tree;
}

}  // namespace padicdyn
