#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "padicdyn/bigint.hpp"

namespace padicdyn {

/// The ball center + p^level Z_p, with canonical center in [0, p^level).
struct Ball {
    Int center;
    unsigned level = 1;

    Ball() : center(0) {}
    Ball(Int c, unsigned n, const Int& p) : level(n) { center = mod_floor(c, ppow(p, n)); }

    friend bool operator==(const Ball& a, const Ball& b) {
        return a.level == b.level && a.center == b.center;
    }
    friend bool operator<(const Ball& a, const Ball& b) {
        if (a.level != b.level) return a.level < b.level;
        return a.center < b.center;
    }

    std::string str(const Int& p) const {
        return center.str() + "+" + p.str() + "^" + std::to_string(level) + "Z";
    }
};

/// Does the ball contain x (as a p-adic integer)?
inline bool ball_contains(const Ball& b, const Int& x, const Int& p) {
    return mod_floor(x - b.center, ppow(p, b.level)) == 0;
}

/// All residues of the ball mod p^n (n >= ball level), sorted.
inline std::vector<Int> ball_residues(const Ball& b, const Int& p, unsigned n) {
    Int pl = ppow(p, b.level);
    std::vector<Int> out;
    if (n <= b.level) {
        out.push_back(mod_floor(b.center, ppow(p, n)));
        return out;
    }
    Int count = ppow(p, n - b.level);
    for (Int t = 0; t < count; ++t) out.push_back(b.center + t * pl);
    std::sort(out.begin(), out.end());
    return out;
}

/// Greedy merge into maximal balls: whenever all p children of a coarser
/// ball are present, replace them by it.  Result sorted.
inline std::vector<Ball> merge_balls(std::vector<Ball> balls, const Int& p) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(balls.begin(), balls.end());
        for (std::size_t i = 0; i < balls.size() && !changed; ++i) {
            unsigned L = balls[i].level;
            if (L <= 1) continue;
            Int parent_mod = ppow(p, L - 1);
            Int parent = mod_floor(balls[i].center, parent_mod);
            std::vector<std::size_t> idx;
            for (std::size_t j = 0; j < balls.size(); ++j)
                if (balls[j].level == L && mod_floor(balls[j].center, parent_mod) == parent)
                    idx.push_back(j);
            if (Int(idx.size()) == p) {
                std::vector<Ball> next;
                for (std::size_t j = 0; j < balls.size(); ++j)
                    if (std::find(idx.begin(), idx.end(), j) == idx.end()) next.push_back(balls[j]);
                Ball merged;
                merged.center = parent;
                merged.level = L - 1;
                next.push_back(merged);
                balls = std::move(next);
                changed = true;
            }
        }
    }
    std::sort(balls.begin(), balls.end());
    return balls;
}

/// A ball minus a finite set of residues at a finer level, as a minimal
/// disjoint ball cover (the standard dyadic-style decomposition).
inline std::vector<Ball> ball_minus_points(const Ball& b, const std::vector<Int>& points,
                                           unsigned point_level, const Int& p) {
    std::vector<Int> inside;
    for (const Int& x : points)
        if (ball_contains(b, x, p)) inside.push_back(mod_floor(x, ppow(p, point_level)));
    std::vector<Ball> out;
    if (inside.empty()) {
        out.push_back(b);
        return out;
    }
    // Split one level at a time, keeping whole children that miss all points.
    std::vector<Ball> pending{b};
    while (!pending.empty()) {
        Ball cur = pending.back();
        pending.pop_back();
        if (cur.level >= point_level) continue;  // exactly a removed point
        Int pl = ppow(p, cur.level);
        for (Int t = 0; t < p; ++t) {
            Ball child;
            child.center = cur.center + t * pl;
            child.level = cur.level + 1;
            bool hit = false;
            for (const Int& x : inside)
                if (ball_contains(child, x, p)) {
                    hit = true;
                    break;
                }
            if (hit) pending.push_back(child);
            else out.push_back(child);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace padicdyn
