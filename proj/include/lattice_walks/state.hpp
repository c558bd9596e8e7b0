#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace lattice_walks {

// A configuration xi in Z_+^n.  Plain vector: every consumer indexes
// coordinates directly and the derived quantities (level, norm) are cheap.
using State = std::vector<std::int64_t>;

inline std::int64_t level(const State& s) {
    return std::accumulate(s.begin(), s.end(), std::int64_t{0});
}

inline std::int64_t norm2_int(const State& s) {
    std::int64_t q = 0;
    for (auto x : s) q += x * x;
    return q;
}

inline double norm(const State& s) {
    return std::sqrt(static_cast<double>(norm2_int(s)));
}

inline bool is_origin(const State& s) {
    for (auto x : s)
        if (x != 0) return false;
    return true;
}

inline State origin(int n) { return State(static_cast<std::size_t>(n), 0); }

inline State unit(int n, int i) {
    State s = origin(n);
    s[static_cast<std::size_t>(i)] = 1;
    return s;
}

inline State shifted(const State& s, int i, std::int64_t delta) {
    State t = s;
    t[static_cast<std::size_t>(i)] += delta;
    return t;
}

struct StateHash {
    std::size_t operator()(const State& s) const {
        std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ s.size();
        for (auto x : s) {
            h ^= static_cast<std::uint64_t>(x) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

// Enumerates every state with S(xi) <= level_cap, level-major (level 0, then
// level 1, ...) and colexicographic within a level (states compared from the
// last coordinate).  The order is part of the reproducibility contract.
template <typename Fn>
void for_each_state_up_to_level(int n, std::int64_t level_cap, Fn&& fn) {
    State s = origin(n);
    for (std::int64_t lvl = 0; lvl <= level_cap; ++lvl) {
        // Recursive descent over coordinates, last coordinate outermost.
        auto rec = [&](auto&& self, int pos, std::int64_t remaining) -> void {
            if (pos == 0) {
                s[0] = remaining;
                fn(const_cast<const State&>(s));
                return;
            }
            for (std::int64_t v = 0; v <= remaining; ++v) {
                s[static_cast<std::size_t>(pos)] = v;
                self(self, pos - 1, remaining - v);
            }
        };
        rec(rec, n - 1, lvl);
    }
}

} // namespace lattice_walks
