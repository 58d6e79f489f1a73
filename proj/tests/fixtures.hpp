#pragma once

#include "zplot/prng.hpp"
#include "zplot/transducer.hpp"

namespace zplot::fixtures {

// z -> z + 1, two carry states.
inline Transducer odometer(int p) {
    Transducer t;
    t.p = p;
    t.num_states = 2;  // state 0: pending carry, state 1: copy through
    t.initial = 0;
    t.next.resize(2u * static_cast<unsigned>(p));
    t.out.resize(2u * static_cast<unsigned>(p));
    for (int d = 0; d < p; ++d) {
        int s = d + 1;
        t.out[t.idx(0, static_cast<std::uint32_t>(d))] = static_cast<std::uint32_t>(s % p);
        t.next[t.idx(0, static_cast<std::uint32_t>(d))] = s >= p ? 0 : 1;
        t.out[t.idx(1, static_cast<std::uint32_t>(d))] = static_cast<std::uint32_t>(d);
        t.next[t.idx(1, static_cast<std::uint32_t>(d))] = 1;
    }
    return t;
}

// z -> -1 - z, digit complement.
inline Transducer negation(int p) {
    Transducer t;
    t.p = p;
    t.num_states = 1;
    t.initial = 0;
    t.next.assign(static_cast<std::size_t>(p), 0);
    t.out.resize(static_cast<std::size_t>(p));
    for (int d = 0; d < p; ++d)
        t.out[static_cast<std::size_t>(d)] = static_cast<std::uint32_t>(p - 1 - d);
    return t;
}

// One transient start state feeding a single-state loop that echoes input.
inline Transducer transient_start(int p) {
    Transducer t;
    t.p = p;
    t.num_states = 2;
    t.initial = 0;
    t.next.resize(2u * static_cast<unsigned>(p));
    t.out.resize(2u * static_cast<unsigned>(p));
    for (int d = 0; d < p; ++d) {
        t.next[t.idx(0, static_cast<std::uint32_t>(d))] = 1;
        t.out[t.idx(0, static_cast<std::uint32_t>(d))] = 0;
        t.next[t.idx(1, static_cast<std::uint32_t>(d))] = 1;
        t.out[t.idx(1, static_cast<std::uint32_t>(d))] = static_cast<std::uint32_t>(d);
    }
    return t;
}

// Complete machine with pseudorandom tables, single input/output.
inline Transducer random_machine(SplitMix64& rng, int p, State states) {
    Transducer t;
    t.p = p;
    t.num_states = states;
    t.initial = 0;
    t.next.resize(static_cast<std::size_t>(states) * static_cast<unsigned>(p));
    t.out.resize(t.next.size());
    for (std::size_t i = 0; i < t.next.size(); ++i) {
        t.next[i] = static_cast<State>(rng.next() % states);
        t.out[i] = static_cast<std::uint32_t>(rng.next() % static_cast<unsigned>(p));
    }
    return trim(t);
}

// First input digit selects machine a (digit 0) or machine b (digit 1..p-1);
// that digit is echoed and the rest of the word goes through the selected
// machine.  Its plot overlays scaled copies of both plots.
inline Transducer branch_on_first(const Transducer& a, const Transducer& b) {
    Transducer t;
    t.p = a.p;
    t.num_states = 1 + a.num_states + b.num_states;
    t.initial = 0;
    const std::uint32_t p = static_cast<std::uint32_t>(a.p);
    t.next.resize(static_cast<std::size_t>(t.num_states) * p);
    t.out.resize(t.next.size());
    auto amap = [&](State s) { return static_cast<State>(1 + s); };
    auto bmap = [&](State s) { return static_cast<State>(1 + a.num_states + s); };
    for (std::uint32_t d = 0; d < p; ++d) {
        t.next[t.idx(0, d)] = d == 0 ? amap(a.initial) : bmap(b.initial);
        t.out[t.idx(0, d)] = d;
    }
    for (State s = 0; s < a.num_states; ++s)
        for (std::uint32_t d = 0; d < p; ++d) {
            t.next[t.idx(amap(s), d)] = amap(a.step(s, d));
            t.out[t.idx(amap(s), d)] = a.emit(s, d);
        }
    for (State s = 0; s < b.num_states; ++s)
        for (std::uint32_t d = 0; d < p; ++d) {
            t.next[t.idx(bmap(s), d)] = bmap(b.step(s, d));
            t.out[t.idx(bmap(s), d)] = b.emit(s, d);
        }
    return t;
}

}  // namespace zplot::fixtures
