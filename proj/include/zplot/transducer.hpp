#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "zplot/words.hpp"

namespace zplot {

using State = std::uint32_t;

// Complete deterministic Mealy machine over {0..p-1}^m inputs and
// {0..p-1}^n outputs.  Input/output tuples are packed into codes with the
// first tuple component most significant, so ascending code order is
// lexicographic tuple order.
struct Transducer {
    int p = 2;
    int in_arity = 1;
    int out_arity = 1;
    State num_states = 0;
    State initial = 0;
    std::vector<State> next;       // num_states * p^in_arity entries
    std::vector<std::uint32_t> out;  // same indexing, packed output tuples

    std::uint32_t in_codes() const { return static_cast<std::uint32_t>(pow_u64(static_cast<unsigned>(p), in_arity)); }
    std::uint32_t out_codes() const { return static_cast<std::uint32_t>(pow_u64(static_cast<unsigned>(p), out_arity)); }

    std::size_t idx(State s, std::uint32_t code) const {
        return static_cast<std::size_t>(s) * in_codes() + code;
    }
    State step(State s, std::uint32_t code) const { return next[idx(s, code)]; }
    std::uint32_t emit(State s, std::uint32_t code) const { return out[idx(s, code)]; }
};

std::uint32_t pack_tuple(const std::vector<Digit>& tuple, int p);
std::vector<Digit> unpack_tuple(std::uint32_t code, int p, int arity);

// Feeds the m input words digit by digit, least significant first.
// All words must have equal length and digits below p.
std::vector<Word> run(const Transducer& t, const std::vector<Word>& inputs);

// Single input / single output convenience form.
Word run1(const Transducer& t, const Word& input);

// nm(run(t, wrd_k(x))) for a single-input single-output machine; requires
// p^k to fit 64 bits.
std::uint64_t run_nm_u64(const Transducer& t, std::uint64_t x, int k);

// Drops states unreachable from the initial one and renumbers the rest in
// BFS order, which makes serialization canonical.
Transducer trim(const Transducer& t);

struct ComponentReport {
    std::vector<std::uint32_t> scc_of;    // state -> component id
    std::uint32_t num_components = 0;
    std::vector<char> ergodic;            // per component: no edges leave it
    std::vector<State> transient_states;  // states outside every ergodic component
    bool is_minimal = false;
};

// Strongly connected components of the transition digraph (all input letters),
// ergodic components, and the reachability notion of minimality.
ComponentReport components(const Transducer& t);

// Machine restarted at state s, trimmed to the states reachable from s.
Transducer subautomaton(const Transducer& t, State s);

// Sequential composition: run a first, feed its output to b.
// Requires out_arity(a) == in_arity(b) and equal p.
Transducer compose(const Transducer& a, const Transducer& b);

// Product machine feeding the same inputs to both and concatenating outputs.
// Requires equal p and equal in_arity.
Transducer parallel(const Transducer& a, const Transducer& b);

// Two-state carry automaton computing digit-wise addition: 2 inputs, 1 output.
Transducer adder(int p);

// Single-state machine copying input to output.
Transducer identity_machine(int p);

// Autonomous machine emitting a fixed digit stream (eventually periodic).
Transducer constant_machine(int p, const Word& preperiod, const Word& period);

struct CodecError : std::runtime_error {
    enum class Kind {
        BadHeader,
        LetterOutOfRange,
        UnknownState,
        UnknownInitialState,
        DuplicateTransition,
        MissingTransition,
        TrailingGarbage,
    };
    Kind kind;
    int line;
    CodecError(Kind k, int ln, const std::string& what)
        : std::runtime_error(what + " (line " + std::to_string(ln) + ")"), kind(k), line(ln) {}
};

// Text format, one record per line, '#' starts a comment:
//   p <prime>
//   arity <m> <n>
//   states <S>
//   initial <id>
//   <state> <d_1..d_m> -> <next> <e_1..e_n>     (exactly S * p^m rows)
Transducer codec_load(const std::string& text, bool trim_after_load = true);
std::string codec_save(const Transducer& t);

Transducer load_file(const std::string& path, bool trim_after_load = true);
void save_file(const Transducer& t, const std::string& path);

}  // namespace zplot
