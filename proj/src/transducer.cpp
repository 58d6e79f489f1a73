#include "zplot/transducer.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "zplot/rational.hpp"

namespace zplot {

std::uint32_t pack_tuple(const std::vector<Digit>& tuple, int p) {
    std::uint32_t code = 0;
    for (Digit d : tuple) code = code * static_cast<unsigned>(p) + d;
    return code;
}

std::vector<Digit> unpack_tuple(std::uint32_t code, int p, int arity) {
    std::vector<Digit> tuple(static_cast<std::size_t>(arity));
    for (int i = arity; i-- > 0;) {
        tuple[static_cast<std::size_t>(i)] = static_cast<Digit>(code % static_cast<unsigned>(p));
        code /= static_cast<unsigned>(p);
    }
    return tuple;
}

std::vector<Word> run(const Transducer& t, const std::vector<Word>& inputs) {
    if (inputs.size() != static_cast<std::size_t>(t.in_arity))
        throw std::invalid_argument("run: wrong number of input words");
    std::size_t k = inputs.empty() ? 0 : inputs[0].size();
    for (const Word& w : inputs) {
        if (w.size() != k) throw std::invalid_argument("run: input words of unequal length");
        for (Digit d : w)
            if (static_cast<int>(d) >= t.p) throw std::invalid_argument("run: digit out of range");
    }
    std::vector<Word> outs(static_cast<std::size_t>(t.out_arity), Word(k));
    State s = t.initial;
    std::vector<Digit> tuple(static_cast<std::size_t>(t.in_arity));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < inputs.size(); ++j) tuple[j] = inputs[j][i];
        std::uint32_t code = pack_tuple(tuple, t.p);
        std::uint32_t o = t.emit(s, code);
        s = t.step(s, code);
        std::vector<Digit> od = unpack_tuple(o, t.p, t.out_arity);
        for (std::size_t j = 0; j < outs.size(); ++j) outs[j][i] = od[j];
    }
    return outs;
}

Word run1(const Transducer& t, const Word& input) {
    if (t.in_arity != 1 || t.out_arity != 1)
        throw std::invalid_argument("run1: machine is not single input/output");
    return run(t, {input})[0];
}

std::uint64_t run_nm_u64(const Transducer& t, std::uint64_t x, int k) {
    if (t.in_arity != 1 || t.out_arity != 1)
        throw std::invalid_argument("run_nm_u64: machine is not single input/output");
    std::uint64_t y = 0;
    std::uint64_t place = 1;
    State s = t.initial;
    for (int i = 0; i < k; ++i) {
        std::uint32_t d = static_cast<std::uint32_t>(x % static_cast<unsigned>(t.p));
        x /= static_cast<unsigned>(t.p);
        y += place * t.emit(s, d);
        s = t.step(s, d);
        place *= static_cast<unsigned>(t.p);
    }
    return y;
}

Transducer trim(const Transducer& t) {
    const std::uint32_t codes = t.in_codes();
    std::vector<State> order;
    std::vector<State> renum(t.num_states, UINT32_MAX);
    std::queue<State> q;
    q.push(t.initial);
    renum[t.initial] = 0;
    order.push_back(t.initial);
    while (!q.empty()) {
        State s = q.front();
        q.pop();
        for (std::uint32_t c = 0; c < codes; ++c) {
            State n = t.step(s, c);
            if (renum[n] == UINT32_MAX) {
                renum[n] = static_cast<State>(order.size());
                order.push_back(n);
                q.push(n);
            }
        }
    }
    Transducer r;
    r.p = t.p;
    r.in_arity = t.in_arity;
    r.out_arity = t.out_arity;
    r.num_states = static_cast<State>(order.size());
    r.initial = 0;
    r.next.resize(static_cast<std::size_t>(r.num_states) * codes);
    r.out.resize(r.next.size());
    for (State s = 0; s < r.num_states; ++s) {
        State old = order[s];
        for (std::uint32_t c = 0; c < codes; ++c) {
            r.next[r.idx(s, c)] = renum[t.step(old, c)];
            r.out[r.idx(s, c)] = t.emit(old, c);
        }
    }
    return r;
}

ComponentReport components(const Transducer& t) {
    // Iterative Tarjan; the explicit stack keeps large machines safe.
    const std::uint32_t codes = t.in_codes();
    const State n = t.num_states;
    ComponentReport rep;
    rep.scc_of.assign(n, UINT32_MAX);
    std::vector<std::uint32_t> index(n, UINT32_MAX), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<State> stack;
    std::uint32_t counter = 0;

    struct Frame {
        State s;
        std::uint32_t edge;
    };
    std::vector<Frame> call;
    for (State root = 0; root < n; ++root) {
        if (index[root] != UINT32_MAX) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.edge < codes) {
                State w = t.step(f.s, f.edge++);
                if (index[w] == UINT32_MAX) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.s] = std::min(low[f.s], index[w]);
                }
            } else {
                if (low[f.s] == index[f.s]) {
                    std::uint32_t comp = rep.num_components++;
                    for (;;) {
                        State w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        rep.scc_of[w] = comp;
                        if (w == f.s) break;
                    }
                }
                State done = f.s;
                call.pop_back();
                if (!call.empty()) {
                    State parent = call.back().s;
                    low[parent] = std::min(low[parent], low[done]);
                }
            }
        }
    }

    rep.ergodic.assign(rep.num_components, 1);
    for (State s = 0; s < n; ++s)
        for (std::uint32_t c = 0; c < codes; ++c)
            if (rep.scc_of[t.step(s, c)] != rep.scc_of[s]) rep.ergodic[rep.scc_of[s]] = 0;
    for (State s = 0; s < n; ++s)
        if (!rep.ergodic[rep.scc_of[s]]) rep.transient_states.push_back(s);
    rep.is_minimal = rep.num_components == 1 && rep.ergodic[0] &&
                     rep.scc_of[t.initial] == 0;
    return rep;
}

Transducer subautomaton(const Transducer& t, State s) {
    if (s >= t.num_states) throw std::invalid_argument("subautomaton: unknown state");
    Transducer r = t;
    r.initial = s;
    return trim(r);
}

Transducer compose(const Transducer& a, const Transducer& b) {
    if (a.p != b.p) throw std::invalid_argument("compose: prime mismatch");
    if (a.out_arity != b.in_arity) throw std::invalid_argument("compose: arity mismatch");
    const std::uint32_t codes = a.in_codes();
    Transducer r;
    r.p = a.p;
    r.in_arity = a.in_arity;
    r.out_arity = b.out_arity;

    std::map<std::pair<State, State>, State> renum;
    std::vector<std::pair<State, State>> order;
    auto lookup = [&](State sa, State sb) {
        auto [it, fresh] = renum.emplace(std::make_pair(sa, sb), static_cast<State>(order.size()));
        if (fresh) order.emplace_back(sa, sb);
        return it->second;
    };
    lookup(a.initial, b.initial);
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto [sa, sb] = order[i];
        for (std::uint32_t c = 0; c < codes; ++c) {
            std::uint32_t mid = a.emit(sa, c);
            lookup(a.step(sa, c), b.step(sb, mid));
        }
    }
    r.num_states = static_cast<State>(order.size());
    r.initial = 0;
    r.next.resize(static_cast<std::size_t>(r.num_states) * codes);
    r.out.resize(r.next.size());
    for (State s = 0; s < r.num_states; ++s) {
        auto [sa, sb] = order[s];
        for (std::uint32_t c = 0; c < codes; ++c) {
            std::uint32_t mid = a.emit(sa, c);
            r.next[r.idx(s, c)] = renum.at({a.step(sa, c), b.step(sb, mid)});
            r.out[r.idx(s, c)] = b.emit(sb, mid);
        }
    }
    return r;
}

Transducer parallel(const Transducer& a, const Transducer& b) {
    if (a.p != b.p) throw std::invalid_argument("parallel: prime mismatch");
    if (a.in_arity != b.in_arity) throw std::invalid_argument("parallel: input arity mismatch");
    const std::uint32_t codes = a.in_codes();
    Transducer r;
    r.p = a.p;
    r.in_arity = a.in_arity;
    r.out_arity = a.out_arity + b.out_arity;
    std::map<std::pair<State, State>, State> renum;
    std::vector<std::pair<State, State>> order;
    auto lookup = [&](State sa, State sb) {
        auto [it, fresh] = renum.emplace(std::make_pair(sa, sb), static_cast<State>(order.size()));
        if (fresh) order.emplace_back(sa, sb);
        return it->second;
    };
    lookup(a.initial, b.initial);
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto [sa, sb] = order[i];
        for (std::uint32_t c = 0; c < codes; ++c) lookup(a.step(sa, c), b.step(sb, c));
    }
    r.num_states = static_cast<State>(order.size());
    r.initial = 0;
    r.next.resize(static_cast<std::size_t>(r.num_states) * codes);
    r.out.resize(r.next.size());
    const std::uint32_t b_out = b.out_codes();
    for (State s = 0; s < r.num_states; ++s) {
        auto [sa, sb] = order[s];
        for (std::uint32_t c = 0; c < codes; ++c) {
            r.next[r.idx(s, c)] = renum.at({a.step(sa, c), b.step(sb, c)});
            r.out[r.idx(s, c)] = a.emit(sa, c) * b_out + b.emit(sb, c);
        }
    }
    return r;
}

Transducer adder(int p) {
    Transducer t;
    t.p = p;
    t.in_arity = 2;
    t.out_arity = 1;
    t.num_states = 2;  // carry 0 / carry 1
    t.initial = 0;
    const std::uint32_t codes = t.in_codes();
    t.next.resize(2u * codes);
    t.out.resize(2u * codes);
    for (State carry = 0; carry < 2; ++carry) {
        for (std::uint32_t c = 0; c < codes; ++c) {
            std::uint32_t u = c / static_cast<unsigned>(p);
            std::uint32_t v = c % static_cast<unsigned>(p);
            std::uint32_t sum = u + v + carry;
            t.out[t.idx(carry, c)] = sum % static_cast<unsigned>(p);
            t.next[t.idx(carry, c)] = sum / static_cast<unsigned>(p);
        }
    }
    return t;
}

Transducer identity_machine(int p) {
    Transducer t;
    t.p = p;
    t.num_states = 1;
    t.initial = 0;
    t.next.assign(static_cast<std::size_t>(p), 0);
    t.out.resize(static_cast<std::size_t>(p));
    for (int d = 0; d < p; ++d) t.out[static_cast<std::size_t>(d)] = static_cast<std::uint32_t>(d);
    return t;
}

Transducer constant_machine(int p, const Word& preperiod, const Word& period) {
    if (period.empty()) throw std::invalid_argument("constant_machine: empty period");
    Transducer t;
    t.p = p;
    t.num_states = static_cast<State>(preperiod.size() + period.size());
    t.initial = 0;
    t.next.resize(static_cast<std::size_t>(t.num_states) * static_cast<unsigned>(p));
    t.out.resize(t.next.size());
    for (State s = 0; s < t.num_states; ++s) {
        Digit emit = s < preperiod.size() ? preperiod[s] : period[s - preperiod.size()];
        State nxt = s + 1 < t.num_states ? s + 1 : static_cast<State>(preperiod.size());
        for (int d = 0; d < p; ++d) {
            t.next[t.idx(s, static_cast<std::uint32_t>(d))] = nxt;
            t.out[t.idx(s, static_cast<std::uint32_t>(d))] = emit;
        }
    }
    return t;
}

namespace {

struct LineScanner {
    std::istringstream in;
    int line_no = 0;
    std::string current;

    explicit LineScanner(const std::string& text) : in(text) {}

    // Next non-empty line with comments stripped; false at end of input.
    bool next() {
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_no;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            std::size_t a = raw.find_first_not_of(" \t\r");
            if (a == std::string::npos) continue;
            std::size_t b = raw.find_last_not_of(" \t\r");
            current = raw.substr(a, b - a + 1);
            return true;
        }
        return false;
    }
};

long parse_long(const std::string& tok, int line, const char* what) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw CodecError(CodecError::Kind::BadHeader, line, std::string("expected integer for ") + what);
    return v;
}

std::vector<std::string> tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

}  // namespace

Transducer codec_load(const std::string& text, bool trim_after_load) {
    LineScanner sc(text);
    auto expect_header = [&](const char* key) -> std::vector<std::string> {
        if (!sc.next())
            throw CodecError(CodecError::Kind::BadHeader, sc.line_no, std::string("missing '") + key + "' line");
        auto tok = tokens(sc.current);
        if (tok.empty() || tok[0] != key)
            throw CodecError(CodecError::Kind::BadHeader, sc.line_no, std::string("expected '") + key + "' line");
        return tok;
    };

    Transducer t;
    auto ptok = expect_header("p");
    if (ptok.size() != 2) throw CodecError(CodecError::Kind::BadHeader, sc.line_no, "p line needs one value");
    long p = parse_long(ptok[1], sc.line_no, "p");
    if (!is_prime(p)) throw CodecError(CodecError::Kind::BadHeader, sc.line_no, "p must be a prime >= 2");
    t.p = static_cast<int>(p);

    auto atok = expect_header("arity");
    if (atok.size() != 3) throw CodecError(CodecError::Kind::BadHeader, sc.line_no, "arity line needs two values");
    long m = parse_long(atok[1], sc.line_no, "in arity");
    long n = parse_long(atok[2], sc.line_no, "out arity");
    if (m < 1 || n < 1) throw CodecError(CodecError::Kind::BadHeader, sc.line_no, "arities must be >= 1");
    t.in_arity = static_cast<int>(m);
    t.out_arity = static_cast<int>(n);

    auto stok = expect_header("states");
    if (stok.size() != 2) throw CodecError(CodecError::Kind::BadHeader, sc.line_no, "states line needs one value");
    long S = parse_long(stok[1], sc.line_no, "state count");
    if (S < 1) throw CodecError(CodecError::Kind::BadHeader, sc.line_no, "state count must be >= 1");
    t.num_states = static_cast<State>(S);

    auto itok = expect_header("initial");
    if (itok.size() != 2) throw CodecError(CodecError::Kind::BadHeader, sc.line_no, "initial line needs one value");
    long init = parse_long(itok[1], sc.line_no, "initial state");
    if (init < 0 || init >= S)
        throw CodecError(CodecError::Kind::UnknownInitialState, sc.line_no, "initial state out of range");
    t.initial = static_cast<State>(init);

    const std::uint32_t codes = t.in_codes();
    t.next.assign(static_cast<std::size_t>(t.num_states) * codes, 0);
    t.out.assign(t.next.size(), 0);
    std::vector<char> defined(t.next.size(), 0);

    auto parse_digits = [&](const std::vector<std::string>& tok, std::size_t from, int count,
                            int line) -> std::uint32_t {
        std::vector<Digit> ds;
        for (int i = 0; i < count; ++i) {
            long d = parse_long(tok[from + static_cast<std::size_t>(i)], line, "digit");
            if (d < 0 || d >= t.p)
                throw CodecError(CodecError::Kind::LetterOutOfRange, line, "letter out of range");
            ds.push_back(static_cast<Digit>(d));
        }
        return pack_tuple(ds, t.p);
    };

    std::size_t rows = 0;
    const std::size_t want = static_cast<std::size_t>(t.num_states) * codes;
    while (sc.next()) {
        auto tok = tokens(sc.current);
        std::size_t expect = 3 + static_cast<std::size_t>(t.in_arity) + static_cast<std::size_t>(t.out_arity);
        if (tok.size() != expect || tok[1 + static_cast<std::size_t>(t.in_arity)] != "->")
            throw CodecError(CodecError::Kind::BadHeader, sc.line_no, "malformed transition row");
        long s = parse_long(tok[0], sc.line_no, "state");
        if (s < 0 || s >= S) throw CodecError(CodecError::Kind::UnknownState, sc.line_no, "unknown state");
        std::uint32_t in_code = parse_digits(tok, 1, t.in_arity, sc.line_no);
        long nx = parse_long(tok[2 + static_cast<std::size_t>(t.in_arity)], sc.line_no, "next state");
        if (nx < 0 || nx >= S) throw CodecError(CodecError::Kind::UnknownState, sc.line_no, "unknown next state");
        std::uint32_t out_code = parse_digits(tok, 3 + static_cast<std::size_t>(t.in_arity), t.out_arity, sc.line_no);
        std::size_t at = t.idx(static_cast<State>(s), in_code);
        if (defined[at])
            throw CodecError(CodecError::Kind::DuplicateTransition, sc.line_no, "duplicate transition");
        defined[at] = 1;
        t.next[at] = static_cast<State>(nx);
        t.out[at] = out_code;
        ++rows;
    }
    if (rows != want)
        throw CodecError(CodecError::Kind::MissingTransition, sc.line_no,
                         "expected " + std::to_string(want) + " transition rows, got " + std::to_string(rows));
    return trim_after_load ? trim(t) : t;
}

std::string codec_save(const Transducer& t) {
    std::ostringstream os;
    os << "p " << t.p << "\n";
    os << "arity " << t.in_arity << " " << t.out_arity << "\n";
    os << "states " << t.num_states << "\n";
    os << "initial " << t.initial << "\n";
    const std::uint32_t codes = t.in_codes();
    for (State s = 0; s < t.num_states; ++s) {
        for (std::uint32_t c = 0; c < codes; ++c) {
            os << s;
            for (Digit d : unpack_tuple(c, t.p, t.in_arity)) os << " " << static_cast<int>(d);
            os << " -> " << t.step(s, c);
            for (Digit d : unpack_tuple(t.emit(s, c), t.p, t.out_arity)) os << " " << static_cast<int>(d);
            os << "\n";
        }
    }
    return os.str();
}

Transducer load_file(const std::string& path, bool trim_after_load) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open machine file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return codec_load(ss.str(), trim_after_load);
}

void save_file(const Transducer& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write machine file: " + path);
    out << codec_save(t);
}

}  // namespace zplot
