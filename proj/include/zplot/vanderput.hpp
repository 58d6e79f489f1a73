#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "zplot/transducer.hpp"
#include "zplot/words.hpp"

namespace zplot {

// A 1-Lipschitz function given by oracle: x in [0, p^k) -> f(x) mod p^k.
struct Oracle {
    int p;
    std::function<mpz_class(const mpz_class& x, int k)> eval;
};

Oracle machine_oracle(const Transducer& t);
Oracle identity_oracle(int p);
Oracle constant_oracle(int p, const mpq_class& c);  // den(c) coprime to p
Oracle squaring_oracle(int p);

inline int floor_log(int p, std::uint64_t m) {
    int n = 0;
    while (m >= static_cast<unsigned>(p)) {
        m /= static_cast<unsigned>(p);
        ++n;
    }
    return n;
}

// Coefficient data at working precision p^K.  B is the raw coefficient
// residue; b = B / p^{floor(log_p m)} is the normalized one and is only
// meaningful when `normalized` holds (requires K > floor(log_p m)).
struct VdpCoefficient {
    std::uint64_t m = 0;
    mpz_class B;
    mpz_class b;
    bool normalized = false;
};

// Coefficients for 0 <= m < m_max at precision p^K.  Throws if B_m is not
// divisible by p^{floor(log_p m)}, which means the oracle violated the
// 1-Lipschitz precondition.
std::vector<VdpCoefficient> vdp_coeffs(const Oracle& f, std::uint64_t m_max, int K);

// Sum of B_m over the balls containing z, mod p^k.  Needs coeffs for all
// m < p^k, indexed by m.
mpz_class reconstruct(const std::vector<VdpCoefficient>& coeffs, const Word& zdigits, int p);

// Fast path for p = 2: b_m reduced to cmp low bits, working precision K bits.
// Valid while floor(log2 m) + cmp <= K <= 63.
struct MachineBSeq {
    const Transducer* t;
    int K = 62;
    int cmp = 40;
    std::uint64_t operator()(std::uint64_t m) const;
};

struct CoeffSetReport {
    // (j, |{b_m : m < p^j}|) for each probed level
    std::vector<std::pair<int, std::size_t>> growth;
    std::size_t distinct = 0;
    bool stabilized = false;  // no growth across the final three levels
};

// Deduplicated normalized-coefficient set below M with its growth curve,
// one entry per level j: |{b_m : m < min(p^j, M)}|.
template <class Seq>
CoeffSetReport coeffset_probe(Seq&& seq, int p, std::uint64_t M) {
    if (M < 1) throw std::invalid_argument("coeffset_probe: M must be >= 1");
    CoeffSetReport rep;
    std::map<std::invoke_result_t<Seq, std::uint64_t>, char> seen;
    std::uint64_t bound = 1;
    std::uint64_t m = 0;
    for (int j = 0;; ++j) {
        if (bound > M) bound = M;
        for (; m < bound; ++m) seen.emplace(seq(m), 1);
        rep.growth.emplace_back(j, seen.size());
        if (bound == M) break;
        bound *= static_cast<unsigned>(p);
    }
    rep.distinct = seen.size();
    std::size_t n = rep.growth.size();
    rep.stabilized = n >= 3 && rep.growth[n - 1].second == rep.growth[n - 3].second;
    return rep;
}

struct KernelReport {
    enum class Status { Finite, Undecided };
    Status status = Status::Undecided;
    std::size_t classes = 0;
    int depth = 0;                // J
    std::uint64_t prefix_len = 0;  // L
    std::vector<std::pair<int, std::uint64_t>> class_reps;  // (j, t)
    std::size_t distinct_terms = 0;
    bool alphabet_overflow = false;
};

// Bounded closure search over the subsequences (a_{j p^d + t}).  Signatures
// are raw length-L prefixes; Finite means every child of every explored class
// re-matched a known signature, a semi-decision at depth J.
template <class Seq>
KernelReport kernel_probe(Seq&& seq, int p, int J, std::uint64_t L,
                          std::size_t max_alphabet = 4096) {
    if (J < 1) throw std::invalid_argument("kernel_probe: J must be >= 1");
    if (L < pow_u64(static_cast<unsigned>(p), J))
        throw std::invalid_argument("kernel_probe: prefix too short to distinguish at depth J");

    using V = std::invoke_result_t<Seq, std::uint64_t>;
    std::unordered_map<std::uint64_t, V> memo;
    std::map<V, char> alphabet;
    auto term = [&](std::uint64_t i) -> const V& {
        auto it = memo.find(i);
        if (it == memo.end()) {
            it = memo.emplace(i, seq(i)).first;
            alphabet.emplace(it->second, 1);
        }
        return it->second;
    };
    auto signature = [&](int d, std::uint64_t t) {
        std::vector<V> sig;
        sig.reserve(L);
        std::uint64_t step = pow_u64(static_cast<unsigned>(p), d);
        for (std::uint64_t j = 0; j < L; ++j) sig.push_back(term(j * step + t));
        return sig;
    };

    KernelReport rep;
    rep.depth = J;
    rep.prefix_len = L;
    std::map<std::vector<V>, std::size_t> known;
    std::queue<std::pair<int, std::uint64_t>> frontier;

    known.emplace(signature(0, 0), 0);
    rep.class_reps.emplace_back(0, 0);
    frontier.emplace(0, 0);
    bool closed = true;
    while (!frontier.empty()) {
        auto [d, t] = frontier.front();
        frontier.pop();
        std::uint64_t step = pow_u64(static_cast<unsigned>(p), d);
        for (int u = 0; u < p; ++u) {
            std::uint64_t child_t = t + static_cast<std::uint64_t>(u) * step;
            auto sig = signature(d + 1, child_t);
            auto it = known.find(sig);
            if (it != known.end()) continue;
            if (d + 1 > J) {
                closed = false;  // new class past the depth bound
                continue;
            }
            known.emplace(std::move(sig), known.size());
            rep.class_reps.emplace_back(d + 1, child_t);
            frontier.emplace(d + 1, child_t);
        }
    }
    rep.classes = known.size();
    rep.distinct_terms = alphabet.size();
    rep.alphabet_overflow = alphabet.size() > max_alphabet;
    rep.status = closed ? KernelReport::Status::Finite : KernelReport::Status::Undecided;
    return rep;
}

}  // namespace zplot
