#include "zplot/affine.hpp"

#include <map>
#include <stdexcept>

#include "zplot/prng.hpp"

namespace zplot {

AffineParams::AffineParams(const PadicRational& a, const PadicRational& b) : p(a.p) {
    if (a.p != b.p) throw std::invalid_argument("AffineParams: prime mismatch");
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.den().get_mpz_t(), b.den().get_mpz_t());
    beta = l;
    alpha = a.num() * (l / a.den());
    gamma = b.num() * (l / b.den());
}

AffineParams::AffineParams(mpz_class alpha_, mpz_class gamma_, mpz_class beta_, int p_)
    : alpha(std::move(alpha_)), gamma(std::move(gamma_)), beta(std::move(beta_)), p(p_) {
    if (beta <= 0) throw std::invalid_argument("AffineParams: beta must be positive");
    mpz_class g;
    mpz_class pz(p);
    mpz_gcd(g.get_mpz_t(), beta.get_mpz_t(), pz.get_mpz_t());
    if (g != 1) throw std::invalid_argument("AffineParams: beta not coprime to p");
}

Transducer synth_affine(const AffineParams& prm) {
    const int p = prm.p;
    mpz_class pz(p);
    mpz_class binv;
    mpz_invert(binv.get_mpz_t(), prm.beta.get_mpz_t(), pz.get_mpz_t());
    const unsigned long inv_beta = binv.get_ui();

    mpz_class bound = 4 * (abs(prm.alpha) + abs(prm.gamma) + prm.beta);

    std::map<mpz_class, State> id_of;
    std::vector<mpz_class> carries;
    auto lookup = [&](const mpz_class& r) {
        auto [it, fresh] = id_of.emplace(r, static_cast<State>(carries.size()));
        if (fresh) {
            if (abs(r) > bound) throw std::logic_error("synth_affine: carry escaped its bound");
            carries.push_back(r);
        }
        return it->second;
    };

    Transducer t;
    t.p = p;
    lookup(prm.gamma);
    std::vector<State> next;
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < carries.size(); ++i) {
        mpz_class r = carries[i];
        for (int x = 0; x < p; ++x) {
            mpz_class acc = prm.alpha * x + r;
            unsigned long acc_mod = mpz_fdiv_ui(acc.get_mpz_t(), static_cast<unsigned long>(p));
            unsigned long y = (acc_mod * inv_beta) % static_cast<unsigned long>(p);
            mpz_class r2 = acc - prm.beta * static_cast<long>(y);
            mpz_divexact_ui(r2.get_mpz_t(), r2.get_mpz_t(), static_cast<unsigned long>(p));
            next.push_back(lookup(r2));
            out.push_back(static_cast<std::uint32_t>(y));
        }
    }
    t.num_states = static_cast<State>(carries.size());
    t.initial = 0;
    t.next = std::move(next);
    t.out = std::move(out);
    return t;
}

Transducer synth_affine(const PadicRational& a, const PadicRational& b) {
    return synth_affine(AffineParams(a, b));
}

mpz_class affine_eval_mod(const AffineParams& prm, const Word& zdigits) {
    const int k = static_cast<int>(zdigits.size());
    mpz_class modulus = pow_mpz(prm.p, k);
    mpz_class x = nm_mpz(zdigits, prm.p);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), prm.beta.get_mpz_t(), modulus.get_mpz_t());
    mpz_class v = ((prm.alpha * x + prm.gamma) % modulus) * inv % modulus;
    if (v < 0) v += modulus;
    return v;
}

std::uint64_t affine_eval_mod_u64(const AffineParams& prm, std::uint64_t x, int k) {
    Word w = wrd_u64(x, prm.p, k);
    mpz_class v = affine_eval_mod(prm, w);
    return mpz_get_ui(v.get_mpz_t());
}

LipschitzReport lipschitz_check(const Transducer& t, std::uint64_t trials, std::uint64_t seed) {
    if (t.in_arity != 1 || t.out_arity != 1)
        throw std::invalid_argument("lipschitz_check: machine is not single input/output");
    SplitMix64 rng(seed);
    LipschitzReport rep;
    rep.trials = trials;
    const int k = 24;
    for (std::uint64_t i = 0; i < trials; ++i) {
        int prefix = static_cast<int>(rng.next() % k);
        Word u(k), v(k);
        for (int j = 0; j < k; ++j) {
            Digit d = static_cast<Digit>(rng.next() % static_cast<unsigned>(t.p));
            u[static_cast<std::size_t>(j)] = d;
            v[static_cast<std::size_t>(j)] = j < prefix ? d : static_cast<Digit>(rng.next() % static_cast<unsigned>(t.p));
        }
        Word fu = run1(t, u), fv = run1(t, v);
        for (int j = 0; j < prefix; ++j) {
            if (fu[static_cast<std::size_t>(j)] != fv[static_cast<std::size_t>(j)]) {
                rep.pass = false;
                rep.counterexample = {u, v};
                rep.prefix = prefix;
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace zplot
