#include "zplot/vanderput.hpp"

namespace zplot {

Oracle machine_oracle(const Transducer& t) {
    if (t.in_arity != 1 || t.out_arity != 1)
        throw std::invalid_argument("machine_oracle: machine is not single input/output");
    Transducer copy = t;
    return Oracle{t.p, [copy](const mpz_class& x, int k) {
                      return nm_mpz(run1(copy, wrd_mpz(x, copy.p, k)), copy.p);
                  }};
}

Oracle identity_oracle(int p) {
    return Oracle{p, [p](const mpz_class& x, int k) {
                      mpz_class r = x % pow_mpz(p, k);
                      return r;
                  }};
}

Oracle constant_oracle(int p, const mpq_class& c) {
    return Oracle{p, [p, c](const mpz_class&, int k) {
                      mpz_class modulus = pow_mpz(p, k);
                      mpz_class inv;
                      if (mpz_invert(inv.get_mpz_t(), c.get_den().get_mpz_t(), modulus.get_mpz_t()) == 0)
                          throw std::invalid_argument("constant_oracle: denominator not coprime to p");
                      mpz_class v = (c.get_num() % modulus) * inv % modulus;
                      if (v < 0) v += modulus;
                      return v;
                  }};
}

Oracle squaring_oracle(int p) {
    return Oracle{p, [p](const mpz_class& x, int k) {
                      mpz_class r = (x * x) % pow_mpz(p, k);
                      return r;
                  }};
}

std::vector<VdpCoefficient> vdp_coeffs(const Oracle& f, std::uint64_t m_max, int K) {
    const int p = f.p;
    mpz_class modulus = pow_mpz(p, K);
    std::vector<VdpCoefficient> out;
    out.reserve(m_max);
    for (std::uint64_t m = 0; m < m_max; ++m) {
        VdpCoefficient c;
        c.m = m;
        int lg = floor_log(p, m);
        if (m < static_cast<unsigned>(p)) {
            c.B = f.eval(mpz_class(static_cast<unsigned long>(m)), K) % modulus;
        } else {
            std::uint64_t lead = m / pow_u64(static_cast<unsigned>(p), lg);
            std::uint64_t trunc = m - lead * pow_u64(static_cast<unsigned>(p), lg);
            mpz_class fm = f.eval(mpz_class(static_cast<unsigned long>(m)), K);
            mpz_class ft = f.eval(mpz_class(static_cast<unsigned long>(trunc)), K);
            c.B = (fm - ft) % modulus;
            if (c.B < 0) c.B += modulus;
        }
        if (K > lg) {
            mpz_class scale = pow_mpz(p, lg);
            if (!mpz_divisible_p(c.B.get_mpz_t(), scale.get_mpz_t()))
                throw std::domain_error("vdp_coeffs: oracle is not 1-Lipschitz at m=" + std::to_string(m));
            c.b = c.B / scale;
            c.normalized = true;
        }
        out.push_back(std::move(c));
    }
    return out;
}

mpz_class reconstruct(const std::vector<VdpCoefficient>& coeffs, const Word& zdigits, int p) {
    const int k = static_cast<int>(zdigits.size());
    std::uint64_t need = pow_u64(static_cast<unsigned>(p), k);
    if (coeffs.size() < need)
        throw std::invalid_argument("reconstruct: need coefficients for all m < p^k");
    for (std::uint64_t m = 0; m < need; ++m)
        if (coeffs[m].m != m) throw std::invalid_argument("reconstruct: coefficients must be indexed by m");

    mpz_class modulus = pow_mpz(p, k);
    std::uint64_t x = nm_u64(zdigits, p);
    std::uint64_t prefix = x % static_cast<unsigned>(p);
    mpz_class acc = coeffs[prefix].B;
    std::uint64_t scale = static_cast<unsigned>(p);
    for (int n = 2; n <= k; ++n) {
        scale *= static_cast<unsigned>(p);
        std::uint64_t xn = x % scale;
        if (zdigits[static_cast<std::size_t>(n - 1)] != 0) acc += coeffs[xn].B;
    }
    acc %= modulus;
    if (acc < 0) acc += modulus;
    return acc;
}

std::uint64_t MachineBSeq::operator()(std::uint64_t m) const {
    const int lg = floor_log(2, m);
    if (lg + cmp > K || K > 63)
        throw std::invalid_argument("MachineBSeq: precision exhausted for this m");
    std::uint64_t mask_K = (K == 63) ? ((std::uint64_t(1) << 63) - 1) : ((std::uint64_t(1) << K) - 1);
    std::uint64_t fm = run_nm_u64(*t, m, K);
    std::uint64_t B;
    if (m < 2) {
        B = fm & mask_K;
    } else {
        std::uint64_t trunc = m - (std::uint64_t(1) << lg);
        std::uint64_t ft = run_nm_u64(*t, trunc, K);
        B = (fm - ft) & mask_K;
    }
    std::uint64_t b = B >> lg;  // exact: machines are 1-Lipschitz
    if ((B & ((std::uint64_t(1) << lg) - 1)) != 0)
        throw std::logic_error("MachineBSeq: coefficient not divisible by 2^floor(log2 m)");
    return b & ((std::uint64_t(1) << cmp) - 1);
}

}  // namespace zplot
