#include "zplot/links.hpp"

namespace zplot {

LinkPrediction predict_affine(const PadicRational& a, const PadicRational& q) {
    if (a.p != q.p) throw std::invalid_argument("predict_affine: prime mismatch");
    LinkPrediction pred;
    pred.slope = a.value;

    const mpz_class& b = a.den();
    const mpz_class& b_prime = q.den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), b.get_mpz_t(), b_prime.get_mpz_t());
    pred.m = b_prime / g;
    pred.knot_count = mult_ord(a.p, pred.m);

    CSet offsets = cset(q);
    pred.full_offsets = offsets.elements;
    for (unsigned long r = 0; r < pred.knot_count; ++r)
        pred.intercepts.push_back(offsets.elements[r % offsets.elements.size()]);
    return pred;
}

LinkPrediction predict_const(const PadicRational& q) {
    LinkPrediction pred = predict_affine(PadicRational(0, 1, q.p), q);
    // slope 0: every offset is its own parallel, so knot_count equals the
    // period length and the intercepts list all of C(q)
    return pred;
}

LinkPrediction predict_linear(const PadicRational& c) {
    return predict_affine(c, PadicRational(0, 1, c.p));
}

PsiFamily psi_family(const PadicRational& a, const PadicRational& q) {
    LinkPrediction pred = predict_affine(a, q);
    PsiFamily fam;
    fam.slope = a.value;
    mpq_class phase = mod1(q.value);
    for (unsigned long k = 0; k < pred.knot_count; ++k) {
        fam.phases.push_back(phase);
        phase = mod1(phase * a.p);
    }
    return fam;
}

}  // namespace zplot
