#include "dombv/identity.hpp"

#include <sstream>

namespace dombv {

namespace {

IdentityCheck make_check(std::string id, std::string params, ExactRational lhs,
                         ExactRational rhs) {
    bool pass = lhs == rhs;
    return IdentityCheck{std::move(id), std::move(params), std::move(lhs),
                         std::move(rhs), pass};
}

} // namespace

ExactInteger sigma1_poly(const ExactInteger& n, const ExactInteger& j) {
    return j * (j + 1) * (j + 3) + n * (2 - j * j) * (3 * j + 1) -
           n * n * (j + 2) * (3 * j + 1) * (3 * j + 2) +
           n * n * n * (j + 1) * (3 * j + 1) * (3 * j + 2);
}

ExactInteger sigma3_poly(const ExactInteger& n, const ExactInteger& j) {
    return j * (1 + 2 * j) + 2 * n * (j + 1) * (3 * j + 1) -
           2 * n * n * (3 * j + 1) * (3 * j + 2) +
           n * n * n * (3 * j + 1) * (3 * j + 2);
}

IdentityCheck check_pfaff_saalschutz(unsigned long n) {
    ExactRational lhs(0);
    for (unsigned long k = 0; k <= n; ++k) {
        ExactInteger num = binomial(n, static_cast<long>(k)) *
                           binomial(n + k, static_cast<long>(k));
        if (k % 2 == 1)
            num = -num;
        lhs += make_rational(num, ExactInteger(3 * k + 4));
    }
    ExactRational prod(1);
    for (unsigned long k = 1; k <= n; ++k)
        prod *= make_rational(ExactInteger(3 * k) - 1, ExactInteger(3 * k) - 2);
    long ln = static_cast<long>(n);
    ExactRational rhs = -prod / ExactRational(ExactInteger(3 * ln - 1) *
                                              ExactInteger(3 * ln + 1) *
                                              ExactInteger(3 * ln + 4));
    return make_check("pfaff", "n=" + std::to_string(n), lhs, rhs);
}

IdentityCheck check_harmonic_id(unsigned long n) {
    ExactRational lhs(0);
    for (unsigned long j = 0; j <= n; ++j) {
        ExactInteger num = binomial(n, static_cast<long>(j)) *
                           binomial(n + j, static_cast<long>(j));
        if (j % 2 == 1)
            num = -num;
        lhs += ExactRational(num) * (harmonic(2 * j) - harmonic(j)) /
               ExactRational(ExactInteger(3 * j + 4));
    }
    long ln = static_cast<long>(n);
    ExactInteger d1 = ExactInteger(3 * ln - 1) * ExactInteger(3 * ln + 4);
    ExactRational rhs = -make_rational(ExactInteger(9 * (2 * ln + 1)), 10 * d1);
    // (1/3)_k/(2/3)_k advances by (3k-2)/(3k-1) per step
    ExactRational ratio(1);
    ExactRational inner = make_rational(9, 10);
    for (unsigned long k = 1; k <= n; ++k) {
        ratio *= make_rational(ExactInteger(3 * k) - 2, ExactInteger(3 * k) - 1);
        inner += ratio / ExactRational(ExactInteger(k));
    }
    ExactInteger d2 = d1 * ExactInteger(3 * ln + 1);
    rhs += (ExactRational(1) / ratio) / ExactRational(d2) * inner;
    return make_check("harmonic", "n=" + std::to_string(n), lhs, rhs);
}

IdentityCheck check_sigma1(unsigned long n, unsigned long j) {
    ExactRational lhs(0);
    for (unsigned long k = 2 * j; k < n; ++k)
        lhs += ExactRational(ExactInteger(k) * ExactInteger(k) * ExactInteger(k) *
                             binomial(k + j, static_cast<long>(3 * j)));
    ExactInteger den = ExactInteger(j + 1) * ExactInteger(3 * j + 2) *
                       ExactInteger(3 * j + 4);
    ExactRational rhs =
        make_rational(sigma1_poly(ExactInteger(static_cast<unsigned long>(n)),
                                  ExactInteger(static_cast<unsigned long>(j))),
                      den) *
        ExactRational(binomial(n + j, static_cast<long>(3 * j + 1)));
    return make_check("sigma1", "n=" + std::to_string(n) + " j=" + std::to_string(j),
                      lhs, rhs);
}

IdentityCheck check_sigma3(unsigned long n, unsigned long j) {
    ExactRational lhs(0);
    for (unsigned long k = j; k < n; ++k)
        lhs += ExactRational(ExactInteger(k) * ExactInteger(k) * ExactInteger(k) *
                             binomial(k + 2 * j, static_cast<long>(3 * j)));
    ExactInteger den = ExactInteger(3 * j + 2) * ExactInteger(3 * j + 4);
    ExactRational rhs =
        make_rational(sigma3_poly(ExactInteger(static_cast<unsigned long>(n)),
                                  ExactInteger(static_cast<unsigned long>(j))),
                      den) *
        ExactRational(binomial(n + 2 * j, static_cast<long>(3 * j + 1)));
    return make_check("sigma3", "n=" + std::to_string(n) + " j=" + std::to_string(j),
                      lhs, rhs);
}

std::vector<IdentityCheck> check_aux_binomial_ids(unsigned long p) {
    if (p < 7 || p % 3 != 1)
        throw std::invalid_argument("check_aux_binomial_ids: need p = 1 mod 3, p >= 7");
    unsigned long k1 = (p - 4) / 3;
    unsigned long k2 = (p - 1) / 3;
    long lp = static_cast<long>(p);
    ExactRational half = make_rational(-1, 2);
    ExactRational a = make_rational(lp - 1, 2);
    std::string params = "p=" + std::to_string(p);

    ExactRational sq_l = gen_binomial(half, k1);
    sq_l *= sq_l;
    ExactRational sq_r = gen_binomial(half, k2);
    sq_r *= sq_r;
    sq_r *= make_rational(ExactInteger(4) * (lp - 1) * (lp - 1),
                          ExactInteger(2 * lp - 5) * ExactInteger(2 * lp - 5));

    ExactRational pr_l = gen_binomial(a, k1) * gen_binomial(a + ExactRational(ExactInteger(k1)), k1);
    ExactRational pr_r = gen_binomial(a, k2) * gen_binomial(a + ExactRational(ExactInteger(k2)), k2) *
                         make_rational(ExactInteger(4) * (lp - 1), ExactInteger(5) * (lp + 5));

    return {make_check("auxbinom/square", params, sq_l, sq_r),
            make_check("auxbinom/product", params, pr_l, pr_r)};
}

std::vector<IdentityCheck> check_transforms(unsigned long n) {
    ExactRational d(domb(n));
    std::string params = "n=" + std::to_string(n);
    return {make_check("transforms/base16", params, d, ExactRational(domb_rhs_16(n))),
            make_check("transforms/base4", params, d, ExactRational(domb_rhs_4(n)))};
}

} // namespace dombv
