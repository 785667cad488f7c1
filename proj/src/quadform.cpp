#include "dombv/quadform.hpp"

#include <cmath>

#include "dombv/padic.hpp"

namespace dombv {

namespace {

std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

} // namespace

std::optional<std::uint64_t> sqrt_mod(long long a, std::uint64_t p) {
    long long am = a % static_cast<long long>(p);
    if (am < 0)
        am += static_cast<long long>(p);
    std::uint64_t n = static_cast<std::uint64_t>(am);
    if (n == 0)
        return 0;
    if (legendre(static_cast<long long>(n), p) != 1)
        return std::nullopt;
    std::uint64_t r;
    if (p % 4 == 3) {
        r = powmod(n, (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks: p - 1 = q * 2^s with q odd
        std::uint64_t q = p - 1, s = 0;
        while (q % 2 == 0) {
            q /= 2;
            ++s;
        }
        std::uint64_t z = 2;
        while (legendre(static_cast<long long>(z), p) != -1)
            ++z;
        std::uint64_t m = s;
        std::uint64_t c = powmod(z, q, p);
        std::uint64_t t = powmod(n, q, p);
        r = powmod(n, (q + 1) / 2, p);
        while (t != 1) {
            std::uint64_t i = 0, t2 = t;
            while (t2 != 1) {
                t2 = mulmod(t2, t2, p);
                ++i;
            }
            std::uint64_t b = powmod(c, 1ULL << (m - i - 1), p);
            m = i;
            c = mulmod(b, b, p);
            t = mulmod(t, c, p);
            r = mulmod(r, b, p);
        }
    }
    return std::min(r, p - r);
}

QuadRep represent(std::uint64_t p) {
    if (p <= 3 || p % 3 != 1)
        throw WrongResidueClass("represent: p = " + std::to_string(p) +
                                " is not a prime = 1 mod 3 above 3");
    auto root = sqrt_mod(-3, p);
    if (!root)
        throw WrongResidueClass("represent: -3 is not a square mod " + std::to_string(p));
    // Cornacchia, starting from the root in (p/2, p)
    std::uint64_t r0 = p, r1 = std::max(*root, p - *root);
    std::uint64_t bound = isqrt_u64(p);
    while (r1 > bound) {
        std::uint64_t r2 = r0 % r1;
        r0 = r1;
        r1 = r2;
    }
    std::uint64_t x = r1;
    std::uint64_t rem = p - x * x;
    if (rem % 3 != 0)
        throw std::logic_error("represent: Cornacchia descent failed at p=" + std::to_string(p));
    std::uint64_t y = isqrt_u64(rem / 3);
    if (y * y != rem / 3 || x == 0 || y == 0)
        throw std::logic_error("represent: Cornacchia descent failed at p=" + std::to_string(p));
    return QuadRep{p, x, y};
}

ExactInteger r3_exact(std::uint64_t p) {
    ExactRational bracket =
        ExactRational(1) + ExactRational(static_cast<unsigned long>(2 * p)) +
        make_rational(4, 3) * ExactRational(pow_int(2, p - 1) - 1) -
        make_rational(3, 2) * ExactRational(pow_int(3, p - 1) - 1);
    ExactInteger b = binomial((p - 1) / 2, static_cast<long>(p / 6));
    ExactRational v = bracket * ExactRational(b * b);
    // 3 | 2^{p-1}-1 and 2 | 3^{p-1}-1 for odd p, so the value is an integer
    if (v.get_den() != 1)
        throw std::logic_error("r3_exact: non-integral value");
    return v.get_num();
}

R3Value r3(std::uint64_t p) {
    if (p <= 3)
        throw std::invalid_argument("r3: need p > 3");
    ExactInteger pk(p);
    pk *= ExactInteger(p);
    ExactInteger m = r3_exact(p) % pk;
    if (m < 0)
        m += pk;
    return R3Value{p, m.get_ui()};
}

R3Value r3_padic(std::uint64_t p) {
    if (p <= 3)
        throw std::invalid_argument("r3_padic: need p > 3");
    const int K = 2;
    // 2^{p-1}-1 = p q_p(2), 3^{p-1}-1 = p q_p(3); mod p^2 the quotients only
    // matter mod p
    PadicValue q2 = fermat_quotient(2, p, 1).times_p_power(1);
    PadicValue q3 = fermat_quotient(3, p, 1).times_p_power(1);
    PadicValue four_thirds = PadicValue::from_integer(4, p, K) /
                             PadicValue::from_integer(3, p, K);
    PadicValue three_halves = PadicValue::from_integer(3, p, K) /
                              PadicValue::from_integer(2, p, K);
    PadicValue bracket = PadicValue::from_integer(1 + 2 * static_cast<long long>(p), p, K) +
                         four_thirds * q2 - three_halves * q3;
    PadicValue b = binomial_mod((p - 1) / 2, static_cast<long>(p / 6), p, K);
    PadicValue v = bracket * b * b;
    return R3Value{p, v.residue_mod(K)};
}

} // namespace dombv
