#include "dombv/exact.hpp"

#include <deque>
#include <mutex>
#include <stdexcept>

namespace dombv {

namespace {

// Memo tables use std::deque so references stay valid while another thread
// extends the tail. ensure() is the only writer and holds the mutex.
template <typename T>
class MemoTable {
public:
    template <typename Fn>
    const T& get(unsigned long n, Fn&& compute) {
        std::lock_guard<std::mutex> lock(mu_);
        while (values_.size() <= n)
            values_.push_back(compute(values_.size(), values_));
        return values_[n];
    }

private:
    std::mutex mu_;
    std::deque<T> values_;
};

MemoTable<ExactInteger>  g_factorial;
MemoTable<ExactInteger>  g_domb;
MemoTable<ExactRational> g_harmonic1;
MemoTable<ExactRational> g_harmonic2;
MemoTable<ExactRational> g_bernoulli;

ExactInteger binom_uiui(unsigned long n, unsigned long k) {
    ExactInteger r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

} // namespace

ExactRational make_rational(const ExactInteger& num, const ExactInteger& den) {
    if (den == 0)
        throw std::invalid_argument("make_rational: zero denominator");
    ExactRational r(num, den);
    r.canonicalize();
    return r;
}

ExactInteger pow_int(const ExactInteger& base, unsigned long e) {
    ExactInteger r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

const ExactInteger& factorial(unsigned long n) {
    return g_factorial.get(n, [](unsigned long i, const std::deque<ExactInteger>& t) {
        return i == 0 ? ExactInteger(1) : ExactInteger(t[i - 1] * static_cast<unsigned long>(i));
    });
}

ExactInteger binomial(unsigned long n, long k) {
    if (k < 0 || static_cast<unsigned long>(k) > n)
        return 0;
    // Modest n goes through the shared factorial table (reused heavily across
    // a sweep); larger n falls back to GMP's direct routine.
    constexpr unsigned long kFactLimit = 2048;
    if (n <= kFactLimit) {
        auto uk = static_cast<unsigned long>(k);
        ExactInteger r = factorial(n) / (factorial(uk) * factorial(n - uk));
        return r;
    }
    return binom_uiui(n, static_cast<unsigned long>(k));
}

ExactRational gen_binomial(const ExactRational& a, unsigned long k) {
    ExactRational num(1);
    for (unsigned long j = 0; j < k; ++j)
        num *= a - static_cast<long>(j);
    return num / ExactRational(factorial(k));
}

ExactRational rising_factorial(const ExactRational& a, unsigned long n) {
    ExactRational acc(1);
    for (unsigned long j = 0; j < n; ++j)
        acc *= a + static_cast<long>(j);
    return acc;
}

const ExactRational& harmonic(unsigned long n, int order) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("harmonic: order must be 1 or 2");
    auto& table = order == 1 ? g_harmonic1 : g_harmonic2;
    return table.get(n, [order](unsigned long i, const std::deque<ExactRational>& t) {
        if (i == 0)
            return ExactRational(0);
        ExactInteger den(static_cast<unsigned long>(i));
        if (order == 2)
            den *= static_cast<unsigned long>(i);
        return ExactRational(t[i - 1] + make_rational(1, den));
    });
}

const ExactInteger& domb(unsigned long n) {
    return g_domb.get(n, [](unsigned long i, const std::deque<ExactInteger>&) {
        ExactInteger acc(0);
        for (unsigned long k = 0; k <= i; ++k) {
            ExactInteger b = binomial(i, static_cast<long>(k));
            acc += b * b * binomial(2 * k, static_cast<long>(k)) *
                   binomial(2 * (i - k), static_cast<long>(i - k));
        }
        return acc;
    });
}

ExactInteger domb_rhs_16(unsigned long n) {
    ExactInteger acc(0);
    for (unsigned long k = 0; k <= n; ++k) {
        ExactInteger t = binomial(n + 2 * k, static_cast<long>(3 * k)) *
                         pow_int(binomial(2 * k, static_cast<long>(k)), 2) *
                         binomial(3 * k, static_cast<long>(k)) *
                         pow_int(16, n - k);
        acc += (k % 2 == 0) ? t : -t;
    }
    return acc;
}

ExactInteger domb_rhs_4(unsigned long n) {
    ExactInteger acc(0);
    for (unsigned long k = 0; k <= n / 2; ++k) {
        acc += binomial(n + k, static_cast<long>(3 * k)) *
               pow_int(binomial(2 * k, static_cast<long>(k)), 2) *
               binomial(3 * k, static_cast<long>(k)) *
               pow_int(4, n - 2 * k);
    }
    return acc;
}

ExactRational liu_sum(unsigned long n, int sign) {
    if (n == 0)
        throw std::invalid_argument("liu_sum: n must be >= 1");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("liu_sum: sign must be +1 or -1");
    ExactInteger base(8 * sign);
    ExactInteger acc(0);  // Horner: acc = sum_{k<n} (2k+1) D_k base^{n-1-k}
    for (unsigned long k = 0; k < n; ++k)
        acc = acc * base + ExactInteger(2 * k + 1) * domb(k);
    return make_rational(acc, ExactInteger(n));
}

const ExactRational& bernoulli(unsigned long n) {
    return g_bernoulli.get(n, [](unsigned long i, const std::deque<ExactRational>& t) {
        if (i == 0)
            return ExactRational(1);
        // sum_{k<=i} binom(i+1,k) B_k = 0
        ExactRational acc(0);
        for (unsigned long k = 0; k < i; ++k)
            acc += ExactRational(binomial(i + 1, static_cast<long>(k))) * t[k];
        return ExactRational(-acc / ExactRational(ExactInteger(i + 1)));
    });
}

ExactRational bernoulli_poly(unsigned long n, const ExactRational& x) {
    // Horner in x over descending k keeps the powers implicit.
    ExactRational acc(0);
    for (unsigned long k = 0; k <= n; ++k) {
        acc *= x;
        acc += ExactRational(binomial(n, static_cast<long>(k))) * bernoulli(k);
    }
    return acc;
}

void prefetch_sequences(unsigned long n_domb, unsigned long n_harmonic,
                        unsigned long n_bernoulli) {
    if (n_domb > 0)
        domb(n_domb);
    if (n_harmonic > 0) {
        harmonic(n_harmonic, 1);
        harmonic(n_harmonic, 2);
    }
    if (n_bernoulli > 0)
        bernoulli(n_bernoulli);
}

} // namespace dombv
