#include "dombv/padic.hpp"

#include <algorithm>
#include <cassert>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

namespace dombv {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
    // extended Euclid; Bezout coefficients stay below m, products need 128 bits
    std::int64_t t0 = 0, t1 = 1;
    std::uint64_t r0 = m, r1 = a % m;
    while (r1 != 0) {
        std::uint64_t q = r0 / r1;
        std::int64_t t2 = static_cast<std::int64_t>(
            static_cast<__int128>(t0) - static_cast<__int128>(q) * t1);
        t0 = t1; t1 = t2;
        std::uint64_t r2 = r0 % r1;
        r0 = r1; r1 = r2;
    }
    if (r0 != 1)
        throw std::domain_error("invmod: not invertible");
    return t0 < 0 ? static_cast<std::uint64_t>(t0 + static_cast<std::int64_t>(m))
                  : static_cast<std::uint64_t>(t0);
}

std::uint64_t pow_u64(std::uint64_t base, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i)
        r *= base;
    return r;
}

namespace {

constexpr std::uint64_t kPrecCap = (1ULL << 62);

int vp_u64(std::uint64_t n, std::uint64_t p) {
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::uint64_t mod_pk(const ExactInteger& v, std::uint64_t pk) {
    ExactInteger m = v % ExactInteger(pk);
    if (m < 0)
        m += ExactInteger(pk);
    return m.get_ui();
}

} // namespace

// ---------------------------------------------------------------------------
// PadicValue
// ---------------------------------------------------------------------------

PadicValue::PadicValue(std::uint64_t p, int aprec, std::uint64_t residue)
    : p_(p), aprec_(aprec), residue_(residue) {
    assert(aprec_ >= 1 && aprec_ <= max_precision(p_));
    assert(residue_ < pow_u64(p_, aprec_));
}

int PadicValue::max_precision(std::uint64_t p) {
    int a = 0;
    std::uint64_t m = 1;
    while (m < kPrecCap / p) {
        m *= p;
        ++a;
    }
    return a;
}

PadicValue PadicValue::zero(std::uint64_t p, int aprec) {
    return PadicValue(p, aprec, 0);
}

PadicValue PadicValue::one(std::uint64_t p, int aprec) {
    return PadicValue(p, aprec, 1);
}

PadicValue PadicValue::from_integer(long long v, std::uint64_t p, int aprec) {
    std::uint64_t pk = pow_u64(p, aprec);
    long long m = v % static_cast<long long>(pk);
    if (m < 0)
        m += static_cast<long long>(pk);
    return PadicValue(p, aprec, static_cast<std::uint64_t>(m));
}

PadicValue PadicValue::from_integer(const ExactInteger& v, std::uint64_t p, int aprec) {
    return PadicValue(p, aprec, mod_pk(v, pow_u64(p, aprec)));
}

PadicValue PadicValue::from_unit(std::uint64_t p, int valuation, std::uint64_t unit,
                                 int rel_prec) {
    int a = std::min(valuation + rel_prec, max_precision(p));
    if (a <= valuation) // the shift alone exhausts representable precision
        return PadicValue(p, max_precision(p), 0);
    std::uint64_t pk = pow_u64(p, a - valuation);
    return PadicValue(p, a, (unit % pk) * pow_u64(p, valuation));
}

int PadicValue::valuation() const {
    if (residue_ == 0)
        return aprec_;
    return vp_u64(residue_, p_);
}

std::uint64_t PadicValue::unit() const {
    if (residue_ == 0)
        return 0;
    return residue_ / pow_u64(p_, valuation());
}

PadicValue PadicValue::operator+(const PadicValue& o) const {
    assert(p_ == o.p_);
    int a = std::min(aprec_, o.aprec_);
    std::uint64_t pk = pow_u64(p_, a);
    return PadicValue(p_, a, (residue_ % pk + o.residue_ % pk) % pk);
}

PadicValue PadicValue::operator-() const {
    return PadicValue(p_, aprec_,
                      residue_ == 0 ? 0 : pow_u64(p_, aprec_) - residue_);
}

PadicValue PadicValue::operator-(const PadicValue& o) const {
    return *this + (-o);
}

PadicValue PadicValue::operator*(const PadicValue& o) const {
    assert(p_ == o.p_);
    // abs precision of a product: min over each factor's window shifted by
    // the other's valuation
    int a = std::min(aprec_ + o.valuation(), o.aprec_ + valuation());
    a = std::min(a, max_precision(p_));
    std::uint64_t pk = pow_u64(p_, a);
    return PadicValue(p_, a, mulmod(residue_ % pk, o.residue_ % pk, pk));
}

PadicValue PadicValue::operator/(const PadicValue& o) const {
    assert(p_ == o.p_);
    if (o.residue_ == 0)
        throw InsufficientPrecision("padic division by a value that is zero at its precision");
    int vd = o.valuation();
    if (residue_ == 0) {
        int a = aprec_ - vd;
        if (a < 1)
            throw InsufficientPrecision("padic division: no digits survive");
        return PadicValue(p_, a, 0);
    }
    int vn = valuation();
    if (vn < vd)
        throw NegativeValuation("padic division would give negative valuation");
    int rel = std::min(aprec_ - vn, o.aprec_ - vd);
    int a = std::min(vn - vd + rel, max_precision(p_));
    if (a < 1)
        throw InsufficientPrecision("padic division: no digits survive");
    std::uint64_t pr = pow_u64(p_, rel);
    std::uint64_t qu = mulmod(unit() % pr, invmod(o.unit() % pr, pr), pr);
    std::uint64_t pk = pow_u64(p_, a);
    return PadicValue(p_, a, mulmod(qu % pk, pow_u64(p_, vn - vd) % pk, pk));
}

PadicValue PadicValue::pow(std::uint64_t e) const {
    PadicValue r = PadicValue::one(p_, max_precision(p_));
    PadicValue b = *this;
    while (e) {
        if (e & 1)
            r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

PadicValue PadicValue::times_p_power(int e) const {
    if (e == 0)
        return *this;
    int a = std::min(aprec_ + e, max_precision(p_));
    std::uint64_t pk = pow_u64(p_, a);
    return PadicValue(p_, a, mulmod(residue_ % pk, pow_u64(p_, e) % pk, pk));
}

std::uint64_t PadicValue::residue_mod(int k) const {
    if (k > aprec_)
        throw InsufficientPrecision("residue_mod: value carries only p^" +
                                    std::to_string(aprec_) + ", asked for p^" +
                                    std::to_string(k));
    return residue_ % pow_u64(p_, k);
}

bool PadicValue::congruent(const PadicValue& o, int k) const {
    return residue_mod(k) == o.residue_mod(k);
}

// ---------------------------------------------------------------------------
// reduce_rational
// ---------------------------------------------------------------------------

PadicValue reduce_rational(const ExactRational& r, std::uint64_t p, int K) {
    if (r == 0)
        return PadicValue::zero(p, std::min(K, PadicValue::max_precision(p)));
    ExactInteger num = r.get_num();
    ExactInteger den = r.get_den();
    ExactInteger pz(p);
    ExactInteger tmp;
    auto vnum = mpz_remove(tmp.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t());
    num = tmp;
    auto vden = mpz_remove(tmp.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
    den = tmp;
    if (vden > vnum) {
        std::ostringstream os;
        os << "reduce_rational: " << r << " has valuation "
           << static_cast<long>(vnum) - static_cast<long>(vden) << " at p=" << p;
        throw NegativeValuation(os.str());
    }
    int v = static_cast<int>(vnum - vden);
    int maxa = PadicValue::max_precision(p);
    if (v >= maxa)
        return PadicValue::zero(p, maxa);
    int rel = std::min(K, maxa - v);
    std::uint64_t pk = pow_u64(p, rel);
    std::uint64_t u = mulmod(mod_pk(num, pk), invmod(mod_pk(den, pk), pk), pk);
    return PadicValue::from_unit(p, v, u, rel);
}

// ---------------------------------------------------------------------------
// FactorialTable
// ---------------------------------------------------------------------------

FactorialTable::FactorialTable(std::uint64_t p, int K, unsigned long n_max)
    : p_(p), K_(K), pk_(pow_u64(p, K)) {
    if (K < 1 || K > PadicValue::max_precision(p))
        throw std::invalid_argument("FactorialTable: unsupported precision");
    e_.resize(n_max + 1);
    fact_unit_.resize(n_max + 1);
    inv_fact_unit_.resize(n_max + 1);
    upart_.resize(n_max + 1);
    inv_upart_.resize(n_max + 1);
    vp_.resize(n_max + 1);

    e_[0] = 0;
    fact_unit_[0] = 1;
    upart_[0] = 1;
    vp_[0] = 0;
    for (unsigned long i = 1; i <= n_max; ++i) {
        std::uint64_t u = i;
        int v = 0;
        while (u % p_ == 0) {
            u /= p_;
            ++v;
        }
        vp_[i] = static_cast<std::uint8_t>(v);
        upart_[i] = u % pk_;
        e_[i] = e_[i - 1] + static_cast<unsigned long>(v);
        fact_unit_[i] = mulmod(fact_unit_[i - 1], upart_[i], pk_);
    }
    // one inversion, then unwind both inverse tables in a single backward pass
    inv_fact_unit_[n_max] = invmod(fact_unit_[n_max], pk_);
    for (unsigned long i = n_max; i >= 1; --i) {
        inv_fact_unit_[i - 1] = mulmod(inv_fact_unit_[i], upart_[i], pk_);
        inv_upart_[i] = mulmod(inv_fact_unit_[i], fact_unit_[i - 1], pk_);
    }
    inv_upart_[0] = 1;
}

FactoredFactorial FactorialTable::factored(unsigned long n) const {
    return FactoredFactorial{n, e_[n], fact_unit_[n]};
}

PadicValue FactorialTable::factorial(unsigned long n) const {
    return PadicValue::from_unit(p_, static_cast<int>(e_[n]), fact_unit_[n], K_);
}

PadicValue FactorialTable::binomial(unsigned long n, long k) const {
    if (k < 0 || static_cast<unsigned long>(k) > n)
        return PadicValue::zero(p_, K_);
    auto uk = static_cast<unsigned long>(k);
    int v = static_cast<int>(e_[n] - e_[uk] - e_[n - uk]);
    std::uint64_t u = mulmod(fact_unit_[n],
                             mulmod(inv_fact_unit_[uk], inv_fact_unit_[n - uk], pk_), pk_);
    return PadicValue::from_unit(p_, v, u, K_);
}

PadicValue binomial_mod(unsigned long n, long k, std::uint64_t p, int K) {
    if (k < 0 || static_cast<unsigned long>(k) > n)
        return PadicValue::zero(p, std::min(K, PadicValue::max_precision(p)));
    FactorialTable table(p, std::min(K, PadicValue::max_precision(p)), n);
    return table.binomial(n, k);
}

// ---------------------------------------------------------------------------
// fermat quotient / legendre
// ---------------------------------------------------------------------------

PadicValue fermat_quotient(long long a, std::uint64_t p, int K) {
    if (K + 1 > PadicValue::max_precision(p))
        throw std::invalid_argument("fermat_quotient: precision too large for 64-bit path");
    std::uint64_t pk1 = pow_u64(p, K + 1);
    long long am = a % static_cast<long long>(p);
    if (am < 0)
        am += static_cast<long long>(p);
    if (am == 0)
        throw NotCoprime("fermat_quotient: p divides a");
    long long ar = a % static_cast<long long>(pk1);
    if (ar < 0)
        ar += static_cast<long long>(pk1);
    std::uint64_t t = powmod(static_cast<std::uint64_t>(ar), p - 1, pk1);
    // a^{p-1} == 1 (mod p), so t - 1 is divisible by p
    return PadicValue(p, K, (t - 1) / p % pow_u64(p, K));
}

int legendre(long long a, std::uint64_t q) {
    long long am = a % static_cast<long long>(q);
    if (am < 0)
        am += static_cast<long long>(q);
    if (am == 0)
        return 0;
    std::uint64_t t = powmod(static_cast<std::uint64_t>(am), (q - 1) / 2, q);
    return t == 1 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Bernoulli residues
// ---------------------------------------------------------------------------

namespace {

std::mutex g_bern_mu;
std::map<std::uint64_t, std::vector<std::uint64_t>> g_bern_tables;
std::string g_cache_dir;

std::string bern_cache_path(std::uint64_t p) {
    return g_cache_dir + "/bernoulli_mod_" + std::to_string(p) + ".txt";
}

bool load_bern_cache(std::uint64_t p, std::vector<std::uint64_t>& out) {
    if (g_cache_dir.empty())
        return false;
    std::ifstream in(bern_cache_path(p));
    if (!in)
        return false;
    std::uint64_t fp = 0;
    std::size_t n = 0;
    if (!(in >> fp >> n) || fp != p)
        return false;
    out.resize(n);
    for (auto& v : out)
        if (!(in >> v) || v >= p)
            return false;
    return true;
}

void store_bern_cache(std::uint64_t p, const std::vector<std::uint64_t>& table) {
    if (g_cache_dir.empty())
        return;
    std::error_code ec;
    std::filesystem::create_directories(g_cache_dir, ec);
    std::ofstream out(bern_cache_path(p));
    if (!out)
        return;
    out << p << ' ' << table.size() << '\n';
    for (auto v : table)
        out << v << '\n';
}

// B_0..B_{p-2} mod p via the defining recurrence; rows of binomials are
// rebuilt incrementally, so the whole table is O(p^2) time and O(p) space.
const std::vector<std::uint64_t>& bern_table(std::uint64_t p) {
    std::lock_guard<std::mutex> lock(g_bern_mu);
    auto it = g_bern_tables.find(p);
    if (it != g_bern_tables.end())
        return it->second;

    std::vector<std::uint64_t> b;
    if (!load_bern_cache(p, b) || b.size() != static_cast<std::size_t>(p - 1)) {
        b.assign(p - 1, 0);
        b[0] = 1;
        std::vector<std::uint64_t> inv(p, 0);
        inv[1] = 1;
        for (std::uint64_t i = 2; i < p; ++i)
            inv[i] = mulmod(p - p / i, inv[p % i], p);
        for (std::uint64_t n = 2; n <= p - 2; ++n) {
            // B_{n-1} = -1/n * sum_{k<=n-2} binom(n,k) B_k
            std::uint64_t acc = 0, c = 1;
            for (std::uint64_t k = 0; k + 2 <= n; ++k) {
                acc = (acc + mulmod(c, b[k], p)) % p;
                c = mulmod(mulmod(c, (n - k) % p, p), inv[k + 1], p);
            }
            b[n - 1] = mulmod((p - acc) % p, inv[n], p);
        }
        store_bern_cache(p, b);
    }
    return g_bern_tables.emplace(p, std::move(b)).first->second;
}

} // namespace

void set_cache_dir(const std::string& dir) {
    std::lock_guard<std::mutex> lock(g_bern_mu);
    g_cache_dir = dir;
}

std::uint64_t bernoulli_mod(unsigned long m, std::uint64_t p) {
    if (m > p - 3)
        throw IndexOutOfRange("bernoulli_mod: index " + std::to_string(m) +
                              " exceeds p-3 for p=" + std::to_string(p));
    return bern_table(p)[m];
}

std::uint64_t bernoulli_poly_third(std::uint64_t p) {
    if (p <= 3)
        throw std::invalid_argument("bernoulli_poly_third: need p > 3");
    // B_{p-2}(1/3) = sum_k binom(p-2,k) B_k (1/3)^{p-2-k} mod p. The k = p-2
    // term vanishes (odd Bernoulli index), so the table up to p-3 suffices.
    const auto& b = bern_table(p);
    std::uint64_t inv3 = invmod(3 % p, p);
    std::uint64_t acc = 0, c = 1, n = p - 2;
    for (std::uint64_t k = 0; k + 3 <= p; ++k) {
        std::uint64_t term = mulmod(c, b[k], p);
        acc = (acc + mulmod(term, powmod(inv3, n - k, p), p)) % p;
        c = mulmod(mulmod(c, (n - k) % p, p), invmod(k + 1, p), p);
    }
    return acc;
}

} // namespace dombv
