#include "mow/algebra.hpp"

#include "mow/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mow {

CornerPolynomials builtin_polynomials() {
    CornerPolynomials p;
    p.delta.coeffs = {67417,       -1313928,    11200088,    -57160752,
                      199354208,   -509312064,  992782336,   -1514108928,
                      1834437632,  -1779354624, 1383417856,  -857112576,
                      416788480,   -154386432,  41189376,    -7077888,
                      589824};
    p.qx.coeffs = {81,   -648,  1008,    2304,     -2432,    38400,
                   -233472, -208896, 2187264, 196608, -8978432, 0,
                   21757952, 0, -29360128, 0, 16777216};
    p.qy.coeffs = {11350269,      -194938464,    1551687280,   -7610732416,
                   25783384192,   -64057278976,  120867188736, -176850272256,
                   202951155712,  -183392632832, 130119041024, -71751434240,
                   30152589312,   -9336520704,   2009071616,   -268435456,
                   16777216};
    return p;
}

long double eval_poly(const IntPolynomial& f, long double x) {
    long double acc = 0.0L;
    for (std::size_t i = f.coeffs.size(); i-- > 0;)
        acc = acc * x + static_cast<long double>(f.coeffs[i]);
    return acc;
}

long double relative_residual(const IntPolynomial& f, long double x) {
    std::int64_t norm = 1;
    for (std::int64_t c : f.coeffs)
        norm = std::max(norm, std::abs(c));
    return std::fabs(eval_poly(f, x)) / static_cast<long double>(norm);
}

namespace {

// Dense polynomials over F_p, coefficients ascending, p < 2^31 so products
// fit in int64 without overflow.
using FpPoly = std::vector<long long>;

void trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

int deg(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

long long pow_mod(long long b, long long e, long long p) {
    long long r = 1 % p;
    b %= p;
    while (e > 0) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

long long inv_mod(long long a, long long p) { return pow_mod(a, p - 2, p); }

FpPoly mul(const FpPoly& a, const FpPoly& b, long long p) {
    if (a.empty() || b.empty())
        return {};
    FpPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    trim(c);
    return c;
}

// Remainder of a by monic m.
FpPoly rem(FpPoly a, const FpPoly& m, long long p) {
    trim(a);
    while (deg(a) >= deg(m)) {
        long long q = a.back();
        int shift = deg(a) - deg(m);
        for (std::size_t i = 0; i < m.size(); ++i) {
            a[i + shift] = (a[i + shift] - q * m[i]) % p;
            if (a[i + shift] < 0)
                a[i + shift] += p;
        }
        trim(a);
    }
    return a;
}

FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, long long p) {
    return rem(mul(a, b, p), m, p);
}

void make_monic(FpPoly& a, long long p) {
    trim(a);
    if (a.empty() || a.back() == 1)
        return;
    long long s = inv_mod(a.back(), p);
    for (long long& c : a)
        c = c * s % p;
}

FpPoly gcd(FpPoly a, FpPoly b, long long p) {
    make_monic(a, p);
    make_monic(b, p);
    while (!b.empty()) {
        FpPoly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
        make_monic(b, p);
    }
    return a;
}

FpPoly derivative(const FpPoly& a, long long p) {
    FpPoly d;
    for (std::size_t i = 1; i < a.size(); ++i)
        d.push_back(a[i] * static_cast<long long>(i % p) % p);
    trim(d);
    return d;
}

FpPoly quotient(FpPoly a, const FpPoly& m, long long p) {
    trim(a);
    FpPoly q(std::max(deg(a) - deg(m) + 1, 0), 0);
    while (deg(a) >= deg(m)) {
        long long c = a.back();
        int shift = deg(a) - deg(m);
        q[shift] = c;
        for (std::size_t i = 0; i < m.size(); ++i) {
            a[i + shift] = (a[i + shift] - c * m[i]) % p;
            if (a[i + shift] < 0)
                a[i + shift] += p;
        }
        trim(a);
    }
    return q;
}

// x^p modulo monic m, by square and multiply.
FpPoly frobenius(const FpPoly& h, long long p, const FpPoly& m) {
    FpPoly r{1};
    FpPoly b = h;
    long long e = p;
    while (e > 0) {
        if (e & 1)
            r = mulmod(r, b, m, p);
        b = mulmod(b, b, m, p);
        e >>= 1;
    }
    return r;
}

} // namespace

ModFactorization factor_degrees_mod_p(const IntPolynomial& f, long long p) {
    if (p < 2 || p >= (1LL << 31))
        fail(errc::bad_prime, "modulus out of range");
    ModFactorization out;
    out.prime = p;

    const int n = f.degree();
    if (n + 1 > 65)
        fail(errc::degenerate_input, "polynomial degree above 64");
    if (f.coeffs.empty() || f.coeffs[n] % p == 0)
        fail(errc::bad_prime, "prime divides the leading coefficient");

    FpPoly fp(n + 1);
    for (int i = 0; i <= n; ++i)
        fp[i] = ((f.coeffs[i] % p) + p) % p;
    make_monic(fp, p);

    if (deg(fp) <= 0) {
        out.squarefree = true;
        return out;
    }

    FpPoly d = derivative(fp, p);
    FpPoly g = gcd(fp, d, p);
    if (deg(g) != 0) {
        out.squarefree = false;
        return out;
    }
    out.squarefree = true;

    FpPoly rest = fp;
    FpPoly h = rem(FpPoly{0, 1}, rest, p); // x mod f
    for (int dd = 1; 2 * dd <= deg(rest); ++dd) {
        h = frobenius(h, p, rest); // x^(p^dd) mod rest
        FpPoly diff = h;
        if (diff.size() < 2)
            diff.resize(2, 0);
        diff[1] = (diff[1] - 1 + p) % p;
        trim(diff);
        FpPoly gd = gcd(rest, diff, p);
        if (deg(gd) > 0) {
            for (int k = 0; k < deg(gd) / dd; ++k)
                out.factor_degrees.push_back(dd);
            rest = quotient(rest, gd, p);
            make_monic(rest, p);
            if (deg(rest) == 0)
                break;
            h = rem(h, rest, p);
        }
    }
    if (deg(rest) > 0)
        out.factor_degrees.push_back(deg(rest));
    std::sort(out.factor_degrees.begin(), out.factor_degrees.end());
    return out;
}

Certificate certify_symmetric_group(const IntPolynomial& f,
                                    const std::vector<long long>& primes) {
    Certificate c;
    c.n = f.degree();
    if (c.n <= 2 || c.n % 2 != 0) {
        c.reason = "cycle-pattern argument needs even degree above 2";
        return c;
    }
    for (long long p : primes) {
        ModFactorization mf = factor_degrees_mod_p(f, p);
        if (mf.squarefree) {
            const auto& d = mf.factor_degrees;
            auto has = [&](int k) { return std::find(d.begin(), d.end(), k) != d.end(); };
            if (d.size() == 1 && d[0] == c.n)
                c.has_full_cycle = true;
            if (has(c.n - 1))
                c.has_n_minus_1_cycle = true;
            if (has(2) && has(c.n - 3))
                c.has_two_plus_n_minus_3 = true;
        }
        c.rows.push_back(std::move(mf));
    }
    c.certified = c.has_full_cycle && c.has_n_minus_1_cycle && c.has_two_plus_n_minus_3;
    if (!c.certified) {
        std::ostringstream os;
        os << "missing patterns:";
        if (!c.has_full_cycle)
            os << " " << c.n << "-cycle";
        if (!c.has_n_minus_1_cycle)
            os << " " << c.n - 1 << "-cycle";
        if (!c.has_two_plus_n_minus_3)
            os << " 2+" << c.n - 3;
        c.reason = os.str();
    }
    return c;
}

std::string certificate_table(const Certificate& c) {
    std::ostringstream os;
    os << "prime  squarefree  factor degrees       pattern\n";
    for (const ModFactorization& mf : c.rows) {
        std::ostringstream ds;
        for (std::size_t i = 0; i < mf.factor_degrees.size(); ++i)
            ds << (i ? "+" : "") << mf.factor_degrees[i];
        std::string pattern = "-";
        if (mf.squarefree) {
            const auto& d = mf.factor_degrees;
            auto has = [&](int k) { return std::find(d.begin(), d.end(), k) != d.end(); };
            if (d.size() == 1 && d[0] == c.n)
                pattern = std::to_string(c.n) + "-cycle";
            else if (has(c.n - 1))
                pattern = std::to_string(c.n - 1) + "-cycle";
            else if (has(2) && has(c.n - 3))
                pattern = "2+" + std::to_string(c.n - 3);
        }
        char line[128];
        std::snprintf(line, sizeof line, "%-6lld %-11s %-20s %s\n", mf.prime,
                      mf.squarefree ? "yes" : "no", ds.str().c_str(), pattern.c_str());
        os << line;
    }
    if (c.certified)
        os << "certified: Gal = S_" << c.n << " (not solvable by radicals)\n";
    else
        os << "not certified: " << c.reason << "\n";
    return os.str();
}

} // namespace mow
