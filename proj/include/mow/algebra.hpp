#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mow {

// Integer polynomial with coefficients in ascending degree order. The
// machinery here only needs magnitudes up to ~2^38, so plain 64-bit
// coefficients leave ample headroom.
struct IntPolynomial {
    std::vector<std::int64_t> coeffs;

    int degree() const {
        int d = static_cast<int>(coeffs.size()) - 1;
        while (d > 0 && coeffs[d] == 0)
            --d;
        return d;
    }
};

// The three degree-16 polynomials whose roots pin down the corner path:
// `delta` for the diagonal offset, `qx`/`qy` for the free via point.
struct CornerPolynomials {
    IntPolynomial delta;
    IntPolynomial qx;
    IntPolynomial qy;
};

CornerPolynomials builtin_polynomials();

// Horner evaluation in `long double` (at least 80-bit on every platform we
// build for).
long double eval_poly(const IntPolynomial& f, long double x);

// |f(x)| normalized by the max-norm of the coefficients.
long double relative_residual(const IntPolynomial& f, long double x);

struct ModFactorization {
    long long prime = 0;
    // Degree of each irreducible factor, with multiplicity, ascending.
    // Left empty when the reduction is not squarefree.
    std::vector<int> factor_degrees;
    bool squarefree = false;
};

// Distinct-degree factorization of f mod p. Only the factor degrees are
// computed; a non-squarefree reduction is reported in-band via the
// `squarefree` flag. Throws errc::bad_prime when p divides the leading
// coefficient (the reduction would drop degree).
ModFactorization factor_degrees_mod_p(const IntPolynomial& f, long long p);

// Evidence that Gal(f) is the full symmetric group S_n: over squarefree
// primes, witness an n-cycle (irreducible), an (n-1)-cycle (factor of
// degree n-1) and a permutation of type 2+(n-3) (factors of degrees 2 and
// n-3). For even n > 2 these three patterns force S_n, which is not
// solvable for n >= 5.
struct Certificate {
    int n = 0;
    bool certified = false;
    std::string reason; // set when certified is false
    std::vector<ModFactorization> rows;
    bool has_full_cycle = false;
    bool has_n_minus_1_cycle = false;
    bool has_two_plus_n_minus_3 = false;
};

Certificate certify_symmetric_group(const IntPolynomial& f,
                                    const std::vector<long long>& primes);

// Plain-text table: one row per prime with squarefree flag, factor degrees
// and the pattern it witnesses, followed by the verdict line.
std::string certificate_table(const Certificate& c);

} // namespace mow
