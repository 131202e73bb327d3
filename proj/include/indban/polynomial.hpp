#pragma once

#include "indban/real.hpp"

#include <string>
#include <utility>
#include <vector>

namespace indban {

// Rational polynomial, coefficients from the constant term upward, no trailing zeros.
using Poly = std::vector<Q>;

Poly poly_trim(Poly p);
int poly_degree(const Poly& p);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly poly_mod(const Poly& a, const Poly& b);
Poly poly_monic(const Poly& p);
Poly poly_gcd(const Poly& a, const Poly& b);
Poly poly_derivative(const Poly& p);
Poly poly_squarefree(const Poly& p);
Q poly_eval(const Poly& p, const Q& x);
// Scales to a primitive integer polynomial with positive leading coefficient.
std::vector<mpz_class> poly_primitive(const Poly& p);
std::string poly_str(const Poly& p, const std::string& var = "x");

std::vector<Q> rational_roots(const Poly& p);

// Irreducibility over the rationals for degrees up to 8.
struct IrreducibilityResult {
    bool irreducible = false;
    std::string method;
    Poly factor; // a proper factor when reducible
};
IrreducibilityResult test_irreducible(const Poly& p);

// f must have p-integral coefficients and a unit leading coefficient mod p.
bool irreducible_mod_p(const Poly& f, unsigned long p);

// Number of distinct real roots of a squarefree polynomial in (a, b].
int sturm_count(const Poly& f, const Q& a, const Q& b);
// Disjoint rational isolating intervals of the real roots, in increasing order.
std::vector<std::pair<Q, Q>> isolate_real_roots(const Poly& f);

// The archimedean embedding of the primitive element used by extension norms:
// the largest real root, else the root with largest real part and positive imaginary part.
struct Embedding {
    bool real = false;
    double re = 0, im = 0;
    Real modulus; // exact |alpha|
    std::string description;
};
Embedding choose_embedding(const Poly& f);

} // namespace indban
