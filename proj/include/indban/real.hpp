#pragma once

#include "indban/matrix.hpp"

#include <memory>
#include <string>
#include <vector>

namespace indban {

struct Interval {
    Q lo;
    Q hi;
    bool contains(const Q& x) const { return lo <= x && x <= hi; }
    Q width() const { return hi - lo; }
};

enum class Tri { True, False, Unknown };

// Comparison budget in bits used when no explicit budget is given.
unsigned default_precision();
void set_default_precision(unsigned bits);

// Immutable exact real number. Rational values and rational multiples of square roots are
// held in closed form; everything else is a lazy expression refined to any precision.
class Real {
public:
    struct Node;

    Real();
    Real(long v);
    Real(const Q& v);

    static Real sqrt(const Q& r);
    // The unique root of poly (coefficients low to high) in [lo, hi]; poly must change sign there.
    static Real root(std::vector<Q> poly, const Q& lo, const Q& hi);

    bool is_rational() const;
    const Q& rational() const;
    bool is_radical() const;

    Interval enclose(unsigned bits) const;
    double approx() const;
    std::string str() const;

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    friend Real operator-(const Real& a);
    friend Real max(const Real& a, const Real& b);
    friend Real min(const Real& a, const Real& b);
    friend Real abs(const Real& a);
    friend int compare(const Real& a, const Real& b, unsigned budget);
    friend Tri less_equal(const Real& a, const Real& b, unsigned budget);

    const Node* node() const { return node_.get(); }

private:
    explicit Real(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Sign of a - b; throws UndecidableComparison when the budget is exhausted.
int compare(const Real& a, const Real& b, unsigned budget = default_precision());
Tri less_equal(const Real& a, const Real& b, unsigned budget = default_precision());
bool operator<(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator==(const Real& a, const Real& b);

Real pow(const Real& a, unsigned n);
Real max_of(const std::vector<Real>& values);
Real sum_of(const std::vector<Real>& values);

} // namespace indban
