#pragma once

#include "indban/descent.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fixtures {

using namespace indban;

inline ExtPtr make_ext(const ValuedField& f, const std::vector<std::string>& poly,
                       const std::vector<std::vector<std::string>>& gens) {
    Poly p;
    for (const auto& c : poly) p.push_back(parse_rational(c));
    std::vector<Vec> g;
    for (const auto& v : gens) {
        Vec x;
        for (const auto& c : v) x.push_back(parse_rational(c));
        g.push_back(x);
    }
    return std::make_shared<const FieldExtension>(FieldExtension::build(f, p, g));
}

inline ExtPtr qsqrt2() { return make_ext(ValuedField::archimedean(), {"-2", "0", "1"}, {{"0", "-1"}}); }
inline ExtPtr qi() { return make_ext(ValuedField::archimedean(), {"1", "0", "1"}, {{"0", "-1"}}); }
inline ExtPtr zeta5() { return make_ext(ValuedField::archimedean(), {"1", "1", "1", "1", "1"}, {{"0", "0", "1", "0"}}); }
inline ExtPtr biquadratic() {
    return make_ext(ValuedField::archimedean(), {"1", "0", "-10", "0", "1"},
                    {{"0", "10", "0", "-1"}, {"0", "-10", "0", "1"}});
}
inline ExtPtr q5_quadratic() { return make_ext(ValuedField::padic(5), {"-2", "0", "1"}, {{"0", "-1"}}); }
inline ExtPtr q5_cubic() { return make_ext(ValuedField::padic(5), {"-1", "-2", "1", "1"}, {{"-2", "0", "1"}}); }
inline ExtPtr zeta7() {
    return make_ext(ValuedField::archimedean(), {"1", "1", "1", "1", "1", "1", "1"}, {{"0", "0", "0", "1", "0", "0"}});
}
inline ExtPtr zeta16() {
    return make_ext(ValuedField::archimedean(), {"1", "0", "0", "0", "0", "0", "0", "0", "1"},
                    {{"0", "0", "0", "1", "0", "0", "0", "0"}, {"0", "0", "0", "0", "0", "0", "0", "-1"}});
}
inline ExtPtr s3() {
    return make_ext(ValuedField::archimedean(), {"31", "36", "27", "-4", "9", "0", "1"},
                    {{"419/180", "403/180", "-1/45", "11/18", "1/180", "11/180"},
                     {"-91/45", "-137/45", "26/45", "-8/9", "1/45", "-4/45"}});
}

// The six fields of the exact descent suite.
inline std::vector<std::pair<std::string, ExtPtr>> descent_fields() {
    return {{"Q(sqrt2)", qsqrt2()}, {"Q(i)", qi()},           {"Q(zeta5)", zeta5()},
            {"biquadratic", biquadratic()}, {"Q5 quadratic", q5_quadratic()}, {"Q5 cubic", q5_cubic()}};
}

} // namespace fixtures
