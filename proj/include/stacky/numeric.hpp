#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace stacky {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using RatVector = std::vector<Rat>;

// Builds p/q with any sign of q; the result is canonical (q > 0, lowest terms).
inline Rat make_rat(const Int& p, const Int& q) {
    Rat r(p);
    r /= Rat(q);
    return r;
}

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

// Canonical text form: "p" when integral, else "p/q" with q > 0.
inline std::string rat_to_string(const Rat& r) {
    if (is_integer(r)) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

// gcd of a vector's entries, 0 for the zero vector.
inline Int content(const std::vector<Int>& v) {
    Int g = 0;
    for (const Int& x : v) g = int_gcd(g, x);
    return g;
}

// Scales a rational vector to a primitive integer vector pointing the same way.
inline std::vector<Int> primitive_direction(const RatVector& v) {
    Int l = 1;
    for (const Rat& x : v) l = int_lcm(l, rat_den(x));
    std::vector<Int> out;
    out.reserve(v.size());
    for (const Rat& x : v) out.push_back(rat_num(x) * (l / rat_den(x)));
    Int g = content(out);
    if (g > 1)
        for (Int& x : out) x /= g;
    return out;
}

}  // namespace stacky
