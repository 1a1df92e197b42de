#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace szlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense polynomial over Q, coefficient of s^i at index i.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    static RationalPoly constant(const Rational& v) { return RationalPoly({v}); }
    /// a + b s
    static RationalPoly linear(const Rational& a, const Rational& b) { return RationalPoly({a, b}); }

    const std::vector<Rational>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

    RationalPoly& operator+=(const RationalPoly& o);
    RationalPoly& operator-=(const RationalPoly& o);
    RationalPoly& operator*=(const Rational& v);
    friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
    friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
    friend RationalPoly operator*(RationalPoly a, const Rational& v) { return a *= v; }
    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
    bool operator==(const RationalPoly& o) const { return c_ == o.c_; }

    /// d/ds
    RationalPoly derivative() const;

    template <class T>
    T evaluate(const T& s) const {
        T acc = T(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + T(static_cast<double>(*it));
        return acc;
    }

private:
    std::vector<Rational> c_;
    void trim();
};

/// binom(s + shift, j) as a polynomial in s.
RationalPoly binomial_poly(const Rational& shift, const Rational& sign, int j);

BigInt binomial(int n, int k);

}  // namespace szlab
