#include "szlab/rational.hpp"

namespace szlab {

void RationalPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& v) {
    for (auto& x : c_) x *= v;
    trim();
    return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return RationalPoly(std::move(r));
}

RationalPoly RationalPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long long>(i);
    return RationalPoly(std::move(r));
}

RationalPoly binomial_poly(const Rational& shift, const Rational& sign, int j) {
    // prod_{i<j} (sign*s + shift - i) / j!
    RationalPoly r = RationalPoly::constant(1);
    BigInt fact = 1;
    for (int i = 0; i < j; ++i) {
        r = r * RationalPoly::linear(shift - i, sign);
        fact *= i + 1;
    }
    return r * Rational(1, fact);
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace szlab
