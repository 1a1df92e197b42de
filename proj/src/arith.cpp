#include "szlab/arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "szlab/common.hpp"

namespace szlab {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<int> smallest_prime_factors(int n) {
    std::vector<int> spf(static_cast<std::size_t>(std::max(n, 1)) + 1, 0);
    for (int i = 2; i <= n; ++i) {
        if (spf[i] != 0) continue;
        for (long long j = i; j <= n; j += i)
            if (spf[j] == 0) spf[j] = i;
    }
    return spf;
}

std::vector<int> primes_up_to(int n) {
    std::vector<int> out;
    if (n < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    for (int i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (long long j = static_cast<long long>(i) * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

int primitive_root(int q) {
    if (!is_prime(q)) throw DomainError("primitive_root: modulus must be prime");
    if (q == 2) return 1;
    std::vector<int> factors;
    int m = q - 1;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        factors.push_back(p);
        while (m % p == 0) m /= p;
    }
    if (m > 1) factors.push_back(m);
    auto powmod = [q](long long b, long long e) {
        long long r = 1;
        b %= q;
        while (e) {
            if (e & 1) r = r * b % q;
            b = b * b % q;
            e >>= 1;
        }
        return r;
    };
    for (int g = 2; g < q; ++g) {
        bool ok = true;
        for (int p : factors)
            if (powmod(g, (q - 1) / p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw DomainError("primitive_root: none found");
}

int divisor_count(std::int64_t n) {
    int count = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        count *= e + 1;
    }
    if (n > 1) count *= 2;
    return count;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::pair<int, int> prime_power(int n) {
    if (n < 2) return {0, 0};
    int p = 0;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            p = d;
            break;
        }
    if (p == 0) return {n, 1};
    int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return n == 1 ? std::pair{p, e} : std::pair{0, 0};
}

}  // namespace szlab
