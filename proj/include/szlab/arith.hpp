#pragma once

#include <cstdint>
#include <vector>

namespace szlab {

bool is_prime(std::int64_t n);

/// All primes p <= n.
std::vector<int> primes_up_to(int n);

/// Smallest prime factor for every 0 <= m <= n (spf[0] = spf[1] = 0).
std::vector<int> smallest_prime_factors(int n);

/// Smallest primitive root modulo the prime q.
int primitive_root(int q);

int divisor_count(std::int64_t n);

std::int64_t gcd(std::int64_t a, std::int64_t b);

/// Returns (p, e) if n = p^e with p prime and e >= 1, else (0, 0).
std::pair<int, int> prime_power(int n);

}  // namespace szlab
