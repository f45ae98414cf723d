#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace zerostrip {

// Sieve of Eratosthenes, grown on demand. The returned snapshot is immutable,
// so holding it across later grow calls is safe.
class PrimeSieve {
public:
    // Primes p <= limit (possibly more), ascending.
    static std::shared_ptr<const std::vector<uint64_t>> primes(uint64_t limit);

    // First n primes.
    static std::vector<uint64_t> first(std::size_t n);
};

uint64_t gcd_u64(uint64_t a, uint64_t b);
uint64_t lcm_u64(uint64_t a, uint64_t b);

// a^e mod m, m < 2^32
uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t m);

// Euler phi by trial division (q is small everywhere we use it).
uint64_t euler_phi(uint64_t q);

// Prime factorization (p, multiplicity), ascending p.
std::vector<std::pair<uint64_t, int>> factorize(uint64_t n);

bool is_prime_u64(uint64_t n);

}  // namespace zerostrip
