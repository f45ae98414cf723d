#include "zerostrip/primes.hpp"

#include <mutex>

namespace zerostrip {

namespace {
std::mutex g_sieve_mutex;
std::shared_ptr<const std::vector<uint64_t>> g_primes;
uint64_t g_sieved_to = 0;

void grow_sieve(uint64_t limit) {
    if (limit < 64) limit = 64;
    std::vector<bool> comp(limit + 1, false);
    auto out = std::make_shared<std::vector<uint64_t>>();
    for (uint64_t i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            out->push_back(i);
            for (uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
        }
    }
    g_primes = std::move(out);
    g_sieved_to = limit;
}
}  // namespace

std::shared_ptr<const std::vector<uint64_t>> PrimeSieve::primes(uint64_t limit) {
    std::lock_guard<std::mutex> lock(g_sieve_mutex);
    if (!g_primes || limit > g_sieved_to) grow_sieve(limit + limit / 4);
    return g_primes;
}

std::vector<uint64_t> PrimeSieve::first(std::size_t n) {
    uint64_t limit = 64;
    for (;;) {
        auto ps = primes(limit);
        if (ps->size() >= n)
            return std::vector<uint64_t>(ps->begin(), ps->begin() + static_cast<long>(n));
        limit *= 2;
    }
}

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

uint64_t lcm_u64(uint64_t a, uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_u64(a, b) * b;
}

uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = (r * a) % m;
        a = (a * a) % m;
        e >>= 1;
    }
    return r;
}

uint64_t euler_phi(uint64_t q) {
    uint64_t result = q;
    for (auto [p, k] : factorize(q)) {
        (void)k;
        result -= result / p;
    }
    return result;
}

std::vector<std::pair<uint64_t, int>> factorize(uint64_t n) {
    std::vector<std::pair<uint64_t, int>> f;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int k = 0;
            while (n % p == 0) {
                n /= p;
                ++k;
            }
            f.emplace_back(p, k);
        }
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

}  // namespace zerostrip
