#include "zerostrip/characters.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "zerostrip/errors.hpp"
#include "zerostrip/primes.hpp"

namespace zerostrip {

namespace {

uint64_t multiplicative_order(uint64_t a, uint64_t m, uint64_t group_order) {
    uint64_t ord = group_order;
    for (auto [p, k] : factorize(group_order)) {
        (void)k;
        while (ord % p == 0 && pow_mod(a, ord / p, m) == 1) ord /= p;
    }
    return ord;
}

uint64_t primitive_root_mod_p(uint64_t p) {
    if (p == 2) return 1;
    uint64_t phi = p - 1;
    auto fac = factorize(phi);
    for (uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [f, k] : fac) {
            (void)k;
            if (pow_mod(g, phi / f, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    return 0;  // unreachable for prime p
}

std::vector<int64_t> dlog_table(uint64_t generator, uint64_t pp, uint64_t order) {
    std::vector<int64_t> t(pp, -1);
    uint64_t x = 1 % pp;
    for (uint64_t k = 0; k < order; ++k) {
        t[x] = static_cast<int64_t>(k);
        x = (x * generator) % pp;
    }
    return t;
}

std::map<uint64_t, std::shared_ptr<const UnitGroup>> g_group_cache;
std::mutex g_group_mutex;

}  // namespace

std::shared_ptr<const UnitGroup> UnitGroup::get(uint64_t q) {
    if (q < 1) throw ValidationError("character modulus must be >= 1");
    std::lock_guard<std::mutex> lock(g_group_mutex);
    auto it = g_group_cache.find(q);
    if (it != g_group_cache.end()) return it->second;

    auto g = std::make_shared<UnitGroup>();
    g->q = q;
    g->phi = euler_phi(q);
    for (auto [p, k] : factorize(q)) {
        uint64_t pp = 1;
        for (int i = 0; i < k; ++i) pp *= p;
        if (p == 2) {
            if (k == 1) continue;  // (Z/2)^x is trivial
            if (k == 2) {
                CyclicFactor f{pp, 3 % pp, 2, dlog_table(3 % pp, pp, 2)};
                g->factors.push_back(std::move(f));
            } else {
                // (Z/2^k)^x = <-1> x <5>
                CyclicFactor f1{pp, pp - 1, 2, dlog_table(pp - 1, pp, 2)};
                uint64_t ord5 = pp / 4;
                CyclicFactor f2{pp, 5, ord5, dlog_table(5, pp, ord5)};
                // Mixed dlog: decompose n = (-1)^a 5^b. Rebuild tables jointly.
                f1.dlog.assign(pp, -1);
                f2.dlog.assign(pp, -1);
                for (uint64_t a = 0; a < 2; ++a) {
                    for (uint64_t b = 0; b < ord5; ++b) {
                        uint64_t n = (pow_mod(pp - 1, a, pp) * pow_mod(5, b, pp)) % pp;
                        f1.dlog[n] = static_cast<int64_t>(a);
                        f2.dlog[n] = static_cast<int64_t>(b);
                    }
                }
                g->factors.push_back(std::move(f1));
                g->factors.push_back(std::move(f2));
            }
        } else {
            uint64_t root = primitive_root_mod_p(p);
            if (k > 1 && pow_mod(root, p - 1, p * p) == 1) root += p;
            uint64_t order = euler_phi(pp);
            CyclicFactor f{pp, root % pp, order, dlog_table(root % pp, pp, order)};
            g->factors.push_back(std::move(f));
        }
    }
    g_group_cache[q] = g;
    return g;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const UnitGroup> group,
                                       std::vector<uint64_t> exponents)
    : group_(std::move(group)), exps_(std::move(exponents)) {
    if (exps_.size() != group_->factors.size())
        throw ValidationError("character exponent tuple has wrong arity");
    build_tables();
}

void DirichletCharacter::build_tables() {
    // order = lcm_i d_i / gcd(d_i, k_i)
    order_ = 1;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        uint64_t d = group_->factors[i].order;
        uint64_t g = gcd_u64(d, exps_[i] % d);
        order_ = lcm_u64(order_, d / (g == 0 ? d : g));
    }

    const uint64_t q = group_->q;
    expo_table_.assign(std::max<uint64_t>(q, 1), -1);
    if (q == 1) {
        expo_table_[0] = 0;
    } else {
        for (uint64_t res = 0; res < q; ++res) {
            if (gcd_u64(res, q) != 1) continue;
            // k(n) = sum_i ((k_i * order_) / d_i) * dlog_i(n)  mod order_.
            // (k_i * order_)/d_i is an exact integer: d_i/gcd(d_i,k_i) | order_.
            unsigned __int128 total = 0;
            for (std::size_t i = 0; i < exps_.size(); ++i) {
                const auto& f = group_->factors[i];
                int64_t dl = f.dlog[res % f.prime_power];
                unsigned __int128 num =
                    static_cast<unsigned __int128>(exps_[i] % f.order) * order_;
                uint64_t scaled = static_cast<uint64_t>(num / f.order) % order_;
                total += static_cast<unsigned __int128>(scaled) * static_cast<uint64_t>(dl);
            }
            expo_table_[res] = static_cast<int64_t>(total % order_);
        }
    }

    // conductor: smallest d | q with chi(n) = 1 whenever n = 1 (mod d), gcd(n, q) = 1
    conductor_ = q;
    if (q >= 1) {
        std::vector<uint64_t> divisors;
        for (uint64_t d = 1; d <= q; ++d)
            if (q % d == 0) divisors.push_back(d);
        for (uint64_t d : divisors) {
            bool ok = true;
            for (uint64_t n = 0; n < q && ok; ++n) {
                if (expo_table_[n] < 0) continue;
                if (n % d == 1 % d && expo_table_[n] != 0) ok = false;
            }
            if (ok) {
                conductor_ = d;
                break;
            }
        }
    }
}

std::optional<uint64_t> DirichletCharacter::value_exponent(int64_t n) const {
    uint64_t q = group_->q;
    if (q == 1) return 0;
    int64_t r = n % static_cast<int64_t>(q);
    if (r < 0) r += static_cast<int64_t>(q);
    int64_t e = expo_table_[static_cast<uint64_t>(r)];
    if (e < 0) return std::nullopt;
    return static_cast<uint64_t>(e);
}

cplx DirichletCharacter::value(int64_t n) const {
    auto e = value_exponent(n);
    if (!e) return {0.0, 0.0};
    double ang = 2.0 * std::numbers::pi * static_cast<double>(*e) / static_cast<double>(order_);
    return {std::cos(ang), std::sin(ang)};
}

bool DirichletCharacter::is_principal() const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] % group_->factors[i].order != 0) return false;
    return true;
}

int DirichletCharacter::parity() const {
    if (group_->q <= 2) return 1;
    auto e = value_exponent(static_cast<int64_t>(group_->q) - 1);
    // chi(-1) = +-1, so the exponent is 0 or order/2
    return (e && *e != 0) ? -1 : 1;
}

DirichletCharacter DirichletCharacter::conjugate() const {
    std::vector<uint64_t> e(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        uint64_t d = group_->factors[i].order;
        e[i] = (d - exps_[i] % d) % d;
    }
    return DirichletCharacter(group_, std::move(e));
}

DirichletCharacter DirichletCharacter::product(const DirichletCharacter& other) const {
    if (group_->q != other.group_->q) throw ValidationError("character product: modulus mismatch");
    std::vector<uint64_t> e(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i)
        e[i] = (exps_[i] + other.exps_[i]) % group_->factors[i].order;
    return DirichletCharacter(group_, std::move(e));
}

bool DirichletCharacter::same_character(const DirichletCharacter& other) const {
    if (group_->q != other.group_->q) return false;
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] % group_->factors[i].order != other.exps_[i] % group_->factors[i].order)
            return false;
    return true;
}

uint64_t DirichletCharacter::orthogonality_sum_exact(const DirichletCharacter& chi,
                                                     const DirichletCharacter& psi) {
    if (chi.modulus() != psi.modulus())
        throw ValidationError("orthogonality: modulus mismatch");
    DirichletCharacter theta = chi.product(psi.conjugate());
    return theta.is_principal() ? euler_phi(chi.modulus()) : 0;
}

std::string DirichletCharacter::label() const {
    std::ostringstream os;
    os << "chi[" << group_->q << ";";
    for (std::size_t i = 0; i < exps_.size(); ++i) os << (i ? "," : "") << exps_[i];
    os << "]";
    return os.str();
}

std::vector<DirichletCharacter> build_character_group(uint64_t q) {
    auto group = UnitGroup::get(q);
    std::vector<DirichletCharacter> chars;
    std::vector<uint64_t> tuple(group->factors.size(), 0);
    // lexicographic enumeration over CRT exponent tuples
    for (;;) {
        chars.emplace_back(group, tuple);
        std::size_t i = tuple.size();
        while (i > 0) {
            --i;
            if (++tuple[i] < group->factors[i].order) break;
            tuple[i] = 0;
            if (i == 0) return chars;
        }
        if (tuple.empty()) return chars;  // q = 1 or 2: single character
    }
}

cplx character_value(const DirichletCharacter& chi, int64_t n) { return chi.value(n); }

cplx gauss_sum(const DirichletCharacter& chi) {
    const uint64_t q = chi.modulus();
    cplx sum{0.0, 0.0};
    for (uint64_t n = 1; n <= q; ++n) {
        cplx v = chi.value(static_cast<int64_t>(n));
        if (v == cplx{0.0, 0.0}) continue;
        double ang = 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(q);
        sum += v * cplx{std::cos(ang), std::sin(ang)};
    }
    return sum;
}

RootNumber root_number(const DirichletCharacter& chi) {
    if (!chi.is_primitive())
        throw NonPrimitiveError("root_number: conductor " + std::to_string(chi.conductor()) +
                                " is a proper divisor of " + std::to_string(chi.modulus()));
    RootNumber rn;
    rn.gauss_sum = gauss_sum(chi);
    rn.a = (1 - chi.parity()) / 2;
    cplx denom = (rn.a == 1 ? cplx{0.0, 1.0} : cplx{1.0, 0.0}) *
                 std::sqrt(static_cast<double>(chi.modulus()));
    rn.omega = rn.gauss_sum / denom;
    return rn;
}

DirichletCharacter find_character(uint64_t q, const std::vector<CharacterConstraint>& constraints,
                                  std::optional<std::size_t> index, bool primitive_only) {
    auto chars = build_character_group(q);
    std::vector<DirichletCharacter> hits;
    for (std::size_t i = 0; i < chars.size(); ++i) {
        if (index && *index != i) continue;
        if (primitive_only && !chars[i].is_primitive()) continue;
        bool ok = true;
        for (const auto& c : constraints) {
            if (std::abs(chars[i].value(c.at) - c.value) > 1e-9) {
                ok = false;
                break;
            }
        }
        if (ok) hits.push_back(chars[i]);
    }
    if (hits.size() != 1) {
        std::ostringstream os;
        os << "character lookup mod " << q << " matched " << hits.size()
           << " characters (need exactly 1)";
        throw CharacterLookupError(os.str());
    }
    return hits[0];
}

std::vector<DirichletCharacter> same_parity_primitive_set(uint64_t q) {
    auto chars = build_character_group(q);
    std::vector<DirichletCharacter> even, odd;
    for (const auto& c : chars) {
        if (!c.is_primitive()) continue;
        (c.parity() > 0 ? even : odd).push_back(c);
    }
    return even.size() >= odd.size() ? even : odd;
}

}  // namespace zerostrip
