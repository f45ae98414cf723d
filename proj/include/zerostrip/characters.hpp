#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace zerostrip {

using cplx = std::complex<double>;

// One cyclic factor of (Z/q)^x under the CRT decomposition.
struct CyclicFactor {
    uint64_t prime_power;          // p^e
    uint64_t generator;            // generator of this factor, as residue mod p^e
    uint64_t order;                // size of the factor
    std::vector<int64_t> dlog;     // dlog[r] for r in [0, p^e), -1 on non-units
};

struct UnitGroup {
    uint64_t q = 1;
    uint64_t phi = 1;
    std::vector<CyclicFactor> factors;

    static std::shared_ptr<const UnitGroup> get(uint64_t q);
};

// Dirichlet character mod q. Values are roots of unity stored as integer
// exponents k(n) with chi(n) = e^{2 pi i k(n)/order}, so products and
// orthogonality checks stay in exact integer arithmetic.
class DirichletCharacter {
public:
    DirichletCharacter() = default;
    DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<uint64_t> exponents);

    uint64_t modulus() const { return group_->q; }
    uint64_t order() const { return order_; }
    const std::vector<uint64_t>& crt_exponents() const { return exps_; }

    // chi(n): root of unity on units, 0 otherwise; periodic mod q.
    cplx value(int64_t n) const;

    // Exponent k(n) with chi(n) = e^{2 pi i k(n)/order}; nullopt off units.
    std::optional<uint64_t> value_exponent(int64_t n) const;

    bool is_principal() const;
    int parity() const;  // chi(-1), as +1 or -1
    uint64_t conductor() const { return conductor_; }
    bool is_primitive() const { return conductor_ == group_->q; }

    DirichletCharacter conjugate() const;
    DirichletCharacter product(const DirichletCharacter& other) const;

    bool same_character(const DirichletCharacter& other) const;

    // Exact orthogonality: sum over residues of chi(n) * conj(psi(n)),
    // which is phi(q) when chi == psi and 0 otherwise. Integer logic only.
    static uint64_t orthogonality_sum_exact(const DirichletCharacter& chi,
                                            const DirichletCharacter& psi);

    std::string label() const;  // e.g. "chi_35_7" by canonical index

private:
    std::shared_ptr<const UnitGroup> group_;
    std::vector<uint64_t> exps_;
    uint64_t order_ = 1;
    uint64_t conductor_ = 1;
    std::vector<int64_t> expo_table_;  // k(n) per residue, -1 off units

    void build_tables();
};

struct RootNumber {
    cplx omega;      // unit-modulus functional equation constant
    cplx gauss_sum;  // tau(chi)
    int a = 0;       // parity exponent, (1 - chi(-1))/2
};

// All phi(q) characters mod q in canonical (lexicographic CRT exponent) order.
std::vector<DirichletCharacter> build_character_group(uint64_t q);

cplx character_value(const DirichletCharacter& chi, int64_t n);

// tau(chi) = sum_{n=1..q} chi(n) e^{2 pi i n / q}
cplx gauss_sum(const DirichletCharacter& chi);

// omega = tau(chi) / (i^a sqrt(q)); requires chi primitive.
RootNumber root_number(const DirichletCharacter& chi);

// Constraint resolver for the CLI mini-language: finds the unique character
// matching all (n, value) constraints. Throws CharacterLookupError unless
// exactly one matches.
struct CharacterConstraint {
    int64_t at = 0;
    cplx value;
};
DirichletCharacter find_character(uint64_t q, const std::vector<CharacterConstraint>& constraints,
                                  std::optional<std::size_t> index = std::nullopt,
                                  bool primitive_only = false);

// Same-parity set of primitive characters mod q (the majority parity).
std::vector<DirichletCharacter> same_parity_primitive_set(uint64_t q);

}  // namespace zerostrip
