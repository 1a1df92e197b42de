#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "szlab/character.hpp"
#include "szlab/int128.hpp"

namespace szlab {

/// A normalized Hecke eigenform: weight, level, nebentypus, root number and
/// the coefficient prefix a(1..n_max). Immutable once constructed; the
/// constructor enforces a(1) = 1, multiplicativity and the Hecke recursion
/// (throwing InvariantError naming the failing n or p). The Deligne bound is
/// checked too but only recorded, see `satisfies_deligne()`.
///
/// At primes p | N the local factor is taken to be 1 - a(p) p^{-s}, so
/// a(p^r) = a(p)^r there.
class Newform {
public:
    Newform(int weight, int level, DirichletCharacter nebentypus, cplx root_number,
            std::vector<cplx> coeffs, std::string label,
            std::optional<std::vector<Int128>> exact = std::nullopt);

    int weight() const noexcept { return weight_; }
    int level() const noexcept { return level_; }
    const DirichletCharacter& nebentypus() const noexcept { return nebentypus_; }
    cplx root_number() const noexcept { return root_number_; }
    int n_max() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::string& label() const noexcept { return label_; }

    /// a(n) for 1 <= n <= n_max; throws DomainError beyond the stored prefix.
    cplx a(int n) const;
    /// Coefficients indexed by n (entry 0 is zero).
    std::span<const cplx> coefficients() const noexcept { return coeffs_; }

    bool has_exact() const noexcept { return exact_.has_value(); }
    Int128 exact(int n) const;

    bool satisfies_deligne() const noexcept { return deligne_ok_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    /// Real coefficients, real nebentypus and epsilon = +-1.
    bool is_self_dual(double tol = 1e-12) const;

    bool operator==(const Newform& other) const;

private:
    int weight_;
    int level_;
    DirichletCharacter nebentypus_;
    cplx root_number_;
    std::vector<cplx> coeffs_;
    std::string label_;
    std::optional<std::vector<Int128>> exact_;
    bool deligne_ok_ = true;
    std::vector<std::string> warnings_;

    void validate();
};

/// Ramanujan Delta: weight 12, level 1, eps = 1. Coefficients of
/// q prod (1 - q^n)^24 by 24 multiplications with the pentagonal-number
/// series, in checked 128-bit integer arithmetic.
Newform delta_coefficients(int n_max);

/// Exact eta-product coefficients tau(1..n_max) (entry 0 unused).
std::vector<Int128> delta_exact(int n_max);

/// Completes a(1..n_max) from a(p) via the Hecke recursion at p not dividing
/// N (a(p^r) = a(p)^r at p | N) and multiplicativity. Throws DomainError
/// naming the first missing prime.
std::vector<cplx> hecke_extend(const std::map<int, cplx>& prime_coeffs, int weight, int level,
                               const DirichletCharacter& nebentypus, int n_max);

/// Exact variant for trivial nebentypus and integer a(p).
std::vector<Int128> hecke_extend_exact(const std::map<int, Int128>& prime_coeffs, int weight,
                                       int level, int n_max);

/// Reads the line-oriented newform text format; see README. Throws
/// ParseError (with line number) or InvariantError.
Newform load_newform(const std::filesystem::path& path);
Newform parse_newform(const std::string& text);

std::string format_newform(const Newform& f);
void save_newform(const Newform& f, const std::filesystem::path& path);

/// Conjugate coefficients, nebentypus and root number.
Newform dual(const Newform& f);

/// f twisted by a nontrivial character chi mod a prime q not dividing N:
/// a(n) chi(n), level N q^2, nebentypus xi chi^2 and root number
/// eps xi(q) chi(N) tau(chi)^2 / q.
Newform twist_newform(const Newform& f, const DirichletCharacter& chi);

struct DeligneEntry {
    int p;
    double abs_ap;
    double bound;
    bool strict;
};

/// (p, |a(p)|, 2 p^{(k-1)/2}, strict?) for primes p <= n_max, p not dividing N.
/// Strictness is decided in exact integer arithmetic when available.
std::vector<DeligneEntry> check_deligne(const Newform& f);

}  // namespace szlab
