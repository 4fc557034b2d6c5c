#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "excoll/characters.hpp"
#include "excoll/equivariant.hpp"

namespace excoll {

/// O(twist) (x) rho_irrep.
struct EqLineBundle {
  long twist = 0;
  std::size_t irrep = 0;

  std::string label() const;
  auto operator<=>(const EqLineBundle&) const = default;
};

/// Integer vector over the basis [O(i) (x) rho_j], 0 <= i <= n, 0 <= j <= r.
class KClass {
 public:
  KClass() = default;
  KClass(std::size_t twists, std::size_t irreps)
      : twists_(twists), irreps_(irreps), coeffs_(twists * irreps, 0) {}
  static KClass zero(const EquivariantSetting& s);
  static KClass unit(const EquivariantSetting& s, std::size_t twist, std::size_t irrep);

  std::size_t twists() const { return twists_; }
  std::size_t irreps() const { return irreps_; }
  std::size_t rank() const { return coeffs_.size(); }
  long long& at(std::size_t twist, std::size_t irrep) { return coeffs_[twist * irreps_ + irrep]; }
  long long at(std::size_t twist, std::size_t irrep) const {
    return coeffs_[twist * irreps_ + irrep];
  }
  long long& operator[](std::size_t i) { return coeffs_[i]; }
  long long operator[](std::size_t i) const { return coeffs_[i]; }
  const std::vector<long long>& coeffs() const { return coeffs_; }

  KClass& operator+=(const KClass& o);
  KClass& operator-=(const KClass& o);
  friend KClass operator+(KClass a, const KClass& b) { return a += b; }
  friend KClass operator-(KClass a, const KClass& b) { return a -= b; }
  friend KClass operator*(long long s, KClass a);
  KClass operator-() const { return -1 * *this; }
  friend bool operator==(const KClass& a, const KClass& b) = default;

 private:
  std::size_t twists_ = 0;
  std::size_t irreps_ = 0;
  std::vector<long long> coeffs_;
};

/// Character of H^k(P^n, O(m)) as a G-module: Sym^m V^vee in degree 0 for
/// m >= 0, Sym^{-m-n-1} V (x) Lambda^{n+1} V in degree n for m <= -n-1, zero
/// otherwise.
CharacterVec ext_character(const EquivariantSetting& s, long m, long k);

/// dim Ext^k(L1, L2) = <ext_character(t2 - t1, k) * chi_sigma, chi_rho>.
long ext_dim_equivariant(const EquivariantSetting& s, const EqLineBundle& source,
                         const EqLineBundle& target, long k);

/// K-class of O(m) (x) chi reduced into the twist window 0..n with the Koszul
/// relation sum_k (-1)^k [Lambda^k V^vee (x) O(m - k)] = 0.
KClass koszul_reduce(const EquivariantSetting& s, long m, const CharacterVec& chi);
KClass koszul_reduce(const EquivariantSetting& s, long m, std::size_t irrep);

/// Euler pairing on basis classes extended bilinearly.
long long euler_pairing(const EquivariantSetting& s, const KClass& x, const KClass& y);
/// Euler pairing of two line bundles from their Ext dimensions.
long long euler_pairing(const EquivariantSetting& s, const EqLineBundle& a, const EqLineBundle& b);

}  // namespace excoll
