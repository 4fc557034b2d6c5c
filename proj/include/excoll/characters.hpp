#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "excoll/matrix_group.hpp"

namespace excoll {

/// Class function, one value per conjugacy class in the group's class order.
struct CharacterVec {
  std::vector<CycNum> values;

  CycNum degree() const { return values.front(); }
  std::size_t size() const { return values.size(); }
  bool is_zero() const;

  CharacterVec conjugate() const;
  friend CharacterVec operator+(const CharacterVec& a, const CharacterVec& b);
  friend CharacterVec operator-(const CharacterVec& a, const CharacterVec& b);
  friend CharacterVec operator*(const CharacterVec& a, const CharacterVec& b);
  friend CharacterVec operator*(const CycNum& s, const CharacterVec& a);
  friend bool operator==(const CharacterVec& a, const CharacterVec& b) {
    return a.values == b.values;
  }
};

CharacterVec trivial_character(const FiniteMatrixGroup& g);
CharacterVec zero_character(const FiniteMatrixGroup& g);
CharacterVec regular_character(const FiniteMatrixGroup& g);
/// Character of a representation given by one matrix per group element.
CharacterVec character_of(const FiniteMatrixGroup& g, const std::vector<CycMatrix>& rep);
/// Character of the defining representation V (the group elements themselves).
CharacterVec defining_character(const FiniteMatrixGroup& g);

/// (1/|G|) sum_classes |class| chi1 conj(chi2).
Rat character_inner_product(const FiniteMatrixGroup& g, const CharacterVec& a,
                            const CharacterVec& b);

struct IrrepReport {
  bool pass = true;
  std::string message;
};

/// Checks multiplicativity, orthonormality, sum of squared dimensions and
/// triviality of rho_0. Reports the first failure; never throws.
IrrepReport verify_irreps(const FiniteMatrixGroup& g, const std::vector<Irrep>& irreps);

/// Character of Sym^m via h_m(g) = (1/m) sum_k chi(g^k) h_{m-k}(g).
CharacterVec sym_power_character(const FiniteMatrixGroup& g, const CharacterVec& chi, long m);
/// Character of Lambda^k via the signed Newton identity.
CharacterVec ext_power_character(const FiniteMatrixGroup& g, const CharacterVec& chi, long k);

/// dim (Sym^m V^vee)^G for the defining representation V.
long molien_dimension(const FiniteMatrixGroup& g, long m);

/// Integer value of a rational that must be integral (throws otherwise).
long to_integer(const Rat& r, const char* what);

}  // namespace excoll
